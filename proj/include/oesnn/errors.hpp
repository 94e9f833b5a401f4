#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oesnn {

/// Invalid detector or grid configuration. `fields()` lists every offending
/// field together with the violated range.
class ConfigError : public std::invalid_argument {
public:
    struct Issue {
        std::string field;
        std::string message;
    };

    explicit ConfigError(std::vector<Issue> issues);

    const std::vector<Issue>& issues() const noexcept { return issues_; }

private:
    std::vector<Issue> issues_;
};

/// Corrupt or unreadable input data. `line()` is 1-based, 0 when not tied
/// to a particular line.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::size_t line = 0);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace oesnn
