#include "oesnn/errors.hpp"

#include <utility>

namespace oesnn {

namespace {

std::string join_issues(const std::vector<ConfigError::Issue>& issues) {
    std::string out = "invalid configuration:";
    for (const auto& issue : issues) {
        out += " ";
        out += issue.field;
        out += ": ";
        out += issue.message;
        out += ";";
    }
    if (!issues.empty()) out.pop_back();
    return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<Issue> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

InputError::InputError(const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

}  // namespace oesnn
