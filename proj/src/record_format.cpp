#include "oesnn/record_format.hpp"

#include <charconv>
#include <cmath>

namespace oesnn {

void append_number(std::string& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

namespace {

void append_index(std::string& out, std::size_t v) {
    char buf[24];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

void append_record_jsonl(std::string& out, const DetectionRecord& rec) {
    out += "{\"t\":";
    append_index(out, rec.t);
    out += ",\"x\":";
    append_number(out, rec.x);
    out += ",\"y\":";
    if (rec.y) {
        append_number(out, *rec.y);
    } else {
        out += "null";
    }
    out += ",\"e\":";
    if (std::isfinite(rec.e)) {
        append_number(out, rec.e);
    } else {
        out += "null";
    }
    out += rec.u ? ",\"u\":true}\n" : ",\"u\":false}\n";
}

void append_record_csv(std::string& out, const DetectionRecord& rec) {
    append_index(out, rec.t);
    out += ',';
    append_number(out, rec.x);
    out += ',';
    if (rec.y) {
        append_number(out, *rec.y);
    } else {
        out += "NaN";
    }
    out += ',';
    if (std::isfinite(rec.e)) {
        append_number(out, rec.e);
    } else {
        out += "inf";
    }
    out += rec.u ? ",1\n" : ",0\n";
}

}  // namespace oesnn
