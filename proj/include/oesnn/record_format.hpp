#pragma once

#include <string>

#include "oesnn/detector.hpp"

namespace oesnn {

/// Shortest decimal text that reads back to the same double.
void append_number(std::string& out, double v);

/// {"t":..,"x":..,"y":..,"e":..,"u":..}; y and e are null when nothing fired.
void append_record_jsonl(std::string& out, const DetectionRecord& rec);

/// Header line for append_record_csv.
inline constexpr const char* kRecordCsvHeader = "t,x,y,e,u";
/// t,x,y,e,u with y written as NaN and e as inf when nothing fired.
void append_record_csv(std::string& out, const DetectionRecord& rec);

}  // namespace oesnn
