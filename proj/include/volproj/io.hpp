#pragma once

#include <iosfwd>
#include <string>

#include "volproj/distortion.hpp"
#include "volproj/linalg.hpp"

#include "json.hpp"

namespace volproj::io {

// Point-set CSV: one point per row, comma-separated decimal coordinates,
// lines starting with '#' ignored. Dimension is inferred from the first data
// row. Throws CsvParseError on malformed input.
PointSet parse_point_set_csv(std::istream& in);
PointSet read_point_set_csv(const std::string& path);

std::string point_set_to_csv(const PointSet& P, bool header = true);

// Write-temp-then-rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// 17 significant digits, enough to round-trip a double exactly.
std::string format_double(double v);

nlohmann::json report_to_json(const DistortionReport& report);

}  // namespace volproj::io
