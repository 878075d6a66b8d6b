#include "volproj/io.hpp"

#include <unistd.h>

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "volproj/errors.hpp"

namespace volproj::io {

namespace {

bool is_blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

double parse_field(const std::string& token, int line_no) {
  const std::size_t b = token.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    throw CsvParseError("line " + std::to_string(line_no) + ": empty field");
  const std::size_t e = token.find_last_not_of(" \t\r");
  const std::string body = token.substr(b, e - b + 1);
  errno = 0;
  char* endp = nullptr;
  const double v = std::strtod(body.c_str(), &endp);
  if (endp != body.c_str() + body.size())
    throw CsvParseError("line " + std::to_string(line_no) + ": cannot parse '" + body +
                        "' as a number");
  if (errno == ERANGE && std::abs(v) == HUGE_VAL)
    throw CsvParseError("line " + std::to_string(line_no) + ": number out of range: " + body);
  return v;
}

}  // namespace

PointSet parse_point_set_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line) || line[0] == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      row.push_back(parse_field(
          line.substr(start, comma == std::string::npos ? std::string::npos : comma - start),
          line_no));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw CsvParseError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(width) + " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw CsvParseError("no data rows");
  if (rows.size() < 2) throw CsvParseError("need at least two points");
  Eigen::MatrixXd coords(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t r = 0; r < width; ++r)
      coords(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = rows[i][r];
  return PointSet(std::move(coords));
}

PointSet read_point_set_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvParseError("cannot open file: " + path);
  return parse_point_set_csv(in);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string point_set_to_csv(const PointSet& P, bool header) {
  std::string out;
  if (header)
    out += "# points=" + std::to_string(P.n()) + " dim=" + std::to_string(P.dim()) + "\n";
  for (int i = 0; i < P.n(); ++i) {
    for (int r = 0; r < P.dim(); ++r) {
      if (r > 0) out += ',';
      out += format_double(P.coords()(r, i));
    }
    out += '\n';
  }
  return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error(
        "cannot create file", tmp, std::make_error_code(std::errc::permission_denied));
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::filesystem::filesystem_error("write failed", tmp,
                                              std::make_error_code(std::errc::io_error));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw std::filesystem::filesystem_error("rename failed", tmp, path, ec);
  }
}

namespace {

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;  // NaN and infinities have no JSON literal
}

}  // namespace

nlohmann::json report_to_json(const DistortionReport& report) {
  nlohmann::json j;
  j["overall_min"] = json_number(report.overall_min);
  j["overall_max"] = json_number(report.overall_max);
  j["distortion"] = json_number(report.distortion);
  j["sampled"] = report.sampled;
  j["seed"] = {{"seed", report.seed.seed}, {"stream", report.seed.stream}};
  j["strategy"] = {
      {"mode", report.strategy.mode == SubsetMode::exhaustive ? "exhaustive" : "sampled"},
      {"sample_count", report.strategy.sample_count},
      {"enumeration_cap", report.strategy.enumeration_cap}};
  nlohmann::json per_size = nlohmann::json::object();
  for (const auto& [size, st] : report.per_size) {
    per_size[std::to_string(size)] = {{"min_ratio", json_number(st.min_ratio)},
                                      {"max_ratio", json_number(st.max_ratio)},
                                      {"evaluated", st.evaluated},
                                      {"degenerate", st.degenerate}};
  }
  j["per_size"] = per_size;
  return j;
}

}  // namespace volproj::io
