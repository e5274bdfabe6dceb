#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "quadprop/symplectic.hpp"

namespace quadprop {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) fields.push_back(line.substr(start, pos - start));
  }
  return fields;
}

double parse_decimal(std::string_view text, int line_no) {
  // from_chars rejects a leading '+', which is a valid decimal literal.
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ScheduleParseError(line_no, "not a decimal literal: '" + std::string(text) + "'");
  }
  if (!std::isfinite(value)) throw ScheduleParseError(line_no, "non-finite coefficient");
  return value;
}

}  // namespace

Schedule parse_schedule(std::istream& in) {
  Schedule steps;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields.size() != 3) {
      throw ScheduleParseError(line_no, "expected 3 fields (alpha beta gamma), got " +
                                            std::to_string(fields.size()));
    }
    steps.push_back({parse_decimal(fields[0], line_no), parse_decimal(fields[1], line_no),
                     parse_decimal(fields[2], line_no)});
  }
  return steps;
}

Schedule load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScheduleParseError(0, "cannot open '" + path + "'");
  return parse_schedule(in);
}

}  // namespace quadprop
