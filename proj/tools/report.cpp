/*
 * Copyright 2026 The cusp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "report.hpp"

#include <cmath>

#include "cusp/error.hpp"
#include "cusp/format.hpp"

namespace cusp::cli {

namespace {

std::string csv_text(const Cell& c) {
  if (const auto* i = std::get_if<int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string json_string(const std::string& s) {
  std::string q = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': q += "\\\""; break;
      case '\\': q += "\\\\"; break;
      case '\n': q += "\\n"; break;
      default: q += ch;
    }
  }
  return q + "\"";
}

std::string json_text(const Cell& c) {
  if (const auto* i = std::get_if<int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) {
    // JSON has no inf/nan literals.
    return std::isfinite(*d) ? format_double(*d) : json_string(format_double(*d));
  }
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return json_string(std::get<std::string>(c));
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw ValidationError("unknown format '" + name + "' (csv|json)");
}

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("report row width mismatch");
  rows.push_back(std::move(row));
}

void Report::write(std::ostream& out, Format format) const {
  if (format == Format::kCsv) {
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_text(r[i]);
      out << "\n";
    }
    return;
  }
  out << "{\n  \"command\": " << json_string(command) << ",\n  \"summary\": {";
  for (std::size_t i = 0; i < summary.size(); ++i) {
    out << (i ? ", " : "") << json_string(summary[i].first) << ": " << json_text(summary[i].second);
  }
  out << "},\n  \"rows\": [";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r ? ",\n    {" : "\n    {");
    for (std::size_t i = 0; i < columns.size(); ++i) {
      out << (i ? ", " : "") << json_string(columns[i]) << ": " << json_text(rows[r][i]);
    }
    out << "}";
  }
  out << (rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

std::string Report::summary_line() const {
  std::string s;
  for (const auto& [k, v] : summary) s += (s.empty() ? "" : " ") + k + "=" + csv_text(v);
  return s;
}

}  // namespace cusp::cli
