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

#pragma once

// Tabular command output: CSV (header + rows) or JSON
// {"command", "summary", "rows": [{column: value}]}.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cusp::cli {

using Cell = std::variant<int64_t, double, std::string, bool>;

enum class Format { kCsv, kJson };

Format parse_format(const std::string& name);

struct Report {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;

  void add_row(std::vector<Cell> row);
  void write(std::ostream& out, Format format) const;
  /// "key=value key=value" over the summary.
  std::string summary_line() const;
};

}  // namespace cusp::cli
