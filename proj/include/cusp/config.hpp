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

// Flat key=value experiment configuration. One entry per line; '#' starts
// a comment; keys are unique. serialize() writes keys sorted, so a parsed
// and re-serialized file is stable.

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

namespace cusp {

class ExperimentConfig {
 public:
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_string(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  std::string serialize() const;
  void save(const std::string& path) const;

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, int64_t value);
  void erase(const std::string& key) { values_.erase(key); }

  /// Typed lookups; malformed values raise ValidationError naming the key.
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated doubles.
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  bool operator==(const ExperimentConfig& other) const { return values_ == other.values_; }

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace cusp
