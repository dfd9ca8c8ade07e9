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

#include "cusp/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "cusp/error.hpp"
#include "cusp/format.hpp"

namespace cusp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) {
      return false;
    }
  }
  return true;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("config key '" + key + "': not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) {
      throw ValidationError("config line " + std::to_string(lineno) + ": bad key '" + key + "'");
    }
    if (cfg.has(key)) {
      throw ValidationError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  return parse(in);
}

std::string ExperimentConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

void ExperimentConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write config file '" + path + "'");
  out << serialize();
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ValidationError("bad config key '" + key + "'");
  if (value.find_first_of("#\n") != std::string::npos) {
    throw ValidationError("config value for '" + key + "' contains '#' or a newline");
  }
  values_[key] = trim(value);
}

void ExperimentConfig::set(const std::string& key, double value) { set(key, format_double(value)); }

void ExperimentConfig::set(const std::string& key, int64_t value) { set(key, std::to_string(value)); }

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_double(key, it->second);
}

int64_t ExperimentConfig::get_int(const std::string& key, int64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  int64_t v = 0;
  const std::string& t = it->second;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw ValidationError("config key '" + key + "': not an integer: '" + t + "'");
  }
  return v;
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ValidationError("config key '" + key + "': expected true or false");
}

std::vector<double> ExperimentConfig::get_list(const std::string& key,
                                               const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) throw ValidationError("config key '" + key + "': empty list");
  return out;
}

}  // namespace cusp
