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

#include <cstdio>
#include <string>

#include "cusp/config.hpp"
#include "cusp/error.hpp"
#include "doctest.h"

using cusp::ExperimentConfig;
using cusp::ValidationError;

TEST_SUITE("config") {

TEST_CASE("parse: comments, whitespace, typed getters") {
  const auto cfg = ExperimentConfig::parse_string(
      "# moment run\n"
      "command = moment\n"
      "  k1=18   # window\n"
      "\n"
      "alpha=2.5\n"
      "identity-check=true\n"
      "xs=16, 32,64\n");
  CHECK(cfg.get("command", "") == "moment");
  CHECK(cfg.get_int("k1", 0) == 18);
  CHECK(cfg.get_double("alpha", 0.0) == 2.5);
  CHECK(cfg.get_bool("identity-check", false));
  CHECK(cfg.get_list("xs", {}) == std::vector<double>{16, 32, 64});
  CHECK(cfg.get_double("missing", -1.0) == -1.0);
  CHECK(cfg.values().size() == 5);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(ExperimentConfig::parse_string("no equals sign\n"), ValidationError);
  CHECK_THROWS_AS(ExperimentConfig::parse_string("a=1\na=2\n"), ValidationError);
  CHECK_THROWS_AS(ExperimentConfig::parse_string("bad key=1\n"), ValidationError);
  CHECK_THROWS_AS(ExperimentConfig::parse_string("=1\n"), ValidationError);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/cusp.cfg"), ValidationError);
}

TEST_CASE("typed getters reject malformed values") {
  const auto cfg = ExperimentConfig::parse_string("x=12abc\nn=3.5\nb=maybe\nl=1,,2\n");
  CHECK_THROWS_AS(cfg.get_double("x", 0), ValidationError);
  CHECK_THROWS_AS(cfg.get_int("n", 0), ValidationError);
  CHECK_THROWS_AS(cfg.get_bool("b", false), ValidationError);
  CHECK_THROWS_AS(cfg.get_list("l", {}), ValidationError);
  try {
    cfg.get_double("x", 0);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("'x'") != std::string::npos);
  }
}

TEST_CASE("round trip is lossless") {
  ExperimentConfig cfg;
  cfg.set("command", std::string("resonance scan"));
  cfg.set("alpha", 0.1);
  cfg.set("x", 1.0 / 3.0);
  cfg.set("steps", int64_t{401});
  cfg.set("tiny", 4.9406564584124654e-324);
  const auto back = ExperimentConfig::parse_string(cfg.serialize());
  CHECK(back == cfg);
  CHECK(back.get_double("x", 0) == 1.0 / 3.0);
  CHECK(back.get_double("alpha", 0) == 0.1);
  CHECK(back.get_double("tiny", 0) == 4.9406564584124654e-324);
  CHECK(back.serialize() == cfg.serialize());

  const std::string path = "cusp_config_roundtrip.cfg";
  cfg.save(path);
  CHECK(ExperimentConfig::load(path) == cfg);
  std::remove(path.c_str());
}

TEST_CASE("set rejects values that would not round trip") {
  ExperimentConfig cfg;
  CHECK_THROWS_AS(cfg.set("k", std::string("a#b")), ValidationError);
  CHECK_THROWS_AS(cfg.set("k", std::string("a\nb")), ValidationError);
  CHECK_THROWS_AS(cfg.set("k y", std::string("1")), ValidationError);
}

}  // TEST_SUITE
