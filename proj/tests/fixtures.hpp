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

#include <random>

#include "cusp/oscillatory.hpp"

namespace cusp::testing {

// A PhaseContext with R1, R2 > 0 at (u, v): X in [200, 5200], u, v in [X, 2X].
inline osc::PhaseContext random_context(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    osc::PhaseContext c;
    c.x = 200.0 + 5000.0 * u01(rng);
    c.u = c.x * (1.0 + u01(rng));
    c.v = c.x * (1.0 + u01(rng));
    c.c1 = 1 + static_cast<int>(5 * u01(rng));
    c.c2 = 1 + static_cast<int>(5 * u01(rng));
    c.d = 1 + static_cast<int>(3 * u01(rng));
    c.eta1 = u01(rng) < 0.5 ? 1 : -1;
    c.eta2 = u01(rng) < 0.5 ? 1 : -1;
    c.k1 = 12 + 2 * static_cast<int>(20 * u01(rng));
    c.k2 = u01(rng) < 0.3 ? c.k1 : 12 + 2 * static_cast<int>(20 * u01(rng));
    c.m = static_cast<int>(7 * u01(rng)) - 3;
    c.n = static_cast<int>(7 * u01(rng)) - 3;
    c.alpha = 3.0 * u01(rng);
    c.beta = u01(rng) < 0.3 ? 1.0 : 0.1 + 0.8 * u01(rng);
    if (c.r(1) > 0.0 && c.r(2) > 0.0) return c;
  }
}

}  // namespace cusp::testing
