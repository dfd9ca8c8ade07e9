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

// Exact modular arithmetic and Kloosterman sums.

#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace cusp::arith {

int64_t gcd(int64_t a, int64_t b);
int64_t mod(int64_t a, int64_t c);  // representative in [0, c)

/// z^{-1} mod c, or nullopt when gcd(z, c) != 1. For c = 1 returns 0.
std::optional<int64_t> mod_inverse(int64_t z, int64_t c);

int64_t divisor_count(int64_t n);
int64_t totient(int64_t n);

/// Residue data for one modulus: units and their inverses, plus cos/sin of
/// 2 pi r / c.
struct ModulusTable {
  int64_t c = 1;
  std::vector<int64_t> units;
  std::vector<int64_t> inverses;
  std::vector<double> cos_table;
  std::vector<double> sin_table;

  explicit ModulusTable(int64_t modulus);
};

/// S(m, n, c) = sum over units z of cos(2 pi (m z + n zbar) / c), with
/// compensated accumulation. S(m, n, 1) = 1. Throws DomainError for c < 1.
double kloosterman(int64_t m, int64_t n, int64_t c);
double kloosterman(int64_t m, int64_t n, const ModulusTable& table);

/// Both components of the defining exponential sum (imaginary part ~ 0).
std::complex<double> kloosterman_complex(int64_t m, int64_t n, int64_t c);

/// Weil bound d(c) sqrt(c) sqrt(gcd(m, n, c)).
double weil_bound(int64_t m, int64_t n, int64_t c);

/// Thread-safe memo of S(m, n, c), keyed on (m, n, c) with m <= n swapped.
class KloostermanCache {
 public:
  double get(int64_t m, int64_t n, int64_t c);
  const ModulusTable& table(int64_t c);

 private:
  struct Key {
    int64_t m, n, c;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  std::mutex mutex_;
  std::unordered_map<int64_t, std::unique_ptr<ModulusTable>> tables_;
  std::unordered_map<Key, double, KeyHash> values_;
};

/// Units z mod c with z + zbar = 2 eta (mod c).
int64_t count_quadratic_congruence(int64_t c, int eta);

/// Default cap on c1 * c2 * d for count_lattice_solutions.
inline constexpr int64_t kLatticeModulusCap = 1'000'000;

/// Tuples (z1 unit mod d c1, z2 unit mod d c2, |m| <= tau, |n| <= tau) with
/// m = -c2 z1 - c1 z2 and n = -c2 zbar1 - c1 zbar2 (mod c1 c2 d).
int64_t count_lattice_solutions(int64_t c1, int64_t c2, int64_t d, double tau,
                                int64_t modulus_cap = kLatticeModulusCap);

/// d (2 tau + 1) (floor(tau / (c1 c2 d)) + 1), the count as stated in the
/// source. It undercounts once tau >= c1 c2 d / 2: a window of 2 tau + 1
/// integers can hold floor(2 tau / q) + 1 members of one residue class.
double lattice_solution_bound(int64_t c1, int64_t c2, int64_t d, double tau);

/// d (2 tau + 1) (floor(2 tau / (c1 c2 d)) + 1).
double lattice_solution_bound_corrected(int64_t c1, int64_t c2, int64_t d, double tau);

}  // namespace cusp::arith
