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

#include "cusp/arith.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cusp/error.hpp"
#include "cusp/simd/kernels.hpp"

namespace cusp::arith {

int64_t gcd(int64_t a, int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

int64_t mod(int64_t a, int64_t c) {
  const int64_t r = a % c;
  return r < 0 ? r + c : r;
}

std::optional<int64_t> mod_inverse(int64_t z, int64_t c) {
  if (c < 1) throw DomainError("modulus must be positive");
  if (c == 1) return 0;
  int64_t old_r = mod(z, c), r = c;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    const int64_t q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) return std::nullopt;
  return mod(old_s, c);
}

int64_t divisor_count(int64_t n) {
  int64_t count = 1;
  for (int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

int64_t totient(int64_t n) {
  int64_t result = n;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

ModulusTable::ModulusTable(int64_t modulus) : c(modulus) {
  if (modulus < 1) throw DomainError("Kloosterman modulus must be positive");
  cos_table.resize(static_cast<std::size_t>(c));
  sin_table.resize(static_cast<std::size_t>(c));
  for (int64_t r = 0; r < c; ++r) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(c);
    cos_table[r] = std::cos(t);
    sin_table[r] = std::sin(t);
  }
  if (c == 1) {
    units.push_back(0);
    inverses.push_back(0);
    return;
  }
  for (int64_t z = 1; z < c; ++z) {
    if (auto inv = mod_inverse(z, c)) {
      units.push_back(z);
      inverses.push_back(*inv);
    }
  }
}

namespace {

std::vector<double> phase_histogram(int64_t m, int64_t n, const ModulusTable& t) {
  std::vector<double> hist(static_cast<std::size_t>(t.c), 0.0);
  const int64_t mr = mod(m, t.c), nr = mod(n, t.c);
  for (std::size_t i = 0; i < t.units.size(); ++i) {
    hist[(mr * t.units[i] + nr * t.inverses[i]) % t.c] += 1.0;
  }
  return hist;
}

}  // namespace

double kloosterman(int64_t m, int64_t n, const ModulusTable& table) {
  if (table.c == 1) return 1.0;
  const auto hist = phase_histogram(m, n, table);
  return simd::compensated_dot(hist, table.cos_table);
}

double kloosterman(int64_t m, int64_t n, int64_t c) {
  if (c < 1) throw DomainError("Kloosterman modulus must be positive, got " + std::to_string(c));
  return kloosterman(m, n, ModulusTable(c));
}

std::complex<double> kloosterman_complex(int64_t m, int64_t n, int64_t c) {
  if (c < 1) throw DomainError("Kloosterman modulus must be positive");
  const ModulusTable table(c);
  if (c == 1) return {1.0, 0.0};
  const auto hist = phase_histogram(m, n, table);
  return {simd::compensated_dot(hist, table.cos_table),
          simd::compensated_dot(hist, table.sin_table)};
}

double weil_bound(int64_t m, int64_t n, int64_t c) {
  const int64_t g = gcd(gcd(m, n), c);
  return static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(c)) *
         std::sqrt(static_cast<double>(g == 0 ? c : g));
}

std::size_t KloostermanCache::KeyHash::operator()(const Key& k) const {
  uint64_t h = static_cast<uint64_t>(k.m) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<uint64_t>(k.n) + 0xBF58476D1CE4E5B9ULL + (h << 6) + (h >> 2);
  h ^= static_cast<uint64_t>(k.c) + 0x94D049BB133111EBULL + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

const ModulusTable& KloostermanCache::table(int64_t c) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = tables_[c];
  if (!slot) slot = std::make_unique<ModulusTable>(c);
  return *slot;
}

double KloostermanCache::get(int64_t m, int64_t n, int64_t c) {
  if (c < 1) throw DomainError("Kloosterman modulus must be positive");
  m = mod(m, c);
  n = mod(n, c);
  if (m > n) std::swap(m, n);
  const Key key{m, n, c};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = values_.find(key); it != values_.end()) return it->second;
  }
  const double value = kloosterman(m, n, table(c));
  std::lock_guard<std::mutex> lock(mutex_);
  values_.emplace(key, value);
  return value;
}

int64_t count_quadratic_congruence(int64_t c, int eta) {
  if (c < 1) throw DomainError("modulus must be positive");
  if (eta != 1 && eta != -1) throw DomainError("eta must be +1 or -1");
  if (c == 1) return 1;
  const int64_t target = mod(2 * eta, c);
  int64_t count = 0;
  for (int64_t z = 1; z < c; ++z) {
    if (auto inv = mod_inverse(z, c); inv && (z + *inv) % c == target) ++count;
  }
  return count;
}

namespace {

// Integers x with |x| <= tau and x = r (mod q), 0 <= r < q.
int64_t count_in_window(int64_t r, int64_t q, double tau) {
  const auto t = static_cast<int64_t>(std::floor(tau));
  if (t < 0) return 0;
  // x = r + q k, -t <= x <= t.
  const auto floor_div = [](int64_t a, int64_t b) {
    int64_t d = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --d;
    return d;
  };
  const int64_t hi = floor_div(t - r, q);
  const int64_t lo = -floor_div(t + r, q);
  return hi >= lo ? hi - lo + 1 : 0;
}

}  // namespace

int64_t count_lattice_solutions(int64_t c1, int64_t c2, int64_t d, double tau,
                                int64_t modulus_cap) {
  if (c1 < 1 || c2 < 1 || d < 1) throw DomainError("c1, c2, d must be positive");
  if (gcd(c1, c2) != 1) throw DomainError("c1 and c2 must be coprime");
  if (!(tau > 0)) throw DomainError("tau must be positive");
  const int64_t q = c1 * c2 * d;
  if (q > modulus_cap) {
    throw CapacityError("combined modulus " + std::to_string(q) + " exceeds cap " +
                        std::to_string(modulus_cap));
  }
  const ModulusTable t1(d * c1), t2(d * c2);
  int64_t total = 0;
  for (std::size_t i = 0; i < t1.units.size(); ++i) {
    for (std::size_t j = 0; j < t2.units.size(); ++j) {
      const int64_t rm = mod(-c2 * t1.units[i] - c1 * t2.units[j], q);
      const int64_t rn = mod(-c2 * t1.inverses[i] - c1 * t2.inverses[j], q);
      total += count_in_window(rm, q, tau) * count_in_window(rn, q, tau);
    }
  }
  return total;
}

double lattice_solution_bound(int64_t c1, int64_t c2, int64_t d, double tau) {
  const double q = static_cast<double>(c1 * c2 * d);
  return static_cast<double>(d) * (2.0 * tau + 1.0) * (std::floor(tau / q) + 1.0);
}

double lattice_solution_bound_corrected(int64_t c1, int64_t c2, int64_t d, double tau) {
  const double q = static_cast<double>(c1 * c2 * d);
  return static_cast<double>(d) * (2.0 * tau + 1.0) * (std::floor(2.0 * tau / q) + 1.0);
}

}  // namespace cusp::arith
