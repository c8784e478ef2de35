#pragma once

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "arithmoduli/criterion.hpp"
#include "arithmoduli/intmat.hpp"
#include "arithmoduli/intpoly.hpp"
#include "arithmoduli/lattice.hpp"

namespace testsupport {

using namespace arithmoduli;

inline std::uint64_t seed() {
  if (const char* s = std::getenv("ARITHMODULI_SEED")) return std::strtoull(s, nullptr, 10);
  return 20240611ULL;
}

/// Per-suite generator; `salt` keeps suites independent of each other's draw counts.
inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(seed() ^ (salt * 0x9E3779B97F4A7C15ULL)); }

inline long uniform(std::mt19937_64& g, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline IntPoly random_poly(std::mt19937_64& g, int deg, long bound, bool monic = false) {
  std::vector<Integer> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = uniform(g, -bound, bound);
  if (monic) c.back() = 1;
  while (c.back() == 0) c.back() = uniform(g, -bound, bound);
  return IntPoly(c);
}

/// Monic with constant term +-1.
inline IntPoly random_unit_poly(std::mt19937_64& g, int deg, long bound) {
  IntPoly p = random_poly(g, deg, bound, true);
  std::vector<Integer> c = p.coeffs();
  c[0] = uniform(g, 0, 1) ? 1 : -1;
  return IntPoly(c);
}

/// Monic irreducible with constant term +-1 and no root on the unit circle.
inline IntPoly random_hyperbolic_unit_poly(std::mt19937_64& g, int deg, long bound) {
  if (deg < 2) throw std::invalid_argument("no hyperbolic unit polynomial of degree < 2");
  for (;;) {
    IntPoly p = random_unit_poly(g, deg, bound);
    if (!factor(p).irreducible()) continue;
    if (unit_circle_root_count(p) != 0) continue;
    return p;
  }
}

/// Product of elementary row operations.
inline IntMatrix random_unimodular(std::mt19937_64& g, std::size_t n, int steps = 8, long bound = 2) {
  IntMatrix p = IntMatrix::identity(n);
  if (n < 2) return p;
  for (int s = 0; s < steps; ++s) {
    auto i = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    long c = uniform(g, -bound, bound);
    for (std::size_t k = 0; k < n; ++k) p(i, k) += c * p(j, k);
    if (uniform(g, 0, 3) == 0)
      for (std::size_t k = 0; k < n; ++k) std::swap(p(i, k), p(j, k));
  }
  return p;
}

inline IntMatrix conjugate(const IntMatrix& a, const IntMatrix& p) { return p * a * inverse(p); }

inline IntMatrix a1() { return IntMatrix{{0, 1, 0, 2}, {0, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}}; }

inline IntMatrix a2() {
  return IntMatrix{{0, 0, 0, 0, -1}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 2}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 0}};
}

inline IntMatrix blocks(std::initializer_list<IntMatrix> bs) {
  std::vector<IntMatrix> v(bs);
  return block_diag(v);
}

/// Row-vector times matrix helpers for IntRows.
inline IntRows mat_mul(const IntRows& a, const IntRows& b) {
  if (a.empty()) return {};
  std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntRows out(a.size(), IntVector(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

inline IntRows identity_rows(std::size_t n) {
  IntRows r(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

inline Integer det_rows(const IntRows& m) { return determinant(IntMatrix(m)); }

}  // namespace testsupport
