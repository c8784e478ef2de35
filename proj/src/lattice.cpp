#include "arithmoduli/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace arithmoduli {

namespace {

void axpy(IntVector& y, const Integer& q, const IntVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (sgn(x[i]) != 0) y[i] -= q * x[i];
}

bool is_zero_vec(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntRows hnf(const IntRows& input, std::size_t ambient) {
  IntRows m;
  for (const auto& r : input) {
    if (r.size() != ambient) throw std::invalid_argument("hnf: row length mismatch");
    if (!is_zero_vec(r)) m.push_back(r);
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < ambient && pivot_row < m.size(); ++col) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = pivot_row; i < m.size(); ++i)
        if (sgn(m[i][col]) != 0 && (best == m.size() || abs(m[i][col]) < abs(m[best][col]))) best = i;
      if (best == m.size()) break;
      std::swap(m[pivot_row], m[best]);
      bool clean = true;
      for (std::size_t i = pivot_row + 1; i < m.size(); ++i) {
        if (sgn(m[i][col]) == 0) continue;
        axpy(m[i], trunc_div(m[i][col], m[pivot_row][col]), m[pivot_row]);
        if (sgn(m[i][col]) != 0) clean = false;
      }
      if (clean) break;
    }
    if (sgn(m[pivot_row][col]) == 0) continue;
    if (sgn(m[pivot_row][col]) < 0)
      for (auto& x : m[pivot_row]) x = -x;
    for (std::size_t i = 0; i < pivot_row; ++i)
      axpy(m[i], floor_div(m[i][col], m[pivot_row][col]), m[pivot_row]);
    ++pivot_row;
  }
  m.resize(pivot_row);
  return m;
}

IntLattice::IntLattice(std::size_t ambient, const IntRows& generators)
    : ambient_(ambient), basis_(hnf(generators, ambient)) {}

bool IntLattice::contains(const IntVector& v) const {
  if (v.size() != ambient_) return false;
  IntVector w = v;
  for (const auto& row : basis_) {
    std::size_t c = 0;
    while (sgn(row[c]) == 0) ++c;
    for (std::size_t j = 0; j < c; ++j)
      if (sgn(w[j]) != 0) return false;
    if (!mpz_divisible_p(w[c].get_mpz_t(), row[c].get_mpz_t())) return false;
    axpy(w, divexact(w[c], row[c]), row);
  }
  return is_zero_vec(w);
}

std::size_t rank_of(const IntRows& rows) {
  if (rows.empty()) return 0;
  return hnf(rows, rows[0].size()).size();
}

namespace {

IntRows identity_rows(std::size_t n) {
  IntRows r(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

struct SnfState {
  IntRows D, U, V, Vinv;
  std::size_t m, n;

  void row_add(std::size_t dst, const Integer& q, std::size_t src) {  // row_dst -= q row_src
    axpy(D[dst], q, D[src]);
    axpy(U[dst], q, U[src]);
  }
  void col_add(std::size_t dst, const Integer& q, std::size_t src) {  // col_dst -= q col_src
    for (std::size_t i = 0; i < m; ++i) D[i][dst] -= q * D[i][src];
    for (std::size_t i = 0; i < n; ++i) V[i][dst] -= q * V[i][src];
    // Inverse: row_src of Vinv += q row_dst.
    for (std::size_t j = 0; j < n; ++j) Vinv[src][j] += q * Vinv[dst][j];
  }
  void row_swap(std::size_t a, std::size_t b) {
    std::swap(D[a], D[b]);
    std::swap(U[a], U[b]);
  }
  void col_swap(std::size_t a, std::size_t b) {
    for (auto& r : D) std::swap(r[a], r[b]);
    for (auto& r : V) std::swap(r[a], r[b]);
    std::swap(Vinv[a], Vinv[b]);
  }
  void row_negate(std::size_t a) {
    for (auto& x : D[a]) x = -x;
    for (auto& x : U[a]) x = -x;
  }
};

}  // namespace

SmithForm snf(const IntRows& mat, std::size_t cols) {
  SnfState s{mat, identity_rows(mat.size()), identity_rows(cols), identity_rows(cols), mat.size(), cols};
  for (const auto& r : mat)
    if (r.size() != cols) throw std::invalid_argument("snf: row length mismatch");
  const std::size_t lim = std::min(s.m, s.n);
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < lim; ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    std::size_t bi = s.m, bj = s.n;
    for (std::size_t i = t; i < s.m; ++i)
      for (std::size_t j = t; j < s.n; ++j)
        if (sgn(s.D[i][j]) != 0 && (bi == s.m || abs(s.D[i][j]) < abs(s.D[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == s.m) break;
    s.row_swap(t, bi);
    s.col_swap(t, bj);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < s.m; ++i) {
        if (sgn(s.D[i][t]) == 0) continue;
        s.row_add(i, trunc_div(s.D[i][t], s.D[t][t]), t);
        if (sgn(s.D[i][t]) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < s.n; ++j) {
        if (sgn(s.D[t][j]) == 0) continue;
        s.col_add(j, trunc_div(s.D[t][j], s.D[t][t]), t);
        if (sgn(s.D[t][j]) != 0) clean = false;
      }
      if (!clean) {
        std::size_t bi2 = t, bj2 = t;
        for (std::size_t i = t + 1; i < s.m; ++i)
          if (sgn(s.D[i][t]) != 0 && abs(s.D[i][t]) < abs(s.D[bi2][bj2])) {
            bi2 = i;
            bj2 = t;
          }
        for (std::size_t j = t + 1; j < s.n; ++j)
          if (sgn(s.D[t][j]) != 0 && abs(s.D[t][j]) < abs(s.D[bi2][bj2])) {
            bi2 = t;
            bj2 = j;
          }
        s.row_swap(t, bi2);
        s.col_swap(t, bj2);
        continue;
      }
      // Divisibility of the trailing block by the pivot.
      std::size_t bad = s.m;
      for (std::size_t i = t + 1; i < s.m && bad == s.m; ++i)
        for (std::size_t j = t + 1; j < s.n; ++j)
          if (!mpz_divisible_p(s.D[i][j].get_mpz_t(), s.D[t][t].get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == s.m) break;
      s.row_add(t, Integer(-1), bad);
    }
    if (sgn(s.D[t][t]) < 0) s.row_negate(t);
    diag.push_back(s.D[t][t]);
  }
  return {std::move(s.U), std::move(s.D), std::move(s.V), std::move(s.Vinv), std::move(diag)};
}

IntLattice saturate(const IntLattice& l) {
  if (l.rank() == 0) return l;
  SmithForm f = snf(l.basis(), l.ambient_dim());
  IntRows rows(f.V_inverse.begin(), f.V_inverse.begin() + static_cast<long>(f.diagonal.size()));
  return IntLattice(l.ambient_dim(), rows);
}

namespace {

// Nearest integer to a / b for b > 0.
Integer nearest(const Integer& a, const Integer& b) { return floor_div(2 * a + b, 2 * b); }

}  // namespace

IntRows lll(const IntRows& input, const Rational& delta) {
  const std::size_t n = input.size();
  if (n == 0) return {};
  if (!(delta > Rational(1, 4)) || delta > 1) throw std::invalid_argument("lll: delta must lie in (1/4, 1]");
  const Integer da = delta.get_num(), db = delta.get_den();
  // 1-based indexing, as in the integral LLL of Cohen's textbook.
  std::vector<IntVector> b(n + 1);
  for (std::size_t i = 0; i < n; ++i) b[i + 1] = input[i];
  std::vector<Integer> d(n + 1);
  std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1));
  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  if (sgn(d[1]) == 0) throw std::invalid_argument("lll: dependent vectors");
  std::size_t k = 2, kmax = 1;

  auto red = [&](std::size_t kk, std::size_t l) {
    if (2 * abs(lam[kk][l]) <= d[l]) return;
    Integer q = nearest(lam[kk][l], d[l]);
    axpy(b[kk], q, b[l]);
    lam[kk][l] -= q * d[l];
    for (std::size_t i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };
  auto swap = [&](std::size_t kk) {
    std::swap(b[kk], b[kk - 1]);
    for (std::size_t j = 1; j + 2 <= kk; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    Integer l = lam[kk][kk - 1];
    Integer B = divexact(d[kk - 2] * d[kk] + l * l, d[kk - 1]);
    for (std::size_t i = kk + 1; i <= kmax; ++i) {
      Integer t = lam[i][kk];
      lam[i][kk] = divexact(d[kk] * lam[i][kk - 1] - l * t, d[kk - 1]);
      lam[i][kk - 1] = divexact(B * t + l * lam[i][kk], d[kk]);
    }
    d[kk - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (std::size_t j = 1; j <= k; ++j) {
        Integer u = dot(b[k], b[j]);
        for (std::size_t i = 1; i < j; ++i) u = divexact(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      if (sgn(d[k]) == 0) throw std::invalid_argument("lll: dependent vectors");
    }
    red(k, k - 1);
    const Integer& l = lam[k][k - 1];
    if (db * (d[k] * d[k - 2] + l * l) < da * d[k - 1] * d[k - 1]) {
      swap(k);
      k = std::max<std::size_t>(2, k - 1);
    } else {
      for (std::size_t ll = k - 1; ll-- > 1;) red(k, ll);
      ++k;
    }
  }
  return IntRows(b.begin() + 1, b.end());
}

std::vector<Rational> gram_schmidt_norms(const IntRows& basis) {
  const std::size_t n = basis.size();
  std::vector<Integer> d(n + 1);
  std::vector<std::vector<Integer>> lam(n + 1, std::vector<Integer>(n + 1));
  d[0] = 1;
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t j = 1; j <= k; ++j) {
      Integer u = dot(basis[k - 1], basis[j - 1]);
      for (std::size_t i = 1; i < j; ++i) u = divexact(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
      if (j < k)
        lam[k][j] = u;
      else
        d[k] = u;
    }
    if (sgn(d[k]) == 0) throw std::invalid_argument("gram_schmidt_norms: dependent vectors");
    Rational q(d[k], d[k - 1]);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

FixedRank fixed_rank_on_quotient(std::size_t n, const IntLattice& lambda,
                                 std::span<const std::size_t> tau) {
  if (tau.size() != n) throw std::invalid_argument("tau has the wrong length");
  for (std::size_t i = 0; i < n; ++i)
    if (tau[i] >= n || tau[tau[i]] != i) throw std::invalid_argument("tau is not an involution");
  if (lambda.ambient_dim() != n) throw std::invalid_argument("lattice has the wrong ambient dimension");
  if (!(saturate(lambda) == lambda)) throw std::invalid_argument("lattice is not saturated");

  const IntRows& basis = lambda.basis();
  std::vector<std::size_t> pivots;
  for (const auto& row : basis) {
    std::size_t c = 0;
    while (sgn(row[c]) == 0) ++c;
    pivots.push_back(c);
  }
  Integer trace_on_lattice = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    IntVector w(n);
    for (std::size_t j = 0; j < n; ++j) w[tau[j]] = basis[i][j];
    // Coordinates of tau(b_i) in the HNF basis.
    for (std::size_t r = 0; r < basis.size(); ++r) {
      const Integer& p = basis[r][pivots[r]];
      if (!mpz_divisible_p(w[pivots[r]].get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("lattice is not tau-stable");
      Integer c = divexact(w[pivots[r]], p);
      if (r == i) trace_on_lattice += c;
      axpy(w, c, basis[r]);
    }
    if (!is_zero_vec(w)) throw std::invalid_argument("lattice is not tau-stable");
  }
  long fixed_coords = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (tau[i] == i) ++fixed_coords;
  FixedRank out;
  out.r = static_cast<int>(n - basis.size());
  out.t = static_cast<int>(fixed_coords - trace_on_lattice.get_si());
  if ((out.r + out.t) % 2 != 0) throw std::logic_error("quotient trace has the wrong parity");
  out.fixed = (out.r + out.t) / 2;
  return out;
}

}  // namespace arithmoduli
