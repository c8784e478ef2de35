#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "arithmoduli/lattice.hpp"
#include "support.hpp"

using namespace arithmoduli;
using namespace testsupport;

namespace {

// Textbook rational Gram-Schmidt: returns mu and |b*_i|^2.
void gram_schmidt(const IntRows& b, std::vector<std::vector<Rational>>& mu, std::vector<Rational>& norms) {
  const std::size_t n = b.size(), m = b.empty() ? 0 : b[0].size();
  std::vector<std::vector<Rational>> star(n, std::vector<Rational>(m));
  mu.assign(n, std::vector<Rational>(n));
  norms.assign(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) star[i][k] = b[i][k];
    for (std::size_t j = 0; j < i; ++j) {
      Rational dot = 0;
      for (std::size_t k = 0; k < m; ++k) dot += Rational(b[i][k]) * star[j][k];
      mu[i][j] = dot / norms[j];
      for (std::size_t k = 0; k < m; ++k) star[i][k] -= mu[i][j] * star[j][k];
    }
    for (std::size_t k = 0; k < m; ++k) norms[i] += star[i][k] * star[i][k];
  }
}

IntRows random_rows(std::mt19937_64& g, std::size_t r, std::size_t c, long bound) {
  IntRows m(r, IntVector(c));
  for (auto& row : m)
    for (auto& x : row) x = uniform(g, -bound, bound);
  return m;
}

Integer gram_det(const IntRows& b) {
  if (b.empty()) return 1;
  IntRows gram(b.size(), IntVector(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Integer dot = 0;
      for (std::size_t k = 0; k < b[i].size(); ++k) dot += b[i][k] * b[j][k];
      gram[i][j] = dot;
    }
  return det_rows(gram);
}

std::vector<std::size_t> random_involution(std::mt19937_64& g, std::size_t n) {
  std::vector<std::size_t> perm(n), tau(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  std::iota(tau.begin(), tau.end(), 0);
  const auto pairs = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n / 2)));
  for (std::size_t k = 0; k < pairs; ++k) {
    tau[perm[2 * k]] = perm[2 * k + 1];
    tau[perm[2 * k + 1]] = perm[2 * k];
  }
  return tau;
}

IntVector permute(const std::vector<std::size_t>& tau, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[tau[i]] = v[i];
  return out;
}

// Fixed dimension of tau on Q^N / W computed as dim ker((tau - 1) mod W) - dim W.
int fixed_oracle(std::size_t n, const IntLattice& w, const std::vector<std::size_t>& tau) {
  IntRows rows = w.basis();
  const std::size_t rw = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    IntVector e(n, 0);
    e[i] = 1;
    IntVector te = permute(tau, e);
    for (std::size_t k = 0; k < n; ++k) te[k] -= e[k];
    rows.push_back(te);
  }
  const std::size_t image = rank_of(rows) - rw;
  return static_cast<int>(n - image - rw);
}

}  // namespace

TEST_CASE("lll examples") {
  CHECK(lll(identity_rows(3)) == identity_rows(3));
  IntRows skew{{1, 1000000}, {0, 1}};
  IntRows r = lll(skew);
  CHECK(IntLattice(2, r) == IntLattice(2, skew));
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norms;
  gram_schmidt(r, mu, norms);
  CHECK(abs(mu[1][0]) <= Rational(1, 2));
  CHECK(norms[1] >= (Rational(99, 100) - mu[1][0] * mu[1][0]) * norms[0]);

  IntRows b{{4, 1}, {2, 1}};
  IntRows rb = lll(b);
  CHECK(IntLattice(2, rb) == IntLattice(2, b));
  Integer first = rb[0][0] * rb[0][0] + rb[0][1] * rb[0][1];
  CHECK(first <= 17);
  // |b1|^2 <= 2^{(N-1)/2} det^{2/N} with N = 2 and det = 2.
  CHECK(first.get_d() <= std::sqrt(2.0) * 2.0 + 1e-12);
}

TEST_CASE("hnf examples") {
  IntLattice even(2, {{2, 0}, {0, 2}, {1, 1}});
  CHECK(even.basis() == IntRows{{1, 1}, {0, 2}});
  CHECK(gram_det(even.basis()) == 4);
  CHECK(IntLattice(2, {}).rank() == 0);
  CHECK(IntLattice(2, {{1, 0}, {0, 1}}).basis() == identity_rows(2));
  CHECK(hnf({{0, 0}, {3, 6}, {2, 4}}, 2) == IntRows{{1, 2}});
}

TEST_CASE("snf examples") {
  CHECK(snf({{2, 0}, {0, 4}}, 2).diagonal == IntVector{2, 4});
  CHECK(snf({{2, 2}}, 2).diagonal == IntVector{2});
  auto s = snf({{1, 2}, {3, 4}}, 2);
  CHECK(s.diagonal == IntVector{1, 2});
  CHECK(mat_mul(mat_mul(s.U, IntRows{{1, 2}, {3, 4}}), s.V) == s.D);
  CHECK(snf({{2, 2}}, 2).D == IntRows{{2, 0}});
}

TEST_CASE("saturation examples") {
  CHECK(saturate(IntLattice(2, {{2, 2}})) == IntLattice(2, {{1, 1}}));
  CHECK(saturate(IntLattice(2, {{1, 0}})) == IntLattice(2, {{1, 0}}));
  CHECK(saturate(IntLattice(2, {{2, 0}, {0, 3}})) == IntLattice(2, identity_rows(2)));
}

TEST_CASE("fixed rank examples") {
  std::vector<std::size_t> id1{0};
  auto a = fixed_rank_on_quotient(1, IntLattice(1), id1);
  CHECK(a.r == 1);
  CHECK(a.t == 1);
  CHECK(a.fixed == 1);
  std::vector<std::size_t> swap{1, 0};
  auto b = fixed_rank_on_quotient(2, IntLattice(2), swap);
  CHECK(b.r == 2);
  CHECK(b.t == 0);
  CHECK(b.fixed == 1);
  std::vector<std::size_t> id4{0, 1, 2, 3};
  auto c = fixed_rank_on_quotient(4, IntLattice(4, {{1, 1, -1, -1}}), id4);
  CHECK(c.r == 3);
  CHECK(c.t == 3);
  CHECK(c.fixed == 3);
  CHECK_THROWS(fixed_rank_on_quotient(2, IntLattice(2, {{2, 0}}), swap));
}

TEST_CASE("lll output is reduced and spans the input lattice") {
  auto g = make_rng(41);
  int done = 0;
  while (done < 200) {
    const auto n = static_cast<std::size_t>(uniform(g, 1, 6));
    const auto m = n + static_cast<std::size_t>(uniform(g, 0, 2));
    IntRows b = random_rows(g, n, m, done % 3 == 0 ? 1000 : 30);
    if (done % 4 == 1) b[0][0] += 1000000;
    if (rank_of(b) != n) continue;
    ++done;
    const bool loose = done % 2 == 0;
    Rational delta = loose ? Rational(3, 4) : Rational(99, 100);
    IntRows r = lll(b, delta);
    REQUIRE(r.size() == n);
    CHECK(IntLattice(m, r) == IntLattice(m, b));
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> norms;
    gram_schmidt(r, mu, norms);
    CHECK(gram_schmidt_norms(r) == norms);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) CHECK(abs(mu[i][j]) <= Rational(1, 2));
      CHECK(norms[i] >= (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]);
    }
  }
}

TEST_CASE("snf transforms are unimodular with a divisibility chain") {
  auto g = make_rng(42);
  for (int t = 0; t < 200; ++t) {
    const auto r = static_cast<std::size_t>(uniform(g, 1, 5)), c = static_cast<std::size_t>(uniform(g, 1, 5));
    IntRows m = random_rows(g, r, c, 12);
    if (t % 5 == 0) m.push_back(m[0]);
    auto s = snf(m, c);
    CHECK(mat_mul(mat_mul(s.U, m), s.V) == s.D);
    CHECK(abs(det_rows(s.U)) == 1);
    CHECK(abs(det_rows(s.V)) == 1);
    CHECK(mat_mul(s.V, s.V_inverse) == identity_rows(c));
    CHECK(s.diagonal.size() == rank_of(m));
    for (std::size_t i = 0; i < s.D.size(); ++i)
      for (std::size_t j = 0; j < c; ++j) {
        if (i == j && i < s.diagonal.size())
          CHECK(s.D[i][j] == s.diagonal[i]);
        else
          CHECK(s.D[i][j] == 0);
      }
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
      CHECK(s.diagonal[i] > 0);
      if (i + 1 < s.diagonal.size()) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
    }
  }
}

TEST_CASE("saturation is idempotent with index equal to the elementary divisor product") {
  auto g = make_rng(43);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(uniform(g, 1, 6));
    const auto k = static_cast<std::size_t>(uniform(g, 1, static_cast<long>(n)));
    IntRows gens = random_rows(g, k, n, 8);
    for (auto& row : gens)
      for (auto& x : row) x *= uniform(g, 1, 3);
    IntLattice l(n, gens);
    IntLattice s = saturate(l);
    CHECK(saturate(s) == s);
    CHECK(s.rank() == l.rank());
    for (const auto& v : l.basis()) CHECK(s.contains(v));
    Integer prod = 1;
    for (const auto& d : snf(l.basis(), n).diagonal) prod *= d;
    // [sat(L) : L]^2 = gram(L) / gram(sat(L)).
    CHECK(gram_det(l.basis()) == prod * prod * gram_det(s.basis()));
  }
}

TEST_CASE("fixed rank agrees with the explicit quotient oracle") {
  auto g = make_rng(44);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(uniform(g, 1, 8));
    auto tau = random_involution(g, n);
    IntRows gens;
    const long k = uniform(g, 0, static_cast<long>(n) - 1);
    for (long i = 0; i < k; ++i) {
      IntVector v(n);
      for (auto& x : v) x = uniform(g, -3, 3);
      gens.push_back(v);
      gens.push_back(permute(tau, v));
    }
    IntLattice lambda = saturate(IntLattice(n, gens));
    auto fr = fixed_rank_on_quotient(n, lambda, tau);
    CHECK(2 * fr.fixed == fr.r + fr.t);
    CHECK(fr.r == static_cast<int>(n - lambda.rank()));
    CHECK(fr.fixed == fixed_oracle(n, lambda, tau));
  }
}
