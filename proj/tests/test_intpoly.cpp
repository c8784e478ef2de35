#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>

#include "arithmoduli/certroots.hpp"
#include "arithmoduli/intmat.hpp"
#include "arithmoduli/intpoly.hpp"
#include "support.hpp"

using namespace arithmoduli;
using namespace testsupport;

namespace {

// Determinant of the Sylvester matrix, rows of p shifted deg q times then q.
Integer sylvester_resultant(const IntPoly& p, const IntPoly& q) {
  const int m = p.degree(), n = q.degree();
  const std::size_t size = static_cast<std::size_t>(m + n);
  IntMatrix s(size);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + m - k)) = p.coeff(static_cast<std::size_t>(k));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k)
      s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + n - k)) = q.coeff(static_cast<std::size_t>(k));
  return determinant(s);
}

// Durand-Kerner in complex long double.
std::vector<std::complex<long double>> dk_roots(const IntPoly& p) {
  using C = std::complex<long double>;
  const int n = p.degree();
  std::vector<long double> c;
  for (const auto& x : p.coeffs()) c.push_back(static_cast<long double>(x.get_d()));
  const long double lc = c.back();
  for (auto& x : c) x /= lc;
  std::vector<C> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::pow(C(0.4L, 0.9L), i);
  auto eval = [&](C x) {
    C acc = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  for (int it = 0; it < 5000; ++it) {
    long double delta = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      C den = 1;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) den *= z[i] - z[j];
      C step = eval(z[i]) / den;
      z[i] -= step;
      delta = std::max(delta, std::abs(step));
    }
    if (delta < 1e-17L) break;
  }
  return z;
}

bool divides(const IntPoly& d, const IntPoly& p) { return divide_exact(p, d).has_value(); }

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> out;
  for (Integer k = 1; k * k <= n; ++k) {
    if (n % k == 0) {
      out.push_back(k);
      if (k * k != n) out.push_back(n / k);
    }
  }
  return out;
}

// Rational root test plus quadratic factor search; valid for degree <= 4.
bool brute_irreducible(const IntPoly& p) {
  const int d = p.degree();
  if (d <= 0) return false;
  if (p.content() != 1) return false;
  if (d == 1) return true;
  if (p.coeff(0) == 0) return false;
  for (const auto& a : divisors(p.coeff(0)))
    for (const auto& b : divisors(p.leading()))
      for (int s : {1, -1})
        if (p(Rational(s * a, b)) == 0) return false;
  if (d <= 3) return true;
  Integer norm2 = 0;
  for (const auto& c : p.coeffs()) norm2 += c * c;
  const Integer bound = 4 * isqrt_ceil(norm2) * abs(p.leading());
  for (const auto& b2 : divisors(p.leading()))
    for (const auto& b0a : divisors(p.coeff(0)))
      for (int s : {1, -1})
        for (Integer b1 = -bound; b1 <= bound; ++b1) {
          IntPoly q(std::vector<Integer>{s * b0a, b1, b2});
          if (pseudo_remainder(p, q).is_zero()) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("gcd examples") {
  CHECK(poly_gcd({-1, 0, 1}, {-1, 1}) == IntPoly({-1, 1}));
  CHECK(poly_gcd({1, 0, -4, 0, 1}, {1, -4, 1}) == IntPoly({1}));
  IntPoly p{6, -4, 2};
  CHECK(poly_gcd(p, p) == p.primitive_part());
}

TEST_CASE("squarefree part examples") {
  IntPoly q{1, -4, 1};
  CHECK(squarefree_part(q * q) == q);
  CHECK(squarefree_part({1, -3, 1}) == IntPoly({1, -3, 1}));
  IntPoly x1{-1, 1}, x2{1, 1};
  CHECK(squarefree_part(pow(x1, 3) * x2) == IntPoly({-1, 0, 1}));
}

TEST_CASE("factor examples") {
  auto f = factor({1, 0, -4, 0, 1});
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].second == 1);
  CHECK(f.irreducible());
  CHECK(factor({1, 0, -2, -1, 0, 1}).irreducible());
  auto g = factor({-1, 0, 1});
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0].first == IntPoly({-1, 1}));
  CHECK(g.factors[1].first == IntPoly({1, 1}));
  IntPoly q{1, -4, 1};
  auto h = factor(q * q);
  REQUIRE(h.factors.size() == 1);
  CHECK(h.factors[0].first == q);
  CHECK(h.factors[0].second == 2);
  auto c = factor({-6, 0, 6});
  CHECK(c.content == 6);
  CHECK(c.expand() == IntPoly({-6, 0, 6}));
  CHECK_THROWS(factor(IntPoly()));
}

TEST_CASE("factor of products needing recombination") {
  // x^4 + 1 is irreducible but splits modulo every prime.
  CHECK(factor({1, 0, 0, 0, 1}).irreducible());
  IntPoly swinnerton{1, 0, -10, 0, 1};
  CHECK(factor(swinnerton).irreducible());
  IntPoly prod = IntPoly{1, 0, 0, 0, 1} * IntPoly{-2, 0, 1} * IntPoly{1, 1, 1};
  auto f = factor(prod);
  CHECK(f.factors.size() == 3);
  CHECK(f.expand() == prod);
}

TEST_CASE("resultant examples and sign convention") {
  CHECK(resultant({-2, 1}, {-3, 1}) == -1);
  CHECK(resultant({1, -3, 1}, {0, 1}) == 1);
  CHECK(resultant({1, 0, 1}, {1, 0, 1}) == 0);
  CHECK(resultant({-2, 1}, {-3, 1}) == sylvester_resultant({-2, 1}, {-3, 1}));
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
  auto g = make_rng(11);
  for (int t = 0; t < 200; ++t) {
    IntPoly p = random_poly(g, static_cast<int>(uniform(g, 1, 6)), 9);
    IntPoly q = random_poly(g, static_cast<int>(uniform(g, 1, 6)), 9);
    INFO(p.to_string(), " , ", q.to_string());
    CHECK(resultant(p, q) == sylvester_resultant(p, q));
  }
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == IntPoly({-1, 1}));
  CHECK(cyclotomic(2) == IntPoly({1, 1}));
  CHECK(cyclotomic(12) == IntPoly({1, 0, -1, 0, 1}));
  for (unsigned r = 1; r <= 60; ++r) {
    IntPoly xr = IntPoly::monomial(1, r) - IntPoly{1};
    IntPoly rest = xr;
    for (unsigned d = 1; d < r; ++d)
      if (r % d == 0) rest = *divide_exact(rest, cyclotomic(d));
    CHECK(rest == cyclotomic(r));
    CHECK(cyclotomic(r).degree() == static_cast<int>(euler_phi(r)));
  }
}

TEST_CASE("sturm count examples") {
  CHECK(sturm_count({1, -3, 1}, 0, 1) == 1);
  CHECK(sturm_count({1, 0, 1}, -10, 10) == 0);
  CHECK(sturm_count({-2, 0, 1}, -2, 2) == 2);
  CHECK_THROWS(sturm_count({-2, 0, 1}, 2, -2));
}

TEST_CASE("unit circle root count examples") {
  CHECK(unit_circle_root_count({1, 0, -1, 0, 1}) == 4);
  CHECK(unit_circle_root_count({1, -3, 1}) == 0);
  CHECK(unit_circle_root_count({1, -1, -1, -1, 1}) == 2);
  CHECK(unit_circle_root_count({-1, 1}) == 1);
  CHECK(unit_circle_root_count({1, 1}) == 1);
  // Lehmer's polynomial: Salem, one root outside, one inside, eight on the circle.
  CHECK(unit_circle_root_count({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}) == 8);
}

TEST_CASE("unit circle count agrees with numeric roots") {
  auto g = make_rng(12);
  int checked = 0;
  for (int t = 0; t < 400 && checked < 200; ++t) {
    IntPoly p = random_poly(g, static_cast<int>(uniform(g, 1, 6)), 4);
    if (uniform(g, 0, 2) == 0) p = p * cyclotomic(static_cast<unsigned>(uniform(g, 1, 12)));
    if (p.coeff(0) == 0) continue;
    IntPoly sf = squarefree_part(p);
    auto z = dk_roots(sf);
    unsigned on = 0;
    bool ambiguous = false;
    for (auto r : z) {
      long double gap = std::abs(std::abs(r) - 1.0L);
      if (gap < 1e-9L) ++on;
      else if (gap < 1e-5L) ambiguous = true;
    }
    if (ambiguous) continue;
    ++checked;
    INFO(p.to_string());
    CHECK(unit_circle_root_count(p) == on);
  }
  CHECK(checked >= 200);
}

TEST_CASE("factorization reassembles and factors are irreducible") {
  auto g = make_rng(13);
  for (int t = 0; t < 200; ++t) {
    IntPoly p{1};
    const long parts = uniform(g, 1, 3);
    for (long k = 0; k < parts; ++k) {
      IntPoly f = random_poly(g, static_cast<int>(uniform(g, 1, 4)), 5);
      p = p * pow(f, static_cast<unsigned>(uniform(g, 1, 2)));
    }
    p = p * Integer(uniform(g, 1, 3) * (uniform(g, 0, 1) ? 1 : -1));
    INFO(p.to_string());
    Factorization f = factor(p);
    CHECK(f.expand() == p);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      const IntPoly& q = f.factors[i].first;
      CHECK(q.content() == 1);
      CHECK(q.leading() > 0);
      CHECK(f.factors[i].second >= 1);
      if (i > 0) CHECK(poly_less(f.factors[i - 1].first, q));
      if (q.degree() <= 4) CHECK(brute_irreducible(q));
    }
    CHECK(factor(p).factors == f.factors);
  }
}

TEST_CASE("gcd divides both and squarefree part is power stable") {
  auto g = make_rng(14);
  for (int t = 0; t < 200; ++t) {
    IntPoly common = random_poly(g, static_cast<int>(uniform(g, 0, 3)), 20);
    IntPoly p = common * random_poly(g, static_cast<int>(uniform(g, 1, 5)), 20);
    IntPoly q = common * random_poly(g, static_cast<int>(uniform(g, 1, 5)), 20);
    IntPoly d = poly_gcd(p, q);
    CHECK(divides(d, p));
    CHECK(divides(d, q));
    CHECK(divides(common.primitive_part(), d));
    IntPoly sf = squarefree_part(p);
    CHECK(is_squarefree(sf));
    for (unsigned k : {2U, 3U}) CHECK(squarefree_part(pow(p, k)) == sf);
  }
}

TEST_CASE("sturm count over a Cauchy interval counts distinct real roots") {
  auto g = make_rng(15);
  for (int t = 0; t < 200; ++t) {
    IntPoly p = random_poly(g, static_cast<int>(uniform(g, 1, 7)), 20);
    IntPoly sf = squarefree_part(p);
    Integer maxc = 0;
    for (const auto& c : sf.coeffs()) maxc = std::max(maxc, Integer(abs(c)));
    Rational bound = Rational(maxc, abs(sf.leading())) + 1;
    bound.canonicalize();
    auto boxes = isolate_roots(sf);
    std::size_t real = std::count_if(boxes.begin(), boxes.end(), [](const RootBox& b) { return b.real; });
    INFO(p.to_string());
    CHECK(sturm_count(sf, -bound, bound) == real);
  }
}
