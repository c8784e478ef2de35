#include <doctest.h>

#include <cmath>
#include <complex>

#include "arithmoduli/errors.hpp"
#include "arithmoduli/quadratic.hpp"
#include "arithmoduli/relations.hpp"
#include "support.hpp"

using namespace arithmoduli;
using namespace testsupport;

namespace {

UnitSpec unit_near(const IntPoly& p, double re) {
  for (const auto& b : isolate_roots(p))
    if (std::abs(b.re_double() - re) < 1e-3 && b.real) return {p, b};
  throw std::logic_error("no root near the requested value");
}

// Conjugation on the concatenated boxes, factor by factor.
std::vector<std::size_t> tau_of(const std::vector<UnitSpec>& units) {
  std::vector<std::size_t> tau(units.size());
  std::size_t start = 0;
  while (start < units.size()) {
    std::size_t end = start;
    std::vector<RootBox> boxes;
    while (end < units.size() && units[end].minpoly == units[start].minpoly) boxes.push_back(units[end++].box);
    auto pair = conjugation_pairing(boxes);
    for (std::size_t k = 0; k < boxes.size(); ++k) tau[start + k] = start + pair.partner[k];
    start = end;
  }
  return tau;
}

IntVector permute(const std::vector<std::size_t>& tau, const IntVector& v) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[tau[i]] = v[i];
  return out;
}

// A product of complex numbers near a root of unity of order <= max_order.
bool near_root_of_unity(std::complex<double> z, int max_order) {
  if (std::abs(std::abs(z) - 1) > 1e-8) return false;
  std::complex<double> w = 1;
  for (int r = 1; r <= max_order; ++r) {
    w *= z;
    if (std::abs(w - 1.0) < 1e-6) return true;
  }
  return false;
}

// Smallest unit > 1 of Z[(1+sqrt d)/2] or Z[sqrt d] by direct search on b.
std::optional<QuadraticUnit> brute_pell(long d, long max_b) {
  const bool one_mod_four = d % 4 == 1;
  for (long b = 1; b <= max_b; ++b) {
    for (int s : {-1, 1}) {
      Integer rhs = one_mod_four ? Integer(d) * b * b + 4 * s : Integer(d) * b * b + s;
      if (rhs <= 0) continue;
      Integer a = isqrt_floor(rhs);
      if (a * a != rhs) continue;
      QuadraticUnit u;
      u.d = d;
      u.a = one_mod_four ? a : 2 * a;
      u.b = one_mod_four ? Integer(b) : Integer(2 * b);
      return u;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("relation lattice examples") {
  IntPoly q{1, -3, 1};
  std::vector<UnitSpec> pair{unit_near(q, 2.618034), unit_near(q, 0.381966)};
  CHECK(relation_lattice(pair).lattice == IntLattice(2, {{1, 1}}));

  auto four = units_of({1, 0, -4, 0, 1});
  REQUIRE(four.size() == 4);
  auto l4 = relation_lattice(four);
  CHECK(l4.lattice.rank() == 3);
  // Roots ordered -b, -a, a, b with ab = 1.
  CHECK(l4.lattice.contains({1, 1, 0, 0}));
  CHECK(l4.lattice.contains({0, 0, 1, 1}));
  CHECK(l4.lattice.contains({1, 0, 0, -1}));
  CHECK(l4.lattice.contains({0, 1, -1, 0}));
  CHECK_FALSE(l4.lattice.contains({1, 0, 0, 0}));
  CHECK_FALSE(l4.lattice.contains({0, 1, 1, 0}));

  std::vector<UnitSpec> mixed{unit_near(q, 2.618034), unit_near({1, -5, 1}, 4.791288)};
  CHECK(relation_lattice(mixed).lattice.rank() == 0);

  auto five = units_of({1, 0, -2, -1, 0, 1});
  CHECK(relation_lattice(five).lattice == IntLattice(5, {{1, 1, 1, 1, 1}}));
}

TEST_CASE("relation lattice of A2 matches a brute-force search") {
  auto five = units_of({1, 0, -2, -1, 0, 1});
  std::vector<std::complex<double>> z;
  for (const auto& u : five) z.emplace_back(u.box.re_double(), u.box.im_double());
  IntLattice lambda = relation_lattice(five).lattice;
  long found = 0;
  std::vector<long> m(5, -3);
  for (;;) {
    std::complex<double> prod = 1;
    for (std::size_t j = 0; j < 5; ++j) prod *= std::pow(z[j], static_cast<double>(m[j]));
    if (near_root_of_unity(prod, 120)) {
      ++found;
      IntVector v(m.begin(), m.end());
      CHECK(lambda.contains(v));
      CHECK((m[0] == m[1] && m[1] == m[2] && m[2] == m[3] && m[3] == m[4]));
    }
    std::size_t k = 0;
    while (k < 5 && m[k] == 3) m[k++] = -3;
    if (k == 5) break;
    ++m[k];
  }
  CHECK(found == 7);
}

TEST_CASE("relation certificates") {
  IntPoly q{1, -3, 1};
  std::vector<UnitSpec> pair{unit_near(q, 2.618034), unit_near(q, 0.381966)};
  auto c = certify_relation(pair, {1, 1}, 512);
  CHECK(c.certified);
  CHECK(c.order == 1);

  std::vector<UnitSpec> single{unit_near(q, 2.618034)};
  CHECK_FALSE(certify_relation(single, {1}, 512).certified);

  auto five = units_of({1, 0, -2, -1, 0, 1});
  auto all = certify_relation(five, {1, 1, 1, 1, 1}, 512);
  CHECK(all.certified);
  CHECK(all.order == 2);
  CHECK(all.numerator == 1);

  RelationConfig norm;
  norm.mode = CertMode::NormCertified;
  auto nc = certify_relation(pair, {1, 1}, 512, norm);
  CHECK(nc.certified);
  CHECK(nc.mode == CertMode::NormCertified);
  auto n5 = certify_relation(five, {1, 1, 1, 1, 1}, 512, norm);
  CHECK(n5.certified);

  RelationConfig tiny = norm;
  tiny.precision_cap = 64;
  auto big = units_of({1, 0, -2, -1, 0, 1});
  CHECK_THROWS_AS(certify_relation(big, {2, 2, 2, 2, 2}, 64, tiny), CertificationError);
}

TEST_CASE("multiplicative rank examples") {
  IntPoly q{1, -3, 1}, q7{1, -7, 1};
  std::vector<UnitSpec> powers{unit_near(q, 2.618034), unit_near(q7, 6.854102)};
  CHECK(multiplicative_rank(powers) == 1);
  CHECK(relation_lattice(powers).lattice == IntLattice(2, {{2, -1}}));
  std::vector<UnitSpec> mixed{unit_near(q, 2.618034), unit_near({1, -5, 1}, 4.791288)};
  CHECK(multiplicative_rank(mixed) == 2);
  std::vector<UnitSpec> single{unit_near(q, 2.618034)};
  CHECK(multiplicative_rank(single) == 1);
}

TEST_CASE("degree bound and admissible root of unity orders") {
  CHECK(max_root_of_unity_order(1) == 2);
  CHECK(max_root_of_unity_order(2) == 6);
  CHECK(max_root_of_unity_order(4) == 12);
  CHECK(max_root_of_unity_order(8) == 30);
  for (unsigned long d = 1; d <= 200; ++d) {
    unsigned long w = max_root_of_unity_order(d);
    CHECK(euler_phi(w) <= d);
    for (unsigned long r = w + 1; r <= 6 * w + 10; ++r) CHECK(euler_phi(r) > d);
  }
  auto five = units_of({1, 0, -2, -1, 0, 1});
  CHECK(degree_bound(five) == 120);
  auto mixed = units_of(IntPoly{1, -3, 1} * IntPoly{1, -5, 1});
  CHECK(degree_bound(mixed) == 24);
}

TEST_CASE("units_of rejects non-units") {
  CHECK_THROWS_AS(units_of({2, -3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(units_of({1, 0, 2}), std::invalid_argument);
}

TEST_CASE("relation lattices hold norm vectors, are tau-stable and precision-stable") {
  auto g = make_rng(51);
  RelationConfig base, doubled;
  doubled.precision_start = 1024;
  for (int t = 0; t < 200; ++t) {
    IntPoly p = random_hyperbolic_unit_poly(g, static_cast<int>(uniform(g, 2, 4)), 6);
    if (uniform(g, 0, 1)) {
      IntPoly q = random_hyperbolic_unit_poly(g, static_cast<int>(uniform(g, 2, 3)), 6);
      if (q != p) p = p * q;
    }
    if (uniform(g, 0, 3) == 0) p = p * IntPoly{1, -3, 1};
    p = squarefree_part(p);
    INFO(p.to_string());
    auto units = units_of(p);
    auto tau = tau_of(units);
    RelationLattice r = relation_lattice(units, base);
    const IntLattice& lambda = r.lattice;
    CHECK(saturate(lambda) == lambda);
    std::size_t start = 0;
    while (start < units.size()) {
      std::size_t end = start;
      while (end < units.size() && units[end].minpoly == units[start].minpoly) ++end;
      IntVector norm(units.size(), 0);
      for (std::size_t k = start; k < end; ++k) norm[k] = 1;
      CHECK(lambda.contains(norm));
      start = end;
    }
    for (const auto& v : lambda.basis()) CHECK(lambda.contains(permute(tau, v)));
    CHECK(r.cert.proven_height >= base.height_bound);
    CHECK(relation_lattice(units, doubled).lattice == lambda);
  }
}

TEST_CASE("fundamental units") {
  auto e5 = fundamental_unit(5);
  CHECK(e5.a == 1);
  CHECK(e5.b == 1);
  CHECK(e5.norm() == -1);
  CHECK(e5.pow(2).minpoly() == IntPoly({1, -3, 1}));
  CHECK(e5.pow(4).trace() == 7);
  auto e2 = fundamental_unit(2);
  CHECK(e2.minpoly() == IntPoly({-1, -2, 1}));
  auto e3 = fundamental_unit(3);
  CHECK(e3.minpoly() == IntPoly({1, -4, 1}));
  CHECK(fundamental_unit(12).minpoly() == e3.minpoly());
  CHECK(fundamental_unit(21).minpoly() == IntPoly({1, -5, 1}));
  auto one = e5.pow(-3) * e5.pow(3);
  CHECK(one.a == 2);
  CHECK(one.b == 0);
  CHECK(field_discriminant(5) == 5);
  CHECK(field_discriminant(3) == 12);
  CHECK(field_discriminant(2) == 8);
}

TEST_CASE("fundamental units agree with a brute-force Pell search") {
  for (long d = 2; d < 300; ++d) {
    if (squarefree_kernel(d) != d) continue;
    INFO("d = ", d);
    QuadraticUnit e = fundamental_unit(d);
    CHECK(abs(e.norm()) == 1);
    CHECK(e.a > 0);
    CHECK(e.b > 0);
    auto brute = brute_pell(d, 200000);
    if (brute) {
      CHECK(brute->a == e.a);
      CHECK(brute->b == e.b);
    } else {
      const bool one_mod_four = d % 4 == 1;
      CHECK(e.b > (one_mod_four ? 200000 : 400000));
    }
  }
}
