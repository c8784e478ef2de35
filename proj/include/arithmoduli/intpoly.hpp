#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithmoduli/integer.hpp"

namespace arithmoduli {

/// Dense univariate polynomial over Z, coefficients stored in ascending order.
/// Trailing zero coefficients are never stored; the zero polynomial has
/// degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const Integer& c);
  static IntPoly monomial(const Integer& c, std::size_t k);
  /// x - a
  static IntPoly linear_root(const Integer& a);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Integer>& coeffs() const noexcept { return coeffs_; }
  Integer coeff(std::size_t i) const;
  const Integer& leading() const;
  bool is_monic() const;

  /// Nonnegative gcd of the coefficients.
  Integer content() const;
  /// p / content, normalised to a positive leading coefficient.
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  /// x^deg p(1/x).
  IntPoly reciprocal() const;
  /// p(s*x).
  IntPoly scale_argument(const Integer& s) const;
  IntPoly negated() const;

  Integer operator()(const Integer& x) const;
  Rational operator()(const Rational& x) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const Integer& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const Integer& c) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, highest degree first, e.g. "x^4 - 4*x^2 + 1".
  std::string to_string(char var = 'x') const;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

/// Orders by degree, then lexicographically by ascending coefficients.
bool poly_less(const IntPoly& a, const IntPoly& b);

IntPoly pow(const IntPoly& p, unsigned k);

/// Divides by a nonzero integer; throws if the division is inexact.
IntPoly divexact(const IntPoly& p, const Integer& c);

/// Quotient p / d over Z when d divides p exactly in Z[x], otherwise nullopt.
std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& d);

/// r with lc(b)^(deg a - deg b + 1) a = q b + r, deg r < deg b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

/// Primitive gcd with positive leading coefficient. gcd(p, 0) = pp(p).
IntPoly poly_gcd(const IntPoly& p, const IntPoly& q);

/// Primitive squarefree part with positive leading coefficient.
IntPoly squarefree_part(const IntPoly& p);

bool is_squarefree(const IntPoly& p);

/// p = content * prod f_i^(e_i), f_i primitive irreducible with positive
/// leading coefficient, sorted by poly_less.
struct Factorization {
  Integer content;
  std::vector<std::pair<IntPoly, unsigned>> factors;

  IntPoly expand() const;
  bool irreducible() const;
};

Factorization factor(const IntPoly& p);

/// Sylvester resultant: res(p, q) = lc(p)^deg q * prod_{p(a)=0} q(a).
/// With this convention res(x - 2, x - 3) = -1.
Integer resultant(const IntPoly& p, const IntPoly& q);

/// r-th cyclotomic polynomial, r >= 1.
IntPoly cyclotomic(unsigned r);

/// Number of distinct real roots in (a, b]. Requires p squarefree, a < b,
/// p(a) != 0 and p(b) != 0.
unsigned sturm_count(const IntPoly& p, const Rational& a, const Rational& b);

/// Number of distinct complex roots of modulus exactly 1. Requires p(0) != 0.
unsigned unit_circle_root_count(const IntPoly& p);

/// Irreducible factors of p that vanish somewhere on the unit circle.
std::vector<IntPoly> circle_root_factors(const IntPoly& p);

}  // namespace arithmoduli
