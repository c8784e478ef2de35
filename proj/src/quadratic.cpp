#include "arithmoduli/quadratic.hpp"

#include <cmath>
#include <stdexcept>

namespace arithmoduli {

Integer QuadraticUnit::norm() const { return divexact(a * a - Integer(d) * b * b, Integer(4)); }

QuadraticUnit QuadraticUnit::operator*(const QuadraticUnit& o) const {
  if (d != o.d) throw std::invalid_argument("units from different fields");
  return {d, divexact(a * o.a + Integer(d) * b * o.b, Integer(2)), divexact(a * o.b + b * o.a, Integer(2))};
}

QuadraticUnit QuadraticUnit::inverse() const {
  Integer n = norm();
  if (abs(n) != 1) throw std::domain_error("not a unit");
  return {d, n * a, -n * b};
}

QuadraticUnit QuadraticUnit::pow(long e) const {
  QuadraticUnit base = e < 0 ? inverse() : *this;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  QuadraticUnit r{d, 2, 0};
  while (k > 0) {
    if (k & 1UL) r = r * base;
    k >>= 1UL;
    if (k > 0) base = base * base;
  }
  return r;
}

IntPoly QuadraticUnit::minpoly() const { return IntPoly(std::vector<Integer>{norm(), -a, 1}); }

double QuadraticUnit::value() const { return (a.get_d() + b.get_d() * std::sqrt(static_cast<double>(d))) / 2.0; }

long field_discriminant(long d0) {
  long r = ((d0 % 4) + 4) % 4;
  return r == 1 ? d0 : 4 * d0;
}

namespace {

// Norm of x + y w, w = (1 + sqrt d)/2 when d = 1 mod 4, else w = sqrt d.
Integer omega_norm(const Integer& x, const Integer& y, long d, bool half) {
  if (half) return x * x + x * y - y * y * ((d - 1) / 4);
  return x * x - Integer(d) * y * y;
}

}  // namespace

QuadraticUnit fundamental_unit(long d_in) {
  if (d_in <= 1) throw std::invalid_argument("fundamental_unit requires d > 1");
  const long d = squarefree_kernel(d_in);
  if (d == 1) throw std::invalid_argument("d is a perfect square");
  const bool half = (d % 4) == 1;
  // Continued fraction of theta = -w' as (P + sqrt d) / Q: sqrt d, or (sqrt d - 1) / 2.
  Integer P = half ? -1 : 0, Q = half ? 2 : 1;
  const Integer D(d);
  const Integer s = isqrt_floor(D);
  Integer p_prev = 1, q_prev = 0, p_cur, q_cur;
  Integer a = floor_div(P + s, Q);
  p_cur = a;
  q_cur = 1;
  auto test = [&](const Integer& x, const Integer& y) -> bool {
    if (sgn(y) <= 0) return false;
    return abs(omega_norm(x, y, d, half)) == 1;
  };
  auto make = [&](const Integer& x, const Integer& y) {
    return half ? QuadraticUnit{d, 2 * x + y, y} : QuadraticUnit{d, 2 * x, 2 * y};
  };
  for (int iter = 0; iter < 100000; ++iter) {
    // Intermediate fractions between consecutive convergents, then the convergent.
    for (Integer j = 1; j < a && iter > 0; ++j) {
      Integer x = p_cur - (a - j) * p_prev, y = q_cur - (a - j) * q_prev;
      if (test(x, y)) return make(x, y);
    }
    if (test(p_cur, q_cur)) return make(p_cur, q_cur);
    // Next partial quotient.
    P = a * Q - P;
    Q = divexact(D - P * P, Q);
    a = floor_div(P + s, Q);
    Integer pn = a * p_cur + p_prev, qn = a * q_cur + q_prev;
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = pn;
    q_cur = qn;
  }
  throw std::logic_error("fundamental unit search did not terminate");
}

}  // namespace arithmoduli
