#pragma once

#include "arithmoduli/integer.hpp"
#include "arithmoduli/intpoly.hpp"

namespace arithmoduli {

/// Element (a + b sqrt(d)) / 2 of a real quadratic order.
struct QuadraticUnit {
  long d = 0;
  Integer a, b;

  Integer trace() const { return a; }
  Integer norm() const;
  QuadraticUnit operator*(const QuadraticUnit& o) const;
  QuadraticUnit inverse() const;
  QuadraticUnit pow(long e) const;
  /// x^2 - trace x + norm.
  IntPoly minpoly() const;
  double value() const;
};

/// Fundamental unit (> 1) of the ring of integers of Q(sqrt(d)), d > 1 and
/// not a square. d is replaced by its squarefree kernel.
QuadraticUnit fundamental_unit(long d);

/// d0 if d0 = 1 mod 4, else 4 d0, for squarefree d0.
long field_discriminant(long d0);

}  // namespace arithmoduli
