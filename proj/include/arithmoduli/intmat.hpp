#pragma once

#include <span>
#include <string>
#include <vector>

#include "arithmoduli/integer.hpp"
#include "arithmoduli/intpoly.hpp"

namespace arithmoduli {

/// Square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n);
  explicit IntMatrix(const std::vector<std::vector<Integer>>& rows);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Integer trace() const;
  bool is_zero() const;
  std::vector<std::vector<Integer>> rows() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& c, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Integer> a_;
};

/// det(xI - A), monic of degree n (Faddeev-LeVerrier).
IntPoly charpoly(const IntMatrix& a);

/// Fraction-free Gaussian elimination.
Integer determinant(const IntMatrix& a);

/// p(A) by Horner's rule.
IntMatrix evaluate(const IntPoly& p, const IntMatrix& a);

enum class Gate { Unimodular, Hyperbolic, Semisimple };

std::string to_string(Gate g);

struct ValidationOutcome {
  bool unimodular = false;
  bool hyperbolic = false;
  bool semisimple = false;
  IntPoly charpoly;
  Integer det;
  /// Empty when every gate passes; otherwise one line per failed gate.
  std::vector<std::pair<Gate, std::string>> failures;

  bool ok() const { return unimodular && hyperbolic && semisimple; }
  std::string failure_witness() const;
};

/// Checks det = +-1, no eigenvalue on the unit circle, and diagonalisability
/// over C (the squarefree part of the characteristic polynomial kills A).
ValidationOutcome validate(const IntMatrix& a);

IntMatrix power(const IntMatrix& a, unsigned long k);

/// Companion matrix of a monic polynomial with constant term +-1:
/// ones on the subdiagonal, last column -c_0, ..., -c_{n-1}.
IntMatrix companion(const IntPoly& p);

IntMatrix block_diag(std::span<const IntMatrix> blocks);

/// Inverse of a unimodular matrix, exact.
IntMatrix inverse(const IntMatrix& a);

}  // namespace arithmoduli
