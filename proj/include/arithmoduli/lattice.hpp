#pragma once

#include <span>
#include <vector>

#include "arithmoduli/integer.hpp"

namespace arithmoduli {

using IntRows = std::vector<IntVector>;

/// Sublattice of Z^n stored as its row Hermite normal form: pivots strictly
/// increase to the right, are positive, and entries above each pivot lie in
/// [0, pivot).
class IntLattice {
 public:
  explicit IntLattice(std::size_t ambient = 0) : ambient_(ambient) {}
  /// Lattice spanned by arbitrary generators (put into HNF).
  IntLattice(std::size_t ambient, const IntRows& generators);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const IntRows& basis() const noexcept { return basis_; }

  bool contains(const IntVector& v) const;
  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_;
  IntRows basis_;
};

/// Row HNF of the given rows; zero rows are dropped.
IntRows hnf(const IntRows& rows, std::size_t ambient);

/// U * M * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...,
/// all d_i >= 0.
struct SmithForm {
  IntRows U, D, V, V_inverse;
  std::vector<Integer> diagonal;  // nonzero invariant factors
};

SmithForm snf(const IntRows& m, std::size_t cols);

/// (L tensor Q) intersected with Z^n.
IntLattice saturate(const IntLattice& l);

/// Exact integral LLL with parameter delta in (1/4, 1]. Rows must be
/// linearly independent.
IntRows lll(const IntRows& basis, const Rational& delta = Rational(99, 100));

/// Exact squared Gram-Schmidt norms |b*_i|^2.
std::vector<Rational> gram_schmidt_norms(const IntRows& basis);

struct FixedRank {
  int r = 0;      ///< rank of the quotient Z^N / Lambda
  int t = 0;      ///< trace of the involution on the quotient
  int fixed = 0;  ///< (r + t) / 2
};

/// Dimension of the fixed space of a coordinate involution tau acting on
/// Z^N / Lambda. Lambda must be saturated and tau-stable.
FixedRank fixed_rank_on_quotient(std::size_t n, const IntLattice& lambda,
                                 std::span<const std::size_t> tau);

/// Rational rank of a list of integer rows.
std::size_t rank_of(const IntRows& rows);

}  // namespace arithmoduli
