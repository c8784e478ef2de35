#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arithmoduli/certroots.hpp"
#include "arithmoduli/intpoly.hpp"
#include "arithmoduli/lattice.hpp"

namespace arithmoduli {

enum class CertMode { Heuristic, NormCertified };

std::string to_string(CertMode m);
std::optional<CertMode> parse_cert_mode(const std::string& s);

/// An algebraic unit: a root of `minpoly` (monic, irreducible, constant term
/// +-1) singled out by an isolating box.
struct UnitSpec {
  IntPoly minpoly;
  RootBox box;
};

struct RelationConfig {
  unsigned precision_start = 512;
  unsigned precision_cap = kDefaultPrecisionCap;
  Integer height_bound = 1000000;
  Rational delta{99, 100};
  CertMode mode = CertMode::Heuristic;
  /// Largest degree bound D that the norm-certified mode accepts.
  unsigned long degree_bound_cap = 5040;
};

struct CertLevel {
  CertMode mode = CertMode::Heuristic;
  unsigned bits = 0;          ///< precision at which the lattice stabilised
  unsigned norm_bits = 0;     ///< largest precision used by norm certification
  Integer proven_height = 0;  ///< every relation of max-norm <= this is in the lattice
};

struct RelationLattice {
  IntLattice lattice;
  CertLevel cert;
  std::vector<unsigned> rounds;  ///< precisions visited
};

/// Outcome of checking that prod alpha_j^m_j is a root of unity.
struct RelationCertificate {
  bool certified = false;
  unsigned long order = 0;      ///< r: the product is exp(2 pi i k / r)
  unsigned long numerator = 0;  ///< k, 0 <= k < r
  CertMode mode = CertMode::Heuristic;
  unsigned bits = 0;
  std::string reason;
};

/// Saturated lattice of m in Z^N with prod alpha_j^m_j a root of unity.
/// Throws PrecisionError if the lattice does not stabilise below the cap.
RelationLattice relation_lattice(std::span<const UnitSpec> units, const RelationConfig& cfg = {});

/// Heuristic mode: the product is within 2^-(bits/2) of a root of unity of
/// admissible order, at `bits` and at 2*bits. Norm-certified mode: in
/// addition, a Liouville-type separation bound proves the r-th power is 1.
/// Throws CertificationError if the required precision exceeds the cap or
/// the degree bound exceeds degree_bound_cap.
RelationCertificate certify_relation(std::span<const UnitSpec> units, const IntVector& m,
                                     unsigned bits, const RelationConfig& cfg = {});

/// N - rank of the relation lattice.
std::size_t multiplicative_rank(std::span<const UnitSpec> units, const RelationConfig& cfg = {});

/// (sum of the degrees of the distinct minimal polynomials)!
Integer degree_bound(std::span<const UnitSpec> units);

/// Largest r with phi(r) <= d.
unsigned long max_root_of_unity_order(unsigned long d);

/// Every root of every distinct irreducible factor of p, factor by factor.
/// Throws std::invalid_argument unless each factor is monic with constant
/// term +-1.
std::vector<UnitSpec> units_of(const IntPoly& p, unsigned bits = kDefaultRootPrecision,
                               unsigned cap = kDefaultPrecisionCap);

}  // namespace arithmoduli
