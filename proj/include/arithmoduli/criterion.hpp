#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "arithmoduli/certroots.hpp"
#include "arithmoduli/intmat.hpp"
#include "arithmoduli/relations.hpp"

namespace arithmoduli {

enum class Verdict { Arithmetic, NotArithmetic };
enum class FastPathMode { On, Off, AssertBoth };
enum class FastPath { None, PrimeDimension, TotallyReal };

std::string to_string(Verdict v);
std::string to_string(FastPathMode m);
std::string to_string(FastPath f);
std::optional<FastPathMode> parse_fast_path_mode(const std::string& s);

struct DecideConfig {
  RelationConfig relations;
  unsigned root_precision = kDefaultRootPrecision;
  FastPathMode fast_paths = FastPathMode::On;
  /// Largest k tried when looking for quadratic powers in the totally real test.
  unsigned power_search_bound = 12;
};

struct FactorEntry {
  IntPoly poly;
  unsigned multiplicity = 0;
};

struct TotallyRealResult {
  Verdict verdict = Verdict::NotArithmetic;
  std::size_t rank = 0;  ///< multiplicative rank of one root per distinct factor
  unsigned long k = 0;   ///< least power making every chosen root quadratic, 0 if none
  std::optional<long> field_discriminant;
  std::vector<long> exponents;  ///< lambda_i^k = +-eps^(l_i), eps the fundamental unit
};

struct ArithmeticityReport {
  bool complete = true;
  Verdict verdict = Verdict::NotArithmetic;
  int rank_SZ = 0;
  int dim_S0 = 0;
  std::vector<FactorEntry> factors;
  std::vector<RootBox> roots;     ///< embedding basis, factor by factor
  std::vector<std::size_t> tau;   ///< complex conjugation on the embedding basis
  std::optional<RelationLattice> relations;
  FastPath fast_path = FastPath::None;
  std::optional<TotallyRealResult> totally_real;
  DecideConfig config;
};

/// Input failed one of the validation gates.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(ValidationOutcome o)
      : std::runtime_error("validation failed: " + o.failure_witness()), outcome_(std::move(o)) {}
  const ValidationOutcome& outcome() const noexcept { return outcome_; }

 private:
  ValidationOutcome outcome_;
};

/// Numerical work stopped short; carries what was computed before the failure.
class IncompleteDecision : public std::runtime_error {
 public:
  IncompleteDecision(const std::string& what, ArithmeticityReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ArithmeticityReport& partial() const noexcept { return partial_; }

 private:
  ArithmeticityReport partial_;
};

/// Decides whether Z^n semidirect_A Z is arithmetic (rank of the integral
/// points of the Zariski closure of <A> equals 1).
ArithmeticityReport decide_arithmetic(const IntMatrix& a, const DecideConfig& cfg = {});

struct FullIrreducibility {
  bool fully_irreducible = false;
  bool charpoly_irreducible = false;
  /// Least k >= 2 such that a ratio of two eigenvalues is a primitive k-th
  /// root of unity (so A^k is reducible), with an irreducible factor of
  /// charpoly(A^k). Present only for irreducible A that is not fully so.
  std::optional<unsigned long> witness_k;
  std::optional<IntPoly> witness_factor;
};

FullIrreducibility fully_irreducible(const IntMatrix& a);

/// Res_y(chi(y), chi(x y)): vanishes exactly at the ratios of roots of chi.
IntPoly ratio_resultant(const IntPoly& chi);

/// Both inputs valid and charpoly(A) == charpoly(B).
bool fiberwise_commensurable(const IntMatrix& a, const IntMatrix& b);

/// Block diagonal matrix of companion blocks for eps^e, eps the fundamental
/// unit of Q(sqrt d), one block per exponent.
IntMatrix construct_from_unit_powers(long d, std::span<const long> exps);

/// Totally real criterion: Arithmetic iff one root per distinct factor has
/// multiplicative rank 1 and some common power of them is quadratic.
TotallyRealResult totally_real_check(const IntMatrix& a, const DecideConfig& cfg = {});

/// True when n >= 5 is prime and charpoly(A) is irreducible; such A is
/// never arithmetic.
bool prime_dim_shortcut(const IntMatrix& a);

}  // namespace arithmoduli
