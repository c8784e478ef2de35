#include "arithmoduli/criterion.hpp"

#include <algorithm>
#include <cmath>

#include "arithmoduli/errors.hpp"
#include "arithmoduli/quadratic.hpp"

namespace arithmoduli {

std::string to_string(Verdict v) { return v == Verdict::Arithmetic ? "Arithmetic" : "NotArithmetic"; }

std::string to_string(FastPathMode m) {
  switch (m) {
    case FastPathMode::On: return "on";
    case FastPathMode::Off: return "off";
    case FastPathMode::AssertBoth: return "assert-both";
  }
  return "?";
}

std::string to_string(FastPath f) {
  switch (f) {
    case FastPath::None: return "None";
    case FastPath::PrimeDimension: return "PrimeDimension";
    case FastPath::TotallyReal: return "TotallyReal";
  }
  return "?";
}

std::optional<FastPathMode> parse_fast_path_mode(const std::string& s) {
  if (s == "on") return FastPathMode::On;
  if (s == "off") return FastPathMode::Off;
  if (s == "assert-both") return FastPathMode::AssertBoth;
  return std::nullopt;
}

namespace {

ValidationOutcome require_valid(const IntMatrix& a) {
  ValidationOutcome v = validate(a);
  if (!v.ok()) throw ValidationError(v);
  return v;
}

struct Embedding {
  std::vector<UnitSpec> units;
  std::vector<std::size_t> tau;
};

Embedding embed(const Factorization& fac, const DecideConfig& cfg) {
  Embedding e;
  for (const auto& [f, mult] : fac.factors) {
    const std::size_t off = e.units.size();
    auto boxes = isolate_roots(f, cfg.root_precision, cfg.relations.precision_cap);
    ConjugationPairing pairing = conjugation_pairing(boxes);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      e.units.push_back({f, boxes[i]});
      e.tau.push_back(off + pairing.partner[i]);
    }
  }
  return e;
}

// Chosen root per distinct factor: the one of largest modulus.
std::vector<UnitSpec> chosen_roots(const Embedding& e) {
  std::vector<UnitSpec> out;
  for (std::size_t i = 0; i < e.units.size();) {
    std::size_t j = i, best = i;
    double bm = -1.0;
    while (j < e.units.size() && e.units[j].minpoly == e.units[i].minpoly) {
      double m = std::abs(e.units[j].box.re_double());
      if (m > bm) {
        bm = m;
        best = j;
      }
      ++j;
    }
    out.push_back(e.units[best]);
    i = j;
  }
  return out;
}

TotallyRealResult totally_real_impl(const Embedding& e, const DecideConfig& cfg) {
  for (const auto& u : e.units)
    if (!u.box.real) throw std::invalid_argument("totally_real_check requires real eigenvalues");
  TotallyRealResult out;
  std::vector<UnitSpec> chosen = chosen_roots(e);
  out.rank = multiplicative_rank(chosen, cfg.relations);
  if (out.rank != 1) {
    out.verdict = Verdict::NotArithmetic;
    return out;
  }
  std::vector<IntPoly> quad;
  for (unsigned k = 1; k <= cfg.power_search_bound && quad.empty(); ++k) {
    std::vector<IntPoly> mins;
    for (const auto& u : chosen) {
      IntPoly mp = squarefree_part(charpoly(power(companion(u.minpoly), k)));
      if (mp.degree() != 2) break;
      mins.push_back(mp);
    }
    if (mins.size() == chosen.size()) {
      out.k = k;
      quad = std::move(mins);
    }
  }
  if (quad.empty()) {
    out.verdict = Verdict::NotArithmetic;
    return out;
  }
  long d0 = 0;
  for (const auto& q : quad) {
    Integer disc = q.coeff(1) * q.coeff(1) - 4 * q.coeff(0);
    long dk = squarefree_kernel(disc.get_si());
    if (d0 != 0 && dk != d0) throw std::logic_error("dependent units in different quadratic fields");
    d0 = dk;
  }
  out.field_discriminant = field_discriminant(d0);
  QuadraticUnit eps = fundamental_unit(d0);
  const double le = std::log(eps.value());
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    double lam = std::abs(chosen[i].box.re_double());
    long l = std::lround(static_cast<double>(out.k) * std::log(lam) / le);
    QuadraticUnit p = eps.pow(l);
    const IntPoly& q = quad[i];
    bool match = q.coeff(0) == p.norm() && abs(q.coeff(1)) == abs(p.trace());
    if (!match) throw std::logic_error("power of the fundamental unit does not match");
    out.exponents.push_back(l);
  }
  out.verdict = Verdict::Arithmetic;
  return out;
}

bool is_prime_dim_case(std::size_t n, const Factorization& fac) {
  return n >= 5 && is_prime(n) && fac.irreducible();
}

}  // namespace

ArithmeticityReport decide_arithmetic(const IntMatrix& a, const DecideConfig& cfg) {
  ValidationOutcome v = require_valid(a);
  ArithmeticityReport rep;
  rep.config = cfg;
  Factorization fac = factor(v.charpoly);
  for (const auto& [f, e] : fac.factors) rep.factors.push_back({f, e});
  const std::size_t n = a.dim();

  Embedding emb;
  try {
    emb = embed(fac, cfg);
  } catch (const PrecisionError& ex) {
    rep.complete = false;
    throw IncompleteDecision(ex.what(), rep);
  }
  for (const auto& u : emb.units) rep.roots.push_back(u.box);
  rep.tau = emb.tau;
  const std::size_t N = emb.units.size();
  std::size_t k_fixed = 0;
  for (std::size_t i = 0; i < N; ++i)
    if (emb.tau[i] == i) ++k_fixed;

  const bool prime_case = is_prime_dim_case(n, fac);
  const int p = static_cast<int>(n), k = static_cast<int>(k_fixed);
  if (prime_case && cfg.fast_paths == FastPathMode::On) {
    rep.verdict = Verdict::NotArithmetic;
    rep.rank_SZ = (p - k) / 2 + (k - 1);
    rep.dim_S0 = p - 1;
    rep.fast_path = FastPath::PrimeDimension;
    return rep;
  }

  try {
    rep.relations = relation_lattice(emb.units, cfg.relations);
  } catch (const PrecisionError& ex) {
    rep.complete = false;
    throw IncompleteDecision(ex.what(), rep);
  } catch (const CertificationError& ex) {
    rep.complete = false;
    throw IncompleteDecision(ex.what(), rep);
  }
  FixedRank fr = fixed_rank_on_quotient(N, rep.relations->lattice, emb.tau);
  rep.rank_SZ = fr.fixed;
  rep.dim_S0 = fr.r;
  rep.verdict = fr.fixed == 1 ? Verdict::Arithmetic : Verdict::NotArithmetic;

  const int m = static_cast<int>(fac.factors.size());
  if (rep.rank_SZ < 1 || rep.rank_SZ > rep.dim_S0 || rep.dim_S0 > static_cast<int>(N) - m)
    throw std::logic_error("rank invariants violated: rank_SZ=" + std::to_string(rep.rank_SZ) +
                           " dim_S0=" + std::to_string(rep.dim_S0));

  if (prime_case) {
    IntLattice norm_line(N, IntRows{IntVector(N, Integer(1))});
    if (!(rep.relations->lattice == norm_line))
      throw std::logic_error("prime-dimension relation lattice is not the norm line");
    if (rep.rank_SZ != (p - k) / 2 + (k - 1))
      throw std::logic_error("prime-dimension rank formula violated");
    if (rep.verdict != Verdict::NotArithmetic)
      throw std::logic_error("fast path and main pipeline disagree (prime dimension)");
    if (cfg.fast_paths == FastPathMode::AssertBoth) rep.fast_path = FastPath::PrimeDimension;
  }

  if (k_fixed == N && cfg.fast_paths != FastPathMode::Off) {
    TotallyRealResult tr;
    try {
      tr = totally_real_impl(emb, cfg);
    } catch (const PrecisionError& ex) {
      throw IncompleteDecision(ex.what(), rep);
    }
    if (tr.verdict != rep.verdict)
      throw std::logic_error("fast path and main pipeline disagree (totally real)");
    rep.totally_real = tr;
    if (rep.fast_path == FastPath::None) rep.fast_path = FastPath::TotallyReal;
  }
  return rep;
}

TotallyRealResult totally_real_check(const IntMatrix& a, const DecideConfig& cfg) {
  ValidationOutcome v = require_valid(a);
  Embedding emb = embed(factor(v.charpoly), cfg);
  return totally_real_impl(emb, cfg);
}

bool prime_dim_shortcut(const IntMatrix& a) {
  ValidationOutcome v = require_valid(a);
  return is_prime_dim_case(a.dim(), factor(v.charpoly));
}

IntPoly ratio_resultant(const IntPoly& chi) {
  const int n = chi.degree();
  if (n < 1) throw std::invalid_argument("ratio_resultant needs degree >= 1");
  const std::size_t npts = static_cast<std::size_t>(n * n + 1);
  std::vector<Rational> xs(npts), dd(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    xs[i] = Rational(static_cast<long>(i + 1));
    dd[i] = Rational(resultant(chi, chi.scale_argument(Integer(static_cast<long>(i + 1)))));
  }
  // Newton divided differences.
  for (std::size_t j = 1; j < npts; ++j)
    for (std::size_t i = npts - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  std::vector<Rational> poly{dd[npts - 1]};
  for (std::size_t i = npts - 1; i-- > 0;) {
    // poly = poly * (x - xs[i]) + dd[i]
    std::vector<Rational> next(poly.size() + 1);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * xs[i];
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  std::vector<Integer> c;
  for (auto& q : poly) {
    q.canonicalize();
    if (q.get_den() != 1) throw std::logic_error("ratio resultant has non-integral coefficients");
    c.push_back(q.get_num());
  }
  return IntPoly(std::move(c));
}

FullIrreducibility fully_irreducible(const IntMatrix& a) {
  ValidationOutcome v = require_valid(a);
  FullIrreducibility out;
  Factorization fac = factor(v.charpoly);
  out.charpoly_irreducible = fac.irreducible();
  if (!out.charpoly_irreducible) return out;
  const unsigned long n = a.dim();
  IntPoly r = ratio_resultant(v.charpoly);
  for (unsigned long i = 0; i < n; ++i) {
    auto q = divide_exact(r, IntPoly{-1, 1});
    if (!q) throw std::logic_error("ratio resultant lacks the diagonal factor");
    r = std::move(*q);
  }
  const unsigned long bound = n * (n - 1);
  const unsigned long w = max_root_of_unity_order(bound);
  for (unsigned long k = 2; k <= w; ++k) {
    if (euler_phi(k) > bound) continue;
    if (divide_exact(r, cyclotomic(static_cast<unsigned>(k)))) {
      out.witness_k = k;
      out.witness_factor = factor(charpoly(power(a, k))).factors.front().first;
      return out;
    }
  }
  out.fully_irreducible = true;
  return out;
}

bool fiberwise_commensurable(const IntMatrix& a, const IntMatrix& b) {
  ValidationOutcome va = require_valid(a);
  ValidationOutcome vb = require_valid(b);
  return va.charpoly == vb.charpoly;
}

IntMatrix construct_from_unit_powers(long d, std::span<const long> exps) {
  if (exps.empty()) throw std::invalid_argument("at least one exponent is required");
  QuadraticUnit eps = fundamental_unit(d);
  const Integer N = eps.norm();
  const Integer T1 = eps.trace();
  std::vector<IntMatrix> blocks;
  for (long e : exps) {
    if (e == 0) throw std::invalid_argument("exponent 0 gives a non-hyperbolic block");
    const unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
    // Traces T_j of eps^j: T_0 = 2, T_{j+1} = T_1 T_j - N T_{j-1}.
    Integer t_prev = 2, t_cur = T1;
    for (unsigned long j = 1; j < ae; ++j) {
      Integer t_next = T1 * t_cur - N * t_prev;
      t_prev = t_cur;
      t_cur = t_next;
    }
    Integer Ne = pow_int(N, ae);  // N = +-1, so N^-e = N^e
    Integer T = e > 0 ? t_cur : Integer(Ne * t_cur);
    blocks.push_back(companion(IntPoly(std::vector<Integer>{Ne, -T, 1})));
  }
  return block_diag(blocks);
}

}  // namespace arithmoduli
