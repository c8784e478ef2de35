#include "arithmoduli/relations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "arithmoduli/errors.hpp"

namespace arithmoduli {

std::string to_string(CertMode m) { return m == CertMode::Heuristic ? "heuristic" : "norm-certified"; }

std::optional<CertMode> parse_cert_mode(const std::string& s) {
  if (s == "heuristic") return CertMode::Heuristic;
  if (s == "norm-certified") return CertMode::NormCertified;
  return std::nullopt;
}

unsigned long max_root_of_unity_order(unsigned long d) {
  static thread_local std::map<unsigned long, unsigned long> cache;
  if (auto it = cache.find(d); it != cache.end()) return it->second;
  // phi(n) > n / (e^gamma lnln n + 3 / lnln n) for n >= 3; past n0 that bound exceeds d.
  const double eg = 1.7810724179901979;
  auto lower = [&](double n) {
    double ll = std::log(std::log(n));
    return n / (eg * ll + 3.0 / ll);
  };
  double n0 = std::max(64.0, static_cast<double>(d));
  while (lower(n0) <= static_cast<double>(d)) n0 *= 1.25;
  const std::size_t lim = static_cast<std::size_t>(n0) + 1;
  std::vector<unsigned long> phi(lim + 1);
  for (std::size_t i = 0; i <= lim; ++i) phi[i] = i;
  for (std::size_t p = 2; p <= lim; ++p)
    if (phi[p] == p)
      for (std::size_t q = p; q <= lim; q += p) phi[q] -= phi[q] / p;
  unsigned long best = 1;
  for (std::size_t r = 1; r <= lim; ++r)
    if (phi[r] <= d) best = r;
  cache.emplace(d, best);
  return best;
}

Integer degree_bound(std::span<const UnitSpec> units) {
  std::vector<IntPoly> seen;
  unsigned long total = 0;
  for (const auto& u : units) {
    if (std::find(seen.begin(), seen.end(), u.minpoly) != seen.end()) continue;
    seen.push_back(u.minpoly);
    total += static_cast<unsigned long>(u.minpoly.degree());
  }
  return factorial(total);
}

std::vector<UnitSpec> units_of(const IntPoly& p, unsigned bits, unsigned cap) {
  std::vector<UnitSpec> out;
  for (const auto& [f, e] : factor(p).factors) {
    if (!f.is_monic() || abs(f.coeff(0)) != 1)
      throw std::invalid_argument("factor " + f.to_string() + " is not the minimal polynomial of a unit");
    for (auto& b : isolate_roots(f, bits, cap)) out.push_back({f, std::move(b)});
  }
  return out;
}

namespace {

// log|alpha_j| and arg alpha_j for every unit, each with absolute error below
// 2^err_log2.
struct Numerics {
  unsigned bits = 0;
  std::vector<RootBox> boxes;
  std::vector<BigFloat> log_abs, arg;
  long err_log2 = 0;
};

Numerics compute_numerics(std::span<const UnitSpec> units, const std::vector<RootBox>& start,
                          unsigned bits, unsigned cap) {
  Numerics nu;
  nu.bits = bits;
  const mpfr_prec_t prec = bits + 128;
  const unsigned target = bits + 64;
  long worst = -static_cast<long>(prec) + 4;
  for (std::size_t j = 0; j < units.size(); ++j) {
    RootBox b = refine(start[j], units[j].minpoly, target, std::max(cap, target) + 128);
    BigComplex c = b.center(prec);
    BigFloat mod = c.modulus();
    nu.log_abs.push_back(log(mod));
    if (b.real)
      nu.arg.push_back(b.re > 0 ? BigFloat(prec) : BigFloat::pi(prec));
    else
      nu.arg.push_back(atan2(c.im, c.re));
    // r <= 2^-target max(1,|c|) gives |log| and |arg| errors below 2r/|c|.
    long inv_mag = std::max(0L, -mod.exponent() + 1);
    worst = std::max(worst, 1 - static_cast<long>(target) + inv_mag + 1);
    nu.boxes.push_back(std::move(b));
  }
  nu.err_log2 = worst + 1;
  return nu;
}

Integer l1(const IntVector& m) {
  Integer s = 0;
  for (const auto& x : m) s += abs(x);
  return s;
}

// Closest fraction to x with denominator <= w (continued fractions).
Rational limit_denominator(const Rational& x, unsigned long w) {
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Integer n = x.get_num(), d = x.get_den();
  const Integer W(w);
  while (true) {
    Integer a = floor_div(n, d);
    Integer q2 = q0 + a * q1;
    if (q2 > W) break;
    Integer np0 = p1, nq0 = q1;
    p1 = p0 + a * p1;
    q1 = q2;
    p0 = np0;
    q0 = nq0;
    Integer nn = d;
    d = n - a * d;
    n = nn;
    if (sgn(d) == 0) break;
  }
  if (sgn(q1) == 0) return Rational(floor_div(x.get_num(), x.get_den()));
  Rational best2(p1, q1);
  best2.canonicalize();
  if (best2 == x) return best2;
  Integer k = floor_div(W - q0, q1);
  Rational best1(p0 + k * p1, q0 + k * q1);
  best1.canonicalize();
  Rational e1 = abs(Rational(best1 - x)), e2 = abs(Rational(best2 - x));
  return e2 <= e1 ? best2 : best1;
}

Rational to_rational(const BigFloat& x) {
  mpq_t q;
  mpq_init(q);
  mpfr_get_q(q, x.get());
  Rational r(q);
  mpq_clear(q);
  return r;
}

struct Closeness {
  bool ok = false;
  unsigned long order = 0, numerator = 0;
  long residual_log2 = 0;
};

// Is prod alpha^m within 2^-(bits/2) of a root of unity of order <= w?
Closeness near_root_of_unity(const Numerics& nu, const IntVector& m, unsigned long w) {
  const mpfr_prec_t prec = nu.bits + 128;
  BigFloat L(prec), T(prec);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (sgn(m[j]) == 0) continue;
    BigFloat mj = BigFloat::from_integer(m[j], prec);
    L += mj * nu.log_abs[j];
    T += mj * nu.arg[j];
  }
  BigFloat two_pi = BigFloat::pi(prec) * BigFloat::from_integer(2, prec);
  Rational x = to_rational(T / two_pi);
  Rational f = limit_denominator(x, w);
  Closeness out;
  Integer r = f.get_den();
  Integer k;
  mpz_fdiv_r(k.get_mpz_t(), f.get_num().get_mpz_t(), r.get_mpz_t());
  out.order = r.get_ui();
  out.numerator = k.get_ui();
  BigFloat phi = two_pi * BigFloat::from_integer(f.get_num(), prec) / BigFloat::from_integer(r, prec);
  BigFloat b = T - phi;
  BigFloat ea = exp(L);
  BigFloat one = BigFloat::from_integer(1, prec);
  BigFloat re = ea * cos(b) - one;
  BigFloat im = ea * sin(b);
  BigFloat res = hypot(re, im);
  // Error from the inputs: |m|_1 * 2^err (twice, log and arg), amplified by e^|L| <= 2.
  long input_err = nu.err_log2 + static_cast<long>(mpz_sizeinbase(l1(m).get_mpz_t(), 2)) + 3;
  long res_exp = res.exponent();
  out.residual_log2 = std::max(res_exp, input_err);
  out.ok = out.residual_log2 < -static_cast<long>(nu.bits / 2);
  return out;
}

unsigned long admissible_order(std::span<const UnitSpec> units, const RelationConfig& cfg) {
  Integer d = degree_bound(units);
  unsigned long dd = d > Integer(cfg.degree_bound_cap) ? cfg.degree_bound_cap : d.get_ui();
  return max_root_of_unity_order(dd);
}

// Upper bound on log2(2H), H the largest of |sigma alpha| and 1/|sigma alpha|
// over all conjugates of all units.
double log2_two_house(std::span<const UnitSpec> units, unsigned cap) {
  std::vector<IntPoly> seen;
  double h = 1.0;
  for (const auto& u : units) {
    if (std::find(seen.begin(), seen.end(), u.minpoly) != seen.end()) continue;
    seen.push_back(u.minpoly);
    for (const auto& b : isolate_roots(u.minpoly, kDefaultRootPrecision, cap)) {
      double c = std::hypot(b.re_double(), b.im_double());
      double r = b.radius_double();
      h = std::max(h, (c + r) * (1 + 1e-12));
      if (c - r <= 0) throw CertificationError("root box too wide for a height bound");
      h = std::max(h, (1.0 / (c - r)) * (1 + 1e-12));
    }
  }
  return std::log2(2.0 * h) * (1 + 1e-12);
}

std::vector<RootBox> boxes_of(std::span<const UnitSpec> units) {
  std::vector<RootBox> b;
  for (const auto& u : units) b.push_back(u.box);
  return b;
}

RelationCertificate norm_certify(std::span<const UnitSpec> units, const IntVector& m,
                                 const Closeness& near, const std::vector<RootBox>& start,
                                 const RelationConfig& cfg) {
  RelationCertificate out;
  out.mode = CertMode::NormCertified;
  Integer dbound = degree_bound(units);
  if (dbound > Integer(cfg.degree_bound_cap))
    throw CertificationError("norm-certified mode refuses degree bound " + dbound.get_str() +
                             " above cap " + std::to_string(cfg.degree_bound_cap));
  const unsigned long D = dbound.get_ui();
  const Integer s = l1(m) * near.order;
  // |beta - 1| >= (2H)^-((D-1) * sum |r m_j|) for beta != 1.
  double need = static_cast<double>(D - 1) * s.get_d() * log2_two_house(units, cfg.precision_cap);
  double bits_d = std::ceil(need) + 64;
  if (bits_d > static_cast<double>(cfg.precision_cap))
    throw CertificationError("separation bound needs " + std::to_string(static_cast<long>(bits_d)) +
                             " bits, above the precision cap");
  unsigned bits = static_cast<unsigned>(bits_d);
  Numerics nu = compute_numerics(units, start, bits, cfg.precision_cap);
  IntVector rm(m);
  for (auto& x : rm) x *= near.order;
  Closeness c = near_root_of_unity(nu, rm, 1);
  out.bits = bits;
  // Residual of beta = prod alpha^(r m) against 1, including input error.
  if (c.residual_log2 < -static_cast<long>(std::ceil(need)) && c.order == 1) {
    out.certified = true;
    out.order = near.order;
    out.numerator = near.numerator;
  } else {
    out.reason = "product is not provably a root of unity";
  }
  return out;
}

IntVector permuted(const IntVector& v, const std::vector<std::size_t>& tau) {
  IntVector w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) w[tau[j]] = v[j];
  return w;
}

}  // namespace

RelationCertificate certify_relation(std::span<const UnitSpec> units, const IntVector& m,
                                     unsigned bits, const RelationConfig& cfg) {
  if (m.size() != units.size()) throw std::invalid_argument("relation length does not match units");
  const unsigned long w = admissible_order(units, cfg);
  auto start = boxes_of(units);
  Numerics a = compute_numerics(units, start, bits, cfg.precision_cap);
  Numerics b = compute_numerics(units, a.boxes, 2 * bits, cfg.precision_cap);
  Closeness ca = near_root_of_unity(a, m, w);
  Closeness cb = near_root_of_unity(b, m, w);
  RelationCertificate out;
  out.mode = CertMode::Heuristic;
  out.bits = bits;
  if (!ca.ok || !cb.ok || ca.order != cb.order || ca.numerator != cb.numerator) {
    out.reason = "no root of unity of order <= " + std::to_string(w) + " within 2^-" +
                 std::to_string(bits / 2);
    return out;
  }
  if (cfg.mode == CertMode::NormCertified) return norm_certify(units, m, cb, b.boxes, cfg);
  out.certified = true;
  out.order = cb.order;
  out.numerator = cb.numerator;
  return out;
}

RelationLattice relation_lattice(std::span<const UnitSpec> units, const RelationConfig& cfg) {
  const std::size_t N = units.size();
  if (N == 0) throw std::invalid_argument("relation_lattice needs at least one unit");
  for (const auto& u : units)
    if (!u.minpoly.is_monic() || abs(u.minpoly.coeff(0)) != 1)
      throw std::invalid_argument("relation_lattice: " + u.minpoly.to_string() + " is not a unit polynomial");

  const unsigned long w = admissible_order(units, cfg);

  // Conjugation map and norm vectors, when the unit set is closed under them.
  std::vector<std::size_t> tau(N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      if (!(units[i].minpoly == units[j].minpoly)) continue;
      RootBox mirror = units[i].box;
      mirror.im = -mirror.im;
      if (!disks_disjoint(mirror, units[j].box)) tau[i] = j;
    }
  const bool tau_closed = std::all_of(tau.begin(), tau.end(), [&](std::size_t t) { return t < N; });
  std::vector<IntVector> norm_vectors;
  {
    std::vector<IntPoly> seen;
    for (const auto& u : units) {
      if (std::find(seen.begin(), seen.end(), u.minpoly) != seen.end()) continue;
      seen.push_back(u.minpoly);
      IntVector v(N);
      std::size_t count = 0;
      for (std::size_t j = 0; j < N; ++j)
        if (units[j].minpoly == u.minpoly) {
          v[j] = 1;
          ++count;
        }
      if (count == static_cast<std::size_t>(u.minpoly.degree())) norm_vectors.push_back(v);
    }
  }

  const Integer K = isqrt_ceil(Integer(static_cast<unsigned long>(N))) + (9 * N + 3) / 4 + 1;

  RelationLattice out;
  std::optional<IntLattice> previous;
  unsigned B = std::max(cfg.precision_start, 64U);
  Numerics cur = compute_numerics(units, boxes_of(units), B, cfg.precision_cap);
  while (true) {
    if (2ULL * B > cfg.precision_cap) break;
    Numerics next = compute_numerics(units, cur.boxes, 2 * B, cfg.precision_cap);
    out.rounds.push_back(B);

    // Embedding rows (e_j | C log|a_j| | C arg a_j) and (0 | 0 | C 2 pi), C = 2^B.
    const mpfr_prec_t prec = B + 128;
    IntRows rows;
    std::vector<Integer> arg_int(N);
    for (std::size_t j = 0; j < N; ++j) {
      IntVector r(N + 2);
      r[j] = 1;
      r[N] = cur.log_abs[j].scaled_round(B);
      arg_int[j] = cur.arg[j].scaled_round(B);
      r[N + 1] = arg_int[j];
      rows.push_back(std::move(r));
    }
    IntVector aux(N + 2);
    const Integer two_pi = (BigFloat::pi(prec) * BigFloat::from_integer(2, prec)).scaled_round(B);
    aux[N + 1] = two_pi;
    rows.push_back(aux);

    IntRows reduced = lll(rows, cfg.delta);
    std::vector<std::size_t> cand_idx;
    IntRows candidates;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
      const IntVector& b = reduced[i];
      IntVector m(b.begin(), b.begin() + static_cast<long>(N));
      Integer norm1 = l1(m);
      if (sgn(norm1) == 0) continue;
      Integer acc = b[N + 1];
      for (std::size_t j = 0; j < N; ++j) acc -= m[j] * arg_int[j];
      Integer k = divexact(acc, two_pi);
      if (abs(b[N]) > norm1 + 1 || abs(b[N + 1]) > norm1 + abs(k) + 1) continue;
      Closeness c1 = near_root_of_unity(cur, m, w);
      Closeness c2 = near_root_of_unity(next, m, w);
      if (!c1.ok || !c2.ok) continue;
      cand_idx.push_back(i);
      candidates.push_back(std::move(m));
    }
    IntLattice lat = saturate(IntLattice(N, candidates));

    // Completeness: vectors outside the span of the first rho reduced vectors
    // have norm >= min_{i >= rho} |b*_i|.
    const std::size_t rho = lat.rank();
    bool prefix = cand_idx.size() == rho;
    for (std::size_t i = 0; i < cand_idx.size() && prefix; ++i) prefix = cand_idx[i] == i;
    Integer proven = 0;
    if (prefix) {
      auto gs = gram_schmidt_norms(reduced);
      Rational mn = gs[rho];
      for (std::size_t i = rho; i < gs.size(); ++i) mn = std::min(mn, gs[i]);
      Integer minb = isqrt_floor(floor_div(mn.get_num(), mn.get_den()));
      Integer num = minb - 2;
      proven = sgn(num) > 0 ? Integer(floor_div(num, Integer(w) * K)) : Integer(0);
    }

    bool ok = prefix && proven >= cfg.height_bound;
    for (const auto& v : norm_vectors) ok = ok && lat.contains(v);
    if (ok && tau_closed)
      for (const auto& row : lat.basis()) ok = ok && lat.contains(permuted(row, tau));

    if (ok && previous && *previous == lat) {
      out.lattice = lat;
      out.cert.mode = CertMode::Heuristic;
      out.cert.bits = B;
      out.cert.proven_height = proven;
      break;
    }
    previous = ok ? std::optional<IntLattice>(lat) : std::nullopt;
    B *= 2;
    cur = std::move(next);
  }
  if (out.rounds.empty() || out.cert.bits == 0)
    throw PrecisionError("relation lattice did not stabilise within the precision cap", B);

  if (cfg.mode == CertMode::NormCertified) {
    for (const auto& row : out.lattice.basis()) {
      Closeness c = near_root_of_unity(cur, row, w);
      if (!c.ok) throw CertificationError("relation lost at final precision");
      RelationCertificate rc = norm_certify(units, row, c, cur.boxes, cfg);
      if (!rc.certified) throw CertificationError("relation could not be norm-certified: " + rc.reason);
      out.cert.norm_bits = std::max(out.cert.norm_bits, rc.bits);
    }
    out.cert.mode = CertMode::NormCertified;
  }
  return out;
}

std::size_t multiplicative_rank(std::span<const UnitSpec> units, const RelationConfig& cfg) {
  return units.size() - relation_lattice(units, cfg).lattice.rank();
}

}  // namespace arithmoduli
