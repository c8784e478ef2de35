// Zassenhaus factorisation over Z: Berlekamp mod p, quadratic Hensel
// lifting, then recombination of lifted factors by subset search.

#include <algorithm>
#include <stdexcept>

#include "arithmoduli/intpoly.hpp"
#include "modp.hpp"

namespace arithmoduli {

namespace {

using ZPoly = std::vector<Integer>;

IntPoly from_modp(const modp::Poly& f) {
  std::vector<Integer> c;
  c.reserve(f.size());
  for (auto x : f) c.emplace_back(static_cast<long>(x));
  return IntPoly(std::move(c));
}

Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntPoly reduce_mod(const IntPoly& f, const Integer& m) {
  std::vector<Integer> c(f.coeffs());
  for (auto& x : c) x = mod_pos(x, m);
  return IntPoly(std::move(c));
}

IntPoly symmetric_mod(const IntPoly& f, const Integer& m) {
  std::vector<Integer> c(f.coeffs());
  Integer half = m / 2;
  for (auto& x : c) {
    x = mod_pos(x, m);
    if (x > half) x -= m;
  }
  return IntPoly(std::move(c));
}

// Division by a monic polynomial modulo m.
void divmod_monic(const IntPoly& a, const IntPoly& b, const Integer& m, IntPoly& q, IntPoly& r) {
  std::vector<Integer> rem(reduce_mod(a, m).coeffs());
  const int db = b.degree();
  if (static_cast<int>(rem.size()) - 1 < db) {
    q = IntPoly{};
    r = IntPoly(std::move(rem));
    return;
  }
  std::vector<Integer> quo(rem.size() - static_cast<std::size_t>(db));
  for (int i = static_cast<int>(rem.size()) - 1 - db; i >= 0; --i) {
    Integer c = mod_pos(rem[static_cast<std::size_t>(i + db)], m);
    quo[static_cast<std::size_t>(i)] = c;
    if (sgn(c) == 0) continue;
    for (int j = 0; j <= db; ++j) {
      Integer& t = rem[static_cast<std::size_t>(i + j)];
      t = mod_pos(t - c * b.coeffs()[static_cast<std::size_t>(j)], m);
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  q = IntPoly(std::move(quo));
  r = IntPoly(std::move(rem));
}

struct Lift {
  IntPoly g, h, s, t;
};

// One quadratic Hensel step from modulus m to m^2.
Lift hensel_step(const IntPoly& f, const Lift& in, const Integer& m) {
  const Integer m2 = m * m;
  IntPoly e = reduce_mod(f - in.g * in.h, m2);
  IntPoly q, r;
  divmod_monic(in.s * e, in.h, m2, q, r);
  Lift out;
  out.g = reduce_mod(in.g + in.t * e + q * in.g, m2);
  out.h = reduce_mod(in.h + r, m2);
  IntPoly b = reduce_mod(in.s * out.g + in.t * out.h - IntPoly::constant(1), m2);
  IntPoly c, d;
  divmod_monic(in.s * b, out.h, m2, c, d);
  out.s = reduce_mod(in.s - d, m2);
  out.t = reduce_mod(in.t - in.t * b - c * out.g, m2);
  return out;
}

// Lifts f = lc * prod(factors) from p to p^(2^steps). f is monic when called
// recursively; factors are monic mod p. Returns monic lifts.
std::vector<IntPoly> multifactor_lift(const IntPoly& f, const std::vector<modp::Poly>& factors,
                                      std::int64_t p, unsigned steps) {
  const Integer P(static_cast<long>(p));
  Integer big = pow_int(P, 1UL << steps);
  if (factors.size() == 1) {
    Integer lc_inv;
    Integer lc = mod_pos(f.leading(), big);
    mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), big.get_mpz_t());
    return {reduce_mod(f * lc_inv, big)};
  }
  const std::int64_t lcp = mod_pos(f.leading(), P).get_si();
  modp::Poly g0 = factors[0];
  for (auto& c : g0) c = (c * lcp) % p;
  modp::Poly h0{1};
  for (std::size_t i = 1; i < factors.size(); ++i) h0 = modp::mul(h0, factors[i], p);
  modp::Poly s0, t0;
  if (!modp::bezout(g0, h0, p, s0, t0)) throw std::logic_error("hensel: factors not coprime");
  Lift cur{from_modp(g0), from_modp(h0), from_modp(s0), from_modp(t0)};
  Integer m = P;
  for (unsigned i = 0; i < steps; ++i) {
    cur = hensel_step(f, cur, m);
    m *= m;
  }
  Integer lc_inv;
  Integer lc = mod_pos(f.leading(), big);
  mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), big.get_mpz_t());
  std::vector<IntPoly> out{reduce_mod(cur.g * lc_inv, big)};
  std::vector<modp::Poly> rest(factors.begin() + 1, factors.end());
  auto tail = multifactor_lift(cur.h, rest, p, steps);
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Integer mignotte_bound(const IntPoly& f) {
  Integer sq = 0;
  for (const auto& c : f.coeffs()) sq += c * c;
  Integer norm2 = isqrt_ceil(sq);
  return pow_int(Integer(2), static_cast<unsigned long>(f.degree())) * norm2 * abs(f.leading());
}

std::int64_t choose_prime(const IntPoly& f) {
  for (std::int64_t p = 3;; p += 2) {
    if (!is_prime(static_cast<unsigned long>(p))) continue;
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    modp::Poly fp = modp::reduce(f, p);
    modp::Poly g = modp::gcd(fp, modp::derivative(fp, p), p);
    if (g.size() == 1) return p;
  }
}

void next_combination(std::vector<std::size_t>& idx, std::size_t n, bool& done) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return;
    }
  }
  done = true;
}

// f primitive, squarefree, positive leading coefficient, degree >= 1.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  if (f.degree() <= 1) return {f};
  const std::int64_t p = choose_prime(f);
  modp::Poly fp = modp::monic(modp::reduce(f, p), p);
  std::vector<modp::Poly> modular = modp::berlekamp(fp, p);
  if (modular.size() == 1) return {f};

  const Integer bound = 2 * mignotte_bound(f) + 1;
  const Integer P(static_cast<long>(p));
  unsigned steps = 0;
  Integer M = P;
  while (M <= bound) {
    M *= M;
    ++steps;
  }
  std::vector<IntPoly> lifted = multifactor_lift(f, modular, p, steps);

  std::vector<IntPoly> result;
  IntPoly rest = f;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    bool done = false;
    while (!done) {
      IntPoly g = IntPoly::constant(rest.leading());
      for (auto i : idx) g = reduce_mod(g * lifted[i], M);
      g = symmetric_mod(g, M).primitive_part();
      if (auto q = divide_exact(rest, g)) {
        result.push_back(g);
        rest = std::move(*q);
        std::vector<IntPoly> remaining;
        for (std::size_t i = 0, j = 0; i < lifted.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
            continue;
          }
          remaining.push_back(lifted[i]);
        }
        lifted = std::move(remaining);
        found = true;
        break;
      }
      next_combination(idx, lifted.size(), done);
    }
    if (!found) ++s;
  }
  if (rest.degree() > 0) result.push_back(rest.primitive_part());
  return result;
}

}  // namespace

Factorization factor(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  Factorization out;
  Integer c = p.content();
  if (sgn(p.leading()) < 0) c = -c;
  out.content = c;
  IntPoly f = divexact(p, c);
  if (f.degree() == 0) return out;
  IntPoly sf = squarefree_part(f);
  for (const auto& g : zassenhaus(sf)) {
    unsigned e = 0;
    while (true) {
      auto q = divide_exact(f, g);
      if (!q) break;
      f = std::move(*q);
      ++e;
    }
    out.factors.emplace_back(g, e);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

}  // namespace arithmoduli
