#include "arithmoduli/certroots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "arithmoduli/errors.hpp"

namespace arithmoduli {

Rational RootBox::center_re() const {
  Rational q(re, pow_int(Integer(2), scale));
  q.canonicalize();
  return q;
}

Rational RootBox::center_im() const {
  Rational q(im, pow_int(Integer(2), scale));
  q.canonicalize();
  return q;
}

Rational RootBox::radius_q() const {
  Rational q(radius, pow_int(Integer(2), scale));
  q.canonicalize();
  return q;
}

BigComplex RootBox::center(mpfr_prec_t prec) const {
  return {BigFloat::from_dyadic(re, -static_cast<long>(scale), prec),
          BigFloat::from_dyadic(im, -static_cast<long>(scale), prec)};
}

namespace {
double dyadic_double(const Integer& m, unsigned scale) {
  long e = 0;
  double d = mpz_get_d_2exp(&e, m.get_mpz_t());
  return std::ldexp(d, static_cast<int>(e - static_cast<long>(scale)));
}
}  // namespace

double RootBox::re_double() const { return dyadic_double(re, scale); }
double RootBox::im_double() const { return dyadic_double(im, scale); }
double RootBox::radius_double() const { return dyadic_double(radius, scale); }

SerializedBox serialize(const RootBox& box, int digits) {
  auto render = [&](const Integer& m, mpfr_rnd_t rnd) {
    mpfr_prec_t bitsz = static_cast<mpfr_prec_t>(std::max<std::size_t>(mpz_sizeinbase(m.get_mpz_t(), 2), 2));
    BigFloat x = BigFloat::from_dyadic(m, -static_cast<long>(box.scale), bitsz);
    return x.to_string(digits, rnd);
  };
  return {render(box.re, MPFR_RNDN), render(box.im, MPFR_RNDN), render(box.radius, MPFR_RNDU)};
}

std::size_t ConjugationPairing::fixed_points() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < partner.size(); ++i)
    if (partner[i] == i) ++c;
  return c;
}

namespace {

struct Scaled {
  Integer a, b, r;
};

Scaled at_scale(const RootBox& x, unsigned k) {
  const unsigned long s = k - x.scale;
  Scaled o;
  mpz_mul_2exp(o.a.get_mpz_t(), x.re.get_mpz_t(), s);
  mpz_mul_2exp(o.b.get_mpz_t(), x.im.get_mpz_t(), s);
  mpz_mul_2exp(o.r.get_mpz_t(), x.radius.get_mpz_t(), s);
  return o;
}

// Closed disks intersect, one of them optionally mirrored in the real axis.
bool intersect(const RootBox& x, const RootBox& y, bool mirror_x) {
  unsigned k = std::max(x.scale, y.scale);
  Scaled u = at_scale(x, k), v = at_scale(y, k);
  if (mirror_x) u.b = -u.b;
  Integer da = u.a - v.a, db = u.b - v.b, rr = u.r + v.r;
  return da * da + db * db <= rr * rr;
}

// Evaluates 2^(k*deg) p((a + i b) / 2^k) as a Gaussian integer.
void gauss_eval(const IntPoly& p, const Integer& a, const Integer& b, unsigned k, Integer& re,
                Integer& im) {
  const int n = p.degree();
  re = p.leading();
  im = 0;
  for (int j = n - 1; j >= 0; --j) {
    Integer nr = re * a - im * b;
    Integer ni = re * b + im * a;
    Integer c;
    mpz_mul_2exp(c.get_mpz_t(), p.coeffs()[static_cast<std::size_t>(j)].get_mpz_t(),
                 static_cast<unsigned long>(k) * static_cast<unsigned long>(n - j));
    re = nr + c;
    im = ni;
  }
}

// Integer R >= n |p(z)| / |p'(z)| * 2^k for z = (a + i b) / 2^k, so that the
// disk of radius R / 2^k about z contains a root. nullopt if p'(z) = 0.
std::optional<Integer> inclusion_radius(const IntPoly& p, const IntPoly& dp, const Integer& a,
                                        const Integer& b, unsigned k) {
  Integer pr, pi, dr, di;
  gauss_eval(p, a, b, k, pr, pi);
  if (sgn(pr) == 0 && sgn(pi) == 0) return Integer(0);
  gauss_eval(dp, a, b, k, dr, di);
  Integer dn = dr * dr + di * di;
  if (sgn(dn) == 0) return std::nullopt;
  // |p(z)| / |p'(z)| = |P| / (|P'| 2^k), hence R^2 >= n^2 |P|^2 / |P'|^2.
  const unsigned long n = static_cast<unsigned long>(p.degree());
  Integer num = Integer(n * n) * (pr * pr + pi * pi);
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), dn.get_mpz_t());
  return isqrt_ceil(q);
}

using cd = std::complex<double>;

cd horner(const std::vector<double>& c, cd z) {
  cd acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * z + c[i];
  return acc;
}

std::vector<cd> double_aberth(const IntPoly& p) {
  const int n = p.degree();
  std::vector<double> c, dc;
  for (const auto& x : p.coeffs()) c.push_back(x.get_d());
  const IntPoly dp = p.derivative();
  for (const auto& x : dp.coeffs()) dc.push_back(x.get_d());
  double lead = std::abs(c.back());
  double bound = 0.0;
  for (int i = 0; i < n; ++i)
    bound = std::max(bound, std::pow(std::abs(c[static_cast<std::size_t>(i)]) / lead, 1.0 / (n - i)));
  double r0 = std::max(std::pow(std::abs(c[0]) / lead, 1.0 / n), 1e-3);
  r0 = std::min(r0, 2 * bound + 1e-3);
  std::vector<cd> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    z[static_cast<std::size_t>(i)] = std::polar(r0, 2 * std::numbers::pi * i / n + 0.4);
  if (dc.empty()) dc.push_back(0.0);
  for (int it = 0; it < 800; ++it) {
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cd pv = horner(c, z[i]);
      cd dv = horner(dc, z[i]);
      if (pv == cd(0)) continue;
      cd ratio = dv == cd(0) ? cd(1e-8) : pv / dv;
      cd s = 0;
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cd w = ratio / (1.0 - ratio * s);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

BigComplex eval(const std::vector<BigFloat>& c, const BigComplex& z) {
  BigComplex acc(c.back(), BigFloat(z.precision()));
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc = acc * z;
    acc.re += c[i];
  }
  return acc;
}

std::vector<BigFloat> mp_coeffs(const IntPoly& p, mpfr_prec_t prec) {
  std::vector<BigFloat> c;
  for (const auto& x : p.coeffs()) c.push_back(BigFloat::from_integer(x, prec));
  if (c.empty()) c.push_back(BigFloat(prec));
  return c;
}

// Aberth-Ehrlich in MPFR, starting from z (resized to the working precision).
void mp_aberth(const IntPoly& p, std::vector<BigComplex>& z, mpfr_prec_t prec) {
  auto c = mp_coeffs(p, prec);
  auto dc = mp_coeffs(p.derivative(), prec);
  for (auto& zi : z) {
    BigFloat r(prec), i(prec);
    mpfr_set(r.get(), zi.re.get(), MPFR_RNDN);
    mpfr_set(i.get(), zi.im.get(), MPFR_RNDN);
    zi = BigComplex(std::move(r), std::move(i));
  }
  const long tol = -static_cast<long>(prec) + 12;
  const BigFloat one = BigFloat::from_integer(1, prec);
  const int max_iter = 60 + static_cast<int>(prec / 16);
  for (int it = 0; it < max_iter; ++it) {
    bool converged = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      BigComplex pv = eval(c, z[i]);
      if (pv.re.is_zero() && pv.im.is_zero()) continue;
      BigComplex dv = eval(dc, z[i]);
      if (dv.re.is_zero() && dv.im.is_zero()) {
        converged = false;
        continue;
      }
      BigComplex ratio = pv / dv;
      BigComplex s(prec);
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j == i) continue;
        BigComplex d = z[i] - z[j];
        if (d.re.is_zero() && d.im.is_zero()) continue;
        s = s + BigComplex(one, BigFloat(prec)) / d;
      }
      BigComplex den = BigComplex(one, BigFloat(prec)) - ratio * s;
      if (den.re.is_zero() && den.im.is_zero()) continue;
      BigComplex w = ratio / den;
      z[i] = z[i] - w;
      long zexp = std::max(z[i].modulus().exponent(), 1L);
      if (w.modulus().exponent() > tol + zexp) converged = false;
    }
    if (converged) break;
  }
}

std::optional<std::vector<RootBox>> certify(const IntPoly& p, const std::vector<BigComplex>& z,
                                            unsigned k) {
  const IntPoly dp = p.derivative();
  std::vector<RootBox> boxes(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    boxes[i].scale = k;
    boxes[i].re = z[i].re.scaled_round(k);
    boxes[i].im = z[i].im.scaled_round(k);
    auto r = inclusion_radius(p, dp, boxes[i].re, boxes[i].im, k);
    if (!r) return std::nullopt;
    boxes[i].radius = *r;
  }
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      if (!disks_disjoint(boxes[i], boxes[j])) return std::nullopt;

  // Conjugation pairing, then symmetrisation.
  std::vector<std::size_t> partner(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < boxes.size(); ++j)
      if (intersect(boxes[i], boxes[j], true)) {
        partner[i] = j;
        ++hits;
      }
    if (hits != 1) return std::nullopt;
  }
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (partner[partner[i]] != i) return std::nullopt;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    std::size_t j = partner[i];
    if (j == i) {
      boxes[i].im = 0;
      boxes[i].real = true;
    } else if (sgn(boxes[i].im) > 0) {
      boxes[j].re = boxes[i].re;
      boxes[j].im = -boxes[i].im;
      boxes[j].radius = boxes[i].radius;
    } else if (sgn(boxes[i].im) == 0 && sgn(boxes[j].im) == 0) {
      return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      if (!disks_disjoint(boxes[i], boxes[j])) return std::nullopt;

  std::sort(boxes.begin(), boxes.end(), [](const RootBox& a, const RootBox& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  for (std::size_t i = 0; i < boxes.size(); ++i) boxes[i].index = i;
  return boxes;
}

bool within_target(const Integer& a, const Integer& b, const Integer& r, unsigned k, unsigned bits) {
  // r / 2^k <= 2^-bits * max(1, |c|), using max(|a|, |b|) / 2^k <= |c|.
  Integer lhs;
  mpz_mul_2exp(lhs.get_mpz_t(), r.get_mpz_t(), bits);
  Integer rhs;
  mpz_ui_pow_ui(rhs.get_mpz_t(), 2, k);
  rhs = std::max({rhs, Integer(abs(a)), Integer(abs(b))});
  return lhs <= rhs;
}

}  // namespace

bool disks_disjoint(const RootBox& x, const RootBox& y) { return !intersect(x, y, false); }

bool disk_contains(const RootBox& outer, const RootBox& inner) {
  unsigned k = std::max(outer.scale, inner.scale);
  Scaled o = at_scale(outer, k), i = at_scale(inner, k);
  Integer slack = o.r - i.r;
  if (sgn(slack) < 0) return false;
  Integer da = o.a - i.a, db = o.b - i.b;
  return da * da + db * db <= slack * slack;
}

std::vector<RootBox> isolate_roots(const IntPoly& p, unsigned bits, unsigned cap) {
  if (p.degree() < 1) throw std::invalid_argument("isolate_roots requires degree >= 1");
  if (!is_squarefree(p)) throw std::invalid_argument("isolate_roots requires a squarefree polynomial");
  std::vector<cd> start = double_aberth(p);
  std::vector<BigComplex> z;
  for (const auto& s : start)
    z.emplace_back(BigFloat::from_double(s.real(), 64), BigFloat::from_double(s.imag(), 64));
  unsigned prec = std::max(bits, 64U);
  while (true) {
    mp_aberth(p, z, prec);
    if (auto boxes = certify(p, z, prec)) return *boxes;
    if (prec >= cap) break;
    prec = std::min(prec * 2, cap);
  }
  throw PrecisionError("root isolation did not certify within the precision cap", prec);
}

ConjugationPairing conjugation_pairing(std::span<const RootBox> boxes) {
  ConjugationPairing out;
  out.partner.resize(boxes.size());
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < boxes.size(); ++j)
      if (intersect(boxes[i], boxes[j], true)) {
        out.partner[i] = j;
        ++hits;
      }
    if (hits != 1) throw PrecisionError("ambiguous conjugation pairing", boxes.empty() ? 0 : boxes[i].scale);
  }
  for (std::size_t i = 0; i < boxes.size(); ++i)
    if (out.partner[out.partner[i]] != i)
      throw PrecisionError("conjugation pairing is not an involution", boxes[i].scale);
  return out;
}

RootBox refine(const RootBox& box, const IntPoly& p, unsigned bits, unsigned cap) {
  if (sgn(box.radius) == 0) return box;
  if (within_target(box.re, box.im, box.radius, box.scale, bits)) return box;
  const IntPoly dp = p.derivative();
  long mag = std::max(0L, static_cast<long>(std::ceil(std::log2(std::max(1.0, std::abs(box.re_double()) + std::abs(box.im_double()))))));
  unsigned prec = std::max<unsigned>(bits + 32 + static_cast<unsigned>(mag), box.scale);
  const unsigned hard_cap = std::max(cap, bits) + 128;
  while (prec <= hard_cap) {
    auto c = mp_coeffs(p, prec);
    auto dc = mp_coeffs(dp, prec);
    BigComplex z = box.center(prec);
    const long tol = -static_cast<long>(prec) + 8;
    for (int it = 0; it < 200; ++it) {
      BigComplex pv = eval(c, z);
      if (pv.re.is_zero() && pv.im.is_zero()) break;
      BigComplex dv = eval(dc, z);
      if (dv.re.is_zero() && dv.im.is_zero()) break;
      BigComplex step = pv / dv;
      if (box.real) step.im = BigFloat(prec);
      z = z - step;
      long zexp = std::max(z.modulus().exponent(), 1L);
      if (step.modulus().exponent() <= tol + zexp) break;
    }
    RootBox nb = box;
    nb.scale = prec;
    nb.re = z.re.scaled_round(prec);
    nb.im = box.real ? Integer(0) : z.im.scaled_round(prec);
    auto r = inclusion_radius(p, dp, nb.re, nb.im, prec);
    if (r) {
      nb.radius = *r;
      if (disk_contains(box, nb) && within_target(nb.re, nb.im, nb.radius, nb.scale, bits)) return nb;
    }
    prec *= 2;
  }
  // Newton left the old disk or stalled: isolate afresh and pick the root inside.
  unsigned iso = std::min(std::max(bits + 64, 128U), std::max(cap, bits + 64));
  for (auto& nb : isolate_roots(p, iso, std::max(cap, iso))) {
    if (disk_contains(box, nb) && within_target(nb.re, nb.im, nb.radius, nb.scale, bits)) {
      nb.index = box.index;
      return nb;
    }
  }
  throw PrecisionError("root refinement failed within the precision cap", prec);
}

}  // namespace arithmoduli
