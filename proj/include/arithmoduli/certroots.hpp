#pragma once

#include <span>
#include <string>
#include <vector>

#include "arithmoduli/bigfloat.hpp"
#include "arithmoduli/intpoly.hpp"

namespace arithmoduli {

/// Closed disk with dyadic centre (re + i*im) / 2^scale and radius
/// radius / 2^scale, certified to contain exactly one root of its polynomial.
struct RootBox {
  Integer re, im, radius;
  unsigned scale = 0;
  std::size_t index = 0;
  bool real = false;

  Rational center_re() const;
  Rational center_im() const;
  Rational radius_q() const;
  BigComplex center(mpfr_prec_t prec) const;
  double re_double() const;
  double im_double() const;
  double radius_double() const;
};

struct SerializedBox {
  std::string re, im, radius;
};

/// Decimal rendering; the radius is rounded upward.
SerializedBox serialize(const RootBox& box, int digits = 30);

/// partner[i] is the index of the box containing the conjugate of root i.
struct ConjugationPairing {
  std::vector<std::size_t> partner;
  std::size_t fixed_points() const;
};

constexpr unsigned kDefaultRootPrecision = 128;
constexpr unsigned kDefaultPrecisionCap = 32768;

/// One certified disk per complex root of a squarefree p, sorted by
/// (real part, imaginary part) of the centre. Real roots have im = 0 and
/// conjugate pairs have mirrored centres and equal radii. Working precision
/// starts at `bits` and doubles up to `cap`; throws PrecisionError beyond.
std::vector<RootBox> isolate_roots(const IntPoly& p, unsigned bits = kDefaultRootPrecision,
                                   unsigned cap = kDefaultPrecisionCap);

/// Pairing induced by complex conjugation. Throws PrecisionError if some
/// mirrored disk meets zero or several disks.
ConjugationPairing conjugation_pairing(std::span<const RootBox> boxes);

/// Shrinks a box to radius <= 2^-bits * max(1, |centre|). The new disk lies
/// inside the old one.
RootBox refine(const RootBox& box, const IntPoly& p, unsigned bits,
               unsigned cap = kDefaultPrecisionCap);

bool disks_disjoint(const RootBox& a, const RootBox& b);
/// True if `inner` lies inside `outer`.
bool disk_contains(const RootBox& outer, const RootBox& inner);

}  // namespace arithmoduli
