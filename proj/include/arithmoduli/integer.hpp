#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace arithmoduli {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

Integer pow_int(const Integer& base, unsigned long exp);

/// Smallest integer s with s*s >= a (a >= 0).
Integer isqrt_ceil(const Integer& a);

/// Largest integer s with s*s <= a (a >= 0).
Integer isqrt_floor(const Integer& a);

/// Exact quotient; throws std::logic_error if d does not divide a.
Integer divexact(const Integer& a, const Integer& d);

Integer factorial(unsigned long n);

std::optional<long> to_long(const Integer& a);

std::string to_string(const Integer& a);
std::string to_string(const Rational& a);

Integer floor_div(const Integer& a, const Integer& b);

/// Nearest integer to a/b, ties away from zero.
Integer round_div(const Integer& a, const Integer& b);

unsigned long euler_phi(unsigned long n);
bool is_prime(unsigned long n);

/// Squarefree kernel: the squarefree integer d0 with d = d0 * s^2.
long squarefree_kernel(long d);

}  // namespace arithmoduli
