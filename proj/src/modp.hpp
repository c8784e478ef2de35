#pragma once

// Polynomials over Z/pZ for small primes p (p < 2^31).

#include <cstdint>
#include <vector>

#include "arithmoduli/intpoly.hpp"

namespace arithmoduli::modp {

using Poly = std::vector<std::int64_t>;  // ascending, no trailing zeros

std::int64_t inv(std::int64_t a, std::int64_t p);
void trim(Poly& f);
Poly reduce(const IntPoly& f, std::int64_t p);
Poly sub(const Poly& a, const Poly& b, std::int64_t p);
Poly mul(const Poly& a, const Poly& b, std::int64_t p);
void divmod(const Poly& a, const Poly& b, std::int64_t p, Poly& q, Poly& r);
Poly rem(const Poly& a, const Poly& b, std::int64_t p);
Poly monic(const Poly& f, std::int64_t p);
Poly gcd(Poly a, Poly b, std::int64_t p);
Poly derivative(const Poly& f, std::int64_t p);
Poly powmod(const Poly& base, unsigned long long e, const Poly& mod, std::int64_t p);

/// s*a + t*b = 1 for coprime a, b. Fails (returns false) if gcd is not 1.
bool bezout(const Poly& a, const Poly& b, std::int64_t p, Poly& s, Poly& t);

/// Monic irreducible factors of a monic squarefree polynomial (Berlekamp).
std::vector<Poly> berlekamp(const Poly& f, std::int64_t p);

}  // namespace arithmoduli::modp
