#include "arithmoduli/integer.hpp"

#include <stdexcept>

namespace arithmoduli {

Integer pow_int(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer isqrt_floor(const Integer& a) {
  if (sgn(a) < 0) throw std::domain_error("isqrt of negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

Integer isqrt_ceil(const Integer& a) {
  Integer r = isqrt_floor(a);
  if (r * r < a) ++r;
  return r;
}

Integer divexact(const Integer& a, const Integer& d) {
  if (sgn(d) == 0 || !mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()))
    throw std::logic_error("inexact integer division");
  Integer q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

std::optional<long> to_long(const Integer& a) {
  if (!a.fits_slong_p()) return std::nullopt;
  return a.get_si();
}

std::string to_string(const Integer& a) { return a.get_str(); }
std::string to_string(const Rational& a) { return a.get_str(); }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer round_div(const Integer& a, const Integer& b) {
  if (sgn(b) == 0) throw std::domain_error("division by zero");
  Integer num = 2 * a + (sgn(a) * sgn(b) >= 0 ? Integer(b) : Integer(-b));
  Integer den = 2 * b;
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

unsigned long euler_phi(unsigned long n) {
  unsigned long result = n;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

long squarefree_kernel(long d) {
  if (d == 0) throw std::domain_error("squarefree kernel of zero");
  long sign = d < 0 ? -1 : 1;
  unsigned long m = static_cast<unsigned long>(d < 0 ? -d : d);
  unsigned long out = 1;
  for (unsigned long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e % 2 == 1) out *= p;
  }
  out *= m;
  return sign * static_cast<long>(out);
}

}  // namespace arithmoduli
