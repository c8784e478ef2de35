#include "modp.hpp"

#include <algorithm>
#include <stdexcept>

namespace arithmoduli::modp {

namespace {

std::int64_t norm(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

}  // namespace

std::int64_t inv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = norm(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("modular inverse does not exist");
  return norm(t, p);
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly reduce(const IntPoly& f, std::int64_t p) {
  Poly r;
  r.reserve(f.coeffs().size());
  Integer m(static_cast<long>(p)), t;
  for (const auto& c : f.coeffs()) {
    mpz_fdiv_r(t.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    r.push_back(t.get_si());
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::int64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = norm(r[i] - b[i], p);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

void divmod(const Poly& a, const Poly& b, std::int64_t p, Poly& q, Poly& r) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const std::int64_t li = inv(b.back(), p);
  while (r.size() >= b.size()) {
    std::size_t shift = r.size() - b.size();
    std::int64_t c = (r.back() * li) % p;
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = norm(r[shift + j] - c * b[j], p);
    trim(r);
  }
  trim(q);
}

Poly rem(const Poly& a, const Poly& b, std::int64_t p) {
  Poly q, r;
  divmod(a, b, p, q, r);
  return r;
}

Poly monic(const Poly& f, std::int64_t p) {
  if (f.empty()) return f;
  std::int64_t li = inv(f.back(), p);
  Poly r(f);
  for (auto& c : r) c = (c * li) % p;
  return r;
}

Poly gcd(Poly a, Poly b, std::int64_t p) {
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

Poly derivative(const Poly& f, std::int64_t p) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = (f[i] * static_cast<std::int64_t>(i % p)) % p;
  trim(d);
  return d;
}

Poly powmod(const Poly& base, unsigned long long e, const Poly& mod, std::int64_t p) {
  Poly result{1};
  Poly b = rem(base, mod, p);
  while (e > 0) {
    if (e & 1ULL) result = rem(mul(result, b, p), mod, p);
    e >>= 1ULL;
    if (e > 0) b = rem(mul(b, b, p), mod, p);
  }
  return result;
}

bool bezout(const Poly& a, const Poly& b, std::int64_t p, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b;
  Poly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, p, q, r);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) return false;
  std::int64_t li = inv(r0[0], p);
  s = s0;
  t = t0;
  for (auto& c : s) c = (c * li) % p;
  for (auto& c : t) c = (c * li) % p;
  return true;
}

namespace {

// Basis of {v : v M = 0} for an n x n matrix over F_p.
std::vector<std::vector<std::int64_t>> left_kernel(std::vector<std::vector<std::int64_t>> m,
                                                   std::int64_t p) {
  const std::size_t n = m.size();
  // Transpose so that we solve M^T v = 0.
  std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[j][i];
  std::vector<int> where(n, -1);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    std::int64_t li = inv(a[row][col], p);
    for (auto& x : a[row]) x = (x * li) % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a[i][col] == 0) continue;
      std::int64_t f = a[i][col];
      for (std::size_t j = 0; j < n; ++j) a[i][j] = norm(a[i][j] - f * a[row][j], p);
    }
    where[col] = static_cast<int>(row);
    ++row;
  }
  std::vector<std::vector<std::int64_t>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (where[free] != -1) continue;
    std::vector<std::int64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (where[col] == -1) continue;
      v[col] = norm(-a[static_cast<std::size_t>(where[col])][free], p);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool poly_less_modp(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<Poly> berlekamp(const Poly& f, std::int64_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return {f};
  // Row i holds x^(i p) mod f.
  std::vector<std::vector<std::int64_t>> q(n, std::vector<std::int64_t>(n, 0));
  Poly xp = powmod(Poly{0, 1}, static_cast<unsigned long long>(p), f, p);
  Poly cur{1};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cur.size(); ++j) q[i][j] = cur[j];
    q[i][i] = norm(q[i][i] - 1, p);
    cur = rem(mul(cur, xp, p), f, p);
  }
  auto kernel = left_kernel(q, p);
  const std::size_t k = kernel.size();
  std::vector<Poly> factors{f};
  if (k == 1) return factors;
  for (const auto& v : kernel) {
    Poly g(v.begin(), v.end());
    trim(g);
    if (g.size() <= 1) continue;
    std::vector<Poly> next;
    for (const auto& h : factors) {
      if (h.size() <= 2) {
        next.push_back(h);
        continue;
      }
      Poly rest = h;
      for (std::int64_t s = 0; s < p && rest.size() > 2; ++s) {
        Poly gs = g;
        gs[0] = norm(gs[0] - s, p);
        trim(gs);
        Poly d = gcd(rest, gs, p);
        if (d.size() > 1 && d.size() < rest.size()) {
          next.push_back(d);
          Poly qq, rr;
          divmod(rest, d, p, qq, rr);
          rest = monic(qq, p);
        }
      }
      next.push_back(rest);
    }
    factors = std::move(next);
    if (factors.size() == k) break;
  }
  if (factors.size() != k) throw std::logic_error("berlekamp: incomplete splitting");
  for (auto& h : factors) h = monic(h, p);
  std::sort(factors.begin(), factors.end(), poly_less_modp);
  return factors;
}

}  // namespace arithmoduli::modp
