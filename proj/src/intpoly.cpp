#include "arithmoduli/intpoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace arithmoduli {

IntPoly::IntPoly(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(const Integer& c) { return IntPoly(std::vector<Integer>{c}); }

IntPoly IntPoly::monomial(const Integer& c, std::size_t k) {
  std::vector<Integer> v(k + 1);
  v[k] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::linear_root(const Integer& a) { return IntPoly(std::vector<Integer>{-a, 1}); }

void IntPoly::normalize() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Integer IntPoly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Integer(0); }

const Integer& IntPoly::leading() const {
  if (coeffs_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
  return coeffs_.back();
}

bool IntPoly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  Integer c = content();
  if (sgn(leading()) < 0) c = -c;
  return divexact(*this, c);
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::reciprocal() const {
  std::vector<Integer> r(coeffs_.rbegin(), coeffs_.rend());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::scale_argument(const Integer& s) const {
  std::vector<Integer> r(coeffs_);
  Integer f = 1;
  for (auto& c : r) {
    c *= f;
    f *= s;
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::negated() const {
  std::vector<Integer> r(coeffs_);
  for (auto& c : r) c = -c;
  return IntPoly(std::move(r));
}

Integer IntPoly::operator()(const Integer& x) const {
  Integer acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + Rational(*it);
  acc.canonicalize();
  return acc;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const Integer& c) {
  for (auto& x : coeffs_) x *= c;
  normalize();
  return *this;
}

std::string IntPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& c = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    Integer a = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                      b.coeffs().end());
}

IntPoly pow(const IntPoly& p, unsigned k) {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = p;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

IntPoly divexact(const IntPoly& p, const Integer& c) {
  std::vector<Integer> r(p.coeffs());
  for (auto& x : r) x = arithmoduli::divexact(x, c);
  return IntPoly(std::move(r));
}

std::optional<IntPoly> divide_exact(const IntPoly& p, const IntPoly& d) {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  if (p.is_zero()) return IntPoly{};
  if (p.degree() < d.degree()) return std::nullopt;
  std::vector<Integer> rem(p.coeffs());
  const int dd = d.degree();
  const Integer& lc = d.leading();
  std::vector<Integer> q(static_cast<std::size_t>(p.degree() - dd + 1));
  for (int i = p.degree() - dd; i >= 0; --i) {
    Integer& top = rem[static_cast<std::size_t>(i + dd)];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return std::nullopt;
    Integer c = arithmoduli::divexact(top, lc);
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(i + j)] -= c * d.coeffs()[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(i)] = c;
  }
  for (const auto& r : rem)
    if (sgn(r) != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero polynomial");
  if (a.degree() < b.degree()) return a;
  std::vector<Integer> r(a.coeffs());
  const int db = b.degree();
  const Integer& lc = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    Integer top = r[static_cast<std::size_t>(i)];
    for (auto& x : r) x *= lc;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(i - db + j)] -= top * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return IntPoly(std::move(r));
}

IntPoly poly_gcd(const IntPoly& p, const IntPoly& q) {
  if (p.is_zero()) return q.primitive_part();
  if (q.is_zero()) return p.primitive_part();
  IntPoly a = p.primitive_part();
  IntPoly b = q.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.primitive_part();
  }
  return a.primitive_part();
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.is_zero()) return {};
  if (p.degree() == 0) return IntPoly::constant(1);
  IntPoly g = poly_gcd(p, p.derivative());
  auto q = divide_exact(p.primitive_part(), g);
  if (!q) throw std::logic_error("squarefree_part: gcd does not divide");
  return q->primitive_part();
}

bool is_squarefree(const IntPoly& p) {
  if (p.is_zero()) return false;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

IntPoly Factorization::expand() const {
  IntPoly r = IntPoly::constant(content);
  for (const auto& [f, e] : factors) r *= pow(f, e);
  return r;
}

bool Factorization::irreducible() const {
  return factors.size() == 1 && factors[0].second == 1 && abs(content) == 1;
}

namespace {

// Cohen's subresultant algorithm.
Integer subresultant(IntPoly a, IntPoly b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0) return pow_int(a.leading(), static_cast<unsigned long>(b.degree()));
  if (b.degree() == 0) return pow_int(b.leading(), static_cast<unsigned long>(a.degree()));
  Integer ca = a.content(), cb = b.content();
  Integer t = pow_int(ca, static_cast<unsigned long>(b.degree())) *
              pow_int(cb, static_cast<unsigned long>(a.degree()));
  a = divexact(a, ca);
  b = divexact(b, cb);
  Integer g = 1, h = 1;
  int s = 1;
  if (a.degree() < b.degree()) {
    std::swap(a, b);
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -1;
  }
  while (true) {
    int delta = a.degree() - b.degree();
    if (a.degree() % 2 == 1 && b.degree() % 2 == 1) s = -s;
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    if (r.is_zero()) return 0;
    b = divexact(r, g * pow_int(h, static_cast<unsigned long>(delta)));
    g = a.leading();
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = arithmoduli::divexact(pow_int(g, static_cast<unsigned long>(delta)),
                                pow_int(h, static_cast<unsigned long>(delta - 1)));
    }
    if (b.degree() <= 0) break;
  }
  unsigned long da = static_cast<unsigned long>(a.degree());
  Integer lb = b.leading();
  Integer hh = arithmoduli::divexact(pow_int(lb, da), pow_int(h, da - 1));
  return s * t * hh;
}

}  // namespace

Integer resultant(const IntPoly& p, const IntPoly& q) { return subresultant(p, q); }

IntPoly cyclotomic(unsigned r) {
  if (r == 0) throw std::domain_error("cyclotomic index must be positive");
  static thread_local std::map<unsigned, IntPoly> cache;
  auto it = cache.find(r);
  if (it != cache.end()) return it->second;
  IntPoly f = IntPoly::monomial(1, r) - IntPoly::constant(1);
  for (unsigned d = 1; d < r; ++d) {
    if (r % d != 0) continue;
    auto q = divide_exact(f, cyclotomic(d));
    if (!q) throw std::logic_error("cyclotomic: inexact division");
    f = std::move(*q);
  }
  cache.emplace(r, f);
  return f;
}

namespace {

using RatPoly = std::vector<Rational>;

void trim(RatPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= c * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

int rat_sign_at(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

}  // namespace

unsigned sturm_count(const IntPoly& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("sturm_count requires a < b");
  if (p.is_zero()) throw std::invalid_argument("sturm_count of zero polynomial");
  if (p.degree() == 0) return 0;
  if (!is_squarefree(p)) throw std::invalid_argument("sturm_count requires a squarefree polynomial");
  if (sgn(p(a)) == 0 || sgn(p(b)) == 0)
    throw std::invalid_argument("sturm_count requires nonzero values at the endpoints");
  std::vector<RatPoly> seq;
  auto to_rat = [](const IntPoly& f) {
    RatPoly r;
    for (const auto& c : f.coeffs()) r.emplace_back(c);
    return r;
  };
  seq.push_back(to_rat(p));
  seq.push_back(to_rat(p.derivative()));
  while (seq.back().size() > 1) {
    RatPoly r = rat_rem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  auto variations = [&](const Rational& x) {
    int count = 0, last = 0;
    for (const auto& f : seq) {
      int s = rat_sign_at(f, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  };
  return static_cast<unsigned>(variations(a) - variations(b));
}

namespace {

// For palindromic q of degree 2m, returns T with q(x) = x^m T(x + 1/x).
IntPoly chebyshev_transform(const IntPoly& q) {
  const int m = q.degree() / 2;
  std::vector<IntPoly> d;  // D_k(w) = x^k + x^-k expressed in w
  d.push_back(IntPoly::constant(2));
  d.push_back(IntPoly{0, 1});
  const IntPoly w{0, 1};
  for (int k = 1; k < m; ++k) d.push_back(w * d[static_cast<std::size_t>(k)] - d[static_cast<std::size_t>(k - 1)]);
  IntPoly t = IntPoly::constant(q.coeff(static_cast<std::size_t>(m)));
  for (int k = 1; k <= m; ++k) t += d[static_cast<std::size_t>(k)] * q.coeff(static_cast<std::size_t>(m + k));
  return t;
}

unsigned circle_roots_of_irreducible(const IntPoly& q) {
  if (q.degree() == 1) return (q(Integer(1)) == 0 || q(Integer(-1)) == 0) ? 1U : 0U;
  IntPoly r = q.reciprocal();
  if (!(r == q)) return 0;  // anti-palindromic irreducibles of degree > 1 do not exist
  if (q.degree() % 2 != 0) return 0;
  IntPoly t = chebyshev_transform(q);
  return 2U * sturm_count(t, Rational(-2), Rational(2));
}

std::vector<std::pair<IntPoly, unsigned>> circle_analysis(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("unit circle count of zero polynomial");
  if (sgn(p.coeff(0)) == 0) throw std::invalid_argument("unit circle count requires p(0) != 0");
  std::vector<std::pair<IntPoly, unsigned>> out;
  if (p.degree() == 0) return out;
  IntPoly sf = squarefree_part(p);
  IntPoly g = poly_gcd(sf, sf.reciprocal());
  if (g.degree() <= 0) return out;
  for (const auto& [q, e] : factor(g).factors) {
    unsigned c = circle_roots_of_irreducible(q);
    if (c > 0) out.emplace_back(q, c);
  }
  return out;
}

}  // namespace

unsigned unit_circle_root_count(const IntPoly& p) {
  unsigned total = 0;
  for (const auto& [q, c] : circle_analysis(p)) total += c;
  return total;
}

std::vector<IntPoly> circle_root_factors(const IntPoly& p) {
  std::vector<IntPoly> out;
  for (const auto& [q, c] : circle_analysis(p)) out.push_back(q);
  return out;
}

}  // namespace arithmoduli
