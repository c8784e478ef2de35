#include "arithmoduli/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace arithmoduli {

IntMatrix::IntMatrix(std::size_t n) : n_(n), a_(n * n) {}

IntMatrix::IntMatrix(const std::vector<std::vector<Integer>>& rows) : n_(rows.size()), a_() {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("matrix must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw std::invalid_argument("matrix must be square");
    for (long x : r) a_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Integer IntMatrix::trace() const {
  Integer t = 0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (sgn(x) != 0) return false;
  return true;
}

std::vector<std::vector<Integer>> IntMatrix::rows() const {
  std::vector<std::vector<Integer>> r(n_);
  for (std::size_t i = 0; i < n_; ++i) r[i].assign(a_.begin() + static_cast<long>(i * n_), a_.begin() + static_cast<long>((i + 1) * n_));
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
  const std::size_t n = a.n_;
  IntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& x = a(i, k);
      if (sgn(x) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("dimension mismatch");
  IntMatrix c(a);
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix c(a);
  for (auto& x : c.a_) x *= s;
  return c;
}

IntPoly charpoly(const IntMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix m(n);
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    IntMatrix next = a * m;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    m = std::move(next);
    Integer tr = (a * m).trace();
    c[n - k] = -divexact(tr, Integer(static_cast<unsigned long>(k)));
  }
  return IntPoly(std::move(c));
}

Integer determinant(const IntMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> m = a.rows();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && sgn(m[sel][k]) == 0) ++sel;
      if (sel == n) return 0;
      std::swap(m[k], m[sel]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = divexact(t, prev);
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

IntMatrix evaluate(const IntPoly& p, const IntMatrix& a) {
  const std::size_t n = a.dim();
  IntMatrix acc(n);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * a;
    const Integer& c = p.coeffs()[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < n; ++j) acc(j, j) += c;
  }
  return acc;
}

std::string to_string(Gate g) {
  switch (g) {
    case Gate::Unimodular: return "unimodular";
    case Gate::Hyperbolic: return "hyperbolic";
    case Gate::Semisimple: return "semisimple";
  }
  return "?";
}

std::string ValidationOutcome::failure_witness() const {
  std::string out;
  for (const auto& [g, msg] : failures) {
    if (!out.empty()) out += "; ";
    out += to_string(g) + ": " + msg;
  }
  return out;
}

ValidationOutcome validate(const IntMatrix& a) {
  ValidationOutcome v;
  if (a.dim() == 0) throw std::invalid_argument("empty matrix");
  v.charpoly = charpoly(a);
  v.det = determinant(a);
  v.unimodular = abs(v.det) == 1;
  if (!v.unimodular) v.failures.emplace_back(Gate::Unimodular, "det = " + v.det.get_str());

  if (sgn(v.charpoly.coeff(0)) == 0) {
    v.hyperbolic = false;
    v.failures.emplace_back(Gate::Hyperbolic, "eigenvalue 0");
  } else {
    auto bad = circle_root_factors(v.charpoly);
    v.hyperbolic = bad.empty();
    if (!v.hyperbolic) {
      std::string msg = "eigenvalue on the unit circle, root of";
      for (std::size_t i = 0; i < bad.size(); ++i) msg += (i ? ", " : " ") + bad[i].to_string();
      v.failures.emplace_back(Gate::Hyperbolic, msg);
    }
  }

  IntPoly sf = squarefree_part(v.charpoly);
  IntMatrix r = evaluate(sf, a);
  v.semisimple = r.is_zero();
  if (!v.semisimple) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.dim() && os.tellp() == 0; ++i)
      for (std::size_t j = 0; j < r.dim(); ++j)
        if (sgn(r(i, j)) != 0) {
          os << "squarefree charpoly (" << sf.to_string() << ") evaluated at A has entry ("
             << i << "," << j << ") = " << r(i, j).get_str();
          break;
        }
    v.failures.emplace_back(Gate::Semisimple, os.str());
  }
  return v;
}

IntMatrix power(const IntMatrix& a, unsigned long k) {
  IntMatrix result = IntMatrix::identity(a.dim());
  IntMatrix base = a;
  while (k > 0) {
    if (k & 1UL) result = result * base;
    k >>= 1UL;
    if (k > 0) base = base * base;
  }
  return result;
}

IntMatrix companion(const IntPoly& p) {
  if (p.degree() < 1 || !p.is_monic()) throw std::invalid_argument("companion requires a monic polynomial of degree >= 1");
  if (abs(p.coeff(0)) != 1) throw std::invalid_argument("companion requires constant term +-1");
  const std::size_t n = static_cast<std::size_t>(p.degree());
  IntMatrix c(n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -p.coeff(i);
  return c;
}

IntMatrix block_diag(std::span<const IntMatrix> blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.dim();
  IntMatrix m(n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.dim(); ++i)
      for (std::size_t j = 0; j < b.dim(); ++j) m(off + i, off + j) = b(i, j);
    off += b.dim();
  }
  return m;
}

IntMatrix inverse(const IntMatrix& a) {
  // Cayley-Hamilton: A^{-1} = -(A^{n-1} + c_{n-1} A^{n-2} + ... + c_1 I) / c_0.
  IntPoly chi = charpoly(a);
  const Integer& c0 = chi.coeffs()[0];
  if (abs(c0) != 1) throw std::invalid_argument("inverse requires a unimodular matrix");
  std::vector<Integer> q(chi.coeffs().begin() + 1, chi.coeffs().end());
  IntMatrix m = evaluate(IntPoly(std::move(q)), a);
  return Integer(-c0) * m;
}

}  // namespace arithmoduli
