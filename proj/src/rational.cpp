#include "gword/rational.hpp"

#include <cctype>
#include <utility>

#include "gword/error.hpp"

namespace gword {

Rational parse_rational(std::string_view text) {
  auto fail = [&](const char* why) {
    throw Error(ErrorCode::SyntaxError, "bad rational '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  const std::size_t num_start = pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos == num_start) fail("expected digits");
  std::string num(text.substr(0, pos));
  if (num[0] == '+') num.erase(0, 1);
  std::string den = "1";
  if (pos < text.size()) {
    if (text[pos] != '/') fail("unexpected character");
    ++pos;
    const std::size_t den_start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == den_start || pos != text.size()) fail("expected digits after '/'");
    den = std::string(text.substr(den_start));
  }
  Integer d(den);
  if (d == 0) fail("zero denominator");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

RationalMatrix::RationalMatrix(std::size_t n) : n_(n), a_(n * n) {
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty rational matrix");
}

RationalMatrix::RationalMatrix(std::size_t n, std::vector<Rational> row_major)
    : n_(n), a_(std::move(row_major)) {
  if (n == 0 || a_.size() != n * n) {
    throw Error(ErrorCode::DimensionMismatch, "rational matrix needs n*n entries");
  }
  for (auto& q : a_) q.canonicalize();
}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : n_(rows.size()) {
  if (n_ == 0) throw Error(ErrorCode::DimensionMismatch, "empty rational matrix");
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorCode::DimensionMismatch, "ragged rational matrix rows");
    for (long v : r) a_.emplace_back(v);
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix RationalMatrix::to_double() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).get_d();
  return m;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "rational sum");
  RationalMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
  if (o.n_ != n_) throw Error(ErrorCode::DimensionMismatch, "rational difference");
  RationalMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const { return rat_mul(*this, o); }

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
  RationalMatrix r(n_);
  for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
  return r;
}

RationalMatrix rat_mul(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw Error(ErrorCode::DimensionMismatch, "rational product");
  RationalMatrix r(n);
  Rational acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  }
  return r;
}

RationalMatrix rat_inverse(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  const std::size_t w = 2 * n;
  // Scale each row by the lcm of its denominators so elimination runs on
  // integers; M = diag(d)^{-1} M', hence M^{-1} = M'^{-1} diag(d).
  std::vector<Integer> row_scale(n, 1);
  std::vector<Integer> a(n * w, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(row_scale[i].get_mpz_t(), row_scale[i].get_mpz_t(),
                                                 m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      a[i * w + j] = m(i, j).get_num() * (row_scale[i] / m(i, j).get_den());
    }
    a[i * w + n + i] = 1;
  }
  Integer prev = 1;
  Integer t;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * w + k] == 0) ++p;
    if (p == n) throw Error(ErrorCode::SingularMatrix, "exact inverse of a singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < w; ++j) std::swap(a[p * w + j], a[k * w + j]);
    }
    const Integer pivot = a[k * w + k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const Integer factor = a[i * w + k];
      for (std::size_t j = 0; j < w; ++j) {
        if (j == k) continue;
        t = pivot * a[i * w + j] - factor * a[k * w + j];
        mpz_divexact(a[i * w + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * w + k] = 0;
    }
    prev = pivot;
  }
  RationalMatrix inv(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& diag = a[i * w + i];
    for (std::size_t j = 0; j < n; ++j) {
      Rational q(a[i * w + n + j] * row_scale[j], diag);
      q.canonicalize();
      inv(i, j) = q;
    }
  }
  return inv;
}

RationalMatrix rat_int_power(const RationalMatrix& m, long k) {
  if (k < 0) return rat_int_power(rat_inverse(m), -k);
  RationalMatrix result = RationalMatrix::identity(m.dim());
  RationalMatrix base = m;
  auto e = static_cast<unsigned long>(k);
  while (e > 0) {
    if (e & 1UL) result = rat_mul(result, base);
    e >>= 1;
    if (e > 0) base = rat_mul(base, base);
  }
  return result;
}

Rational rat_trace(const RationalMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < m.dim(); ++i) t += m(i, i);
  return t;
}

namespace {

// Bareiss on the leading k x k block (k = 0 means the whole matrix).
Rational bareiss_det(const RationalMatrix& m, std::size_t k) {
  const std::size_t n = k;
  // Clear denominators row-wise; det(M) = det(M') / prod(d_i).
  std::vector<Integer> a(n * n);
  Integer scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_num() * (d / m(i, j).get_den());
    scale *= d;
  }
  int sign = 1;
  Integer prev = 1;
  Integer t;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p * n + c] == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        t = a[c * n + c] * a[i * n + j] - a[i * n + c] * a[c * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[c * n + c];
  }
  Rational det(a[n * n - 1] * sign, scale);
  det.canonicalize();
  return det;
}

}  // namespace

Rational rat_determinant(const RationalMatrix& m) { return bareiss_det(m, m.dim()); }

std::vector<Rational> rat_leading_minors(const RationalMatrix& m) {
  std::vector<Rational> minors;
  minors.reserve(m.dim());
  for (std::size_t k = 1; k <= m.dim(); ++k) minors.push_back(bareiss_det(m, k));
  return minors;
}

bool rat_is_positive_definite(const RationalMatrix& m) {
  if (!m.is_symmetric()) return false;
  for (const auto& minor : rat_leading_minors(m))
    if (sgn(minor) <= 0) return false;
  return true;
}

RationalPolynomial rat_charpoly(const RationalMatrix& m) {
  const std::size_t n = m.dim();
  RationalPolynomial c(n + 1);
  c[n] = 1;
  // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k,  M_0 = 0.
  RationalMatrix am(n);
  for (std::size_t k = 1; k <= n; ++k) {
    RationalMatrix mk = am;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    am = rat_mul(m, mk);
    c[n - k] = -rat_trace(am) / Rational(static_cast<long>(k));
  }
  return c;
}

}  // namespace gword
