#pragma once

// Exact rational matrices over GMP rationals. This is the arithmetic
// backbone of exact certification: word products, inverses, traces and
// characteristic polynomials are computed without any rounding.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "gword/linalg.hpp"

namespace gword {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p" or "p/q" into a canonical rational. Throws SyntaxError.
Rational parse_rational(std::string_view text);
/// Canonical text: "p" for integers, "p/q" otherwise (q > 0, lowest terms).
std::string to_string(const Rational& q);

/// Coefficients in ascending powers of x: c[0] + c[1] x + ... + c[d] x^d.
using RationalPolynomial = std::vector<Rational>;

class RationalMatrix {
 public:
  explicit RationalMatrix(std::size_t n);
  RationalMatrix(std::size_t n, std::vector<Rational> row_major);
  RationalMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static RationalMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const std::vector<Rational>& entries() const { return a_; }

  bool is_symmetric() const;
  Matrix to_double() const;

  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

  RationalMatrix operator+(const RationalMatrix& o) const;
  RationalMatrix operator-(const RationalMatrix& o) const;
  RationalMatrix operator*(const RationalMatrix& o) const;
  RationalMatrix operator*(const Rational& s) const;

 private:
  std::size_t n_;
  std::vector<Rational> a_;
};

RationalMatrix rat_mul(const RationalMatrix& a, const RationalMatrix& b);
/// Exact inverse via fraction-free Gauss-Jordan elimination. Throws SingularMatrix.
RationalMatrix rat_inverse(const RationalMatrix& m);
/// M^k by repeated squaring; negative k goes through rat_inverse.
RationalMatrix rat_int_power(const RationalMatrix& m, long k);
Rational rat_trace(const RationalMatrix& m);
/// Determinant by Bareiss elimination.
Rational rat_determinant(const RationalMatrix& m);
/// det of the leading k x k blocks, k = 1..n.
std::vector<Rational> rat_leading_minors(const RationalMatrix& m);
/// Symmetric with all leading principal minors strictly positive.
bool rat_is_positive_definite(const RationalMatrix& m);
/// Monic det(xI - M), Faddeev-LeVerrier recurrence.
RationalPolynomial rat_charpoly(const RationalMatrix& m);

}  // namespace gword
