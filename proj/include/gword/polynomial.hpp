#pragma once

// Exact univariate polynomial helpers used by the Sturm certifier.

#include <cstddef>
#include <utility>
#include <vector>

#include "gword/rational.hpp"

namespace gword::poly {

/// Drops trailing zero coefficients; the zero polynomial becomes {}.
void trim(RationalPolynomial& p);
long degree(const RationalPolynomial& p);  // -1 for the zero polynomial
bool is_zero(const RationalPolynomial& p);

RationalPolynomial derivative(const RationalPolynomial& p);
RationalPolynomial make_monic(RationalPolynomial p);

/// Quotient and remainder of a / b (b nonzero).
std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b);
/// Monic gcd; gcd(0, 0) is the zero polynomial.
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

Rational evaluate(const RationalPolynomial& p, const Rational& x);

/// Yun square-free factorization of a monic polynomial p = prod f_k^k.
/// Entry k-1 holds f_k (possibly the constant 1).
std::vector<RationalPolynomial> squarefree_factors(const RationalPolynomial& p);

/// Sturm chain p, p', -rem(...), ... of a square-free polynomial.
std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& p);

/// Number of distinct real roots of a square-free polynomial in (0, +inf),
/// computed exactly as V(0) - V(+inf). Requires p(0) != 0.
std::size_t count_positive_roots(const RationalPolynomial& p);

}  // namespace gword::poly
