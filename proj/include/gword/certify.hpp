#pragma once

// Exact decisions about the spectrum of integer-exponent words over
// rational matrices, the nonnegative canonical pair for matrices with an
// eigenvalue of multiplicity n-1, and a Perron root check.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gword/linalg.hpp"
#include "gword/projections.hpp"
#include "gword/rational.hpp"
#include "gword/word.hpp"

namespace gword {

/// Trace of the product is <= 0.
struct NegativeTrace {
  Rational value;
};

/// The coefficient of x^{n-k} in the monic characteristic polynomial does
/// not have sign (-1)^k.
struct CoefficientSignViolation {
  std::size_t index;  // k
  Rational coefficient;
};

/// Roots in (0, inf) counted with multiplicity fall short of n.
struct SturmCount {
  std::size_t positive_roots;
  std::size_t degree;
  /// (multiplicity, number of distinct positive roots with it)
  std::vector<std::pair<std::size_t, std::size_t>> counts;
};

struct PerronPositive {
  double lower_bound;
};

struct NoCertificate {};

using CertificateKind = std::variant<NoCertificate, NegativeTrace, CoefficientSignViolation, SturmCount, PerronPositive>;

struct Certificate {
  CertificateKind kind;
  /// Exact word product the certificate speaks about.
  std::optional<RationalMatrix> product;
  RationalPolynomial charpoly;

  bool is_none() const { return std::holds_alternative<NoCertificate>(kind); }
  std::string kind_name() const;
};

/// Decides whether an exact square matrix has all eigenvalues real and
/// positive. None means it does.
Certificate decide_exact(const RationalMatrix& w);

/// Exact word product and decision. Throws NonIntegerExponent,
/// NotPositiveDefinite (exact minors) or DimensionMismatch.
Certificate sturm_decide(const ExponentSequence& seq, const RationalMatrix& a, const RationalMatrix& b);

/// Independent re-check of a certificate against its own product.
bool verify_certificate(const Certificate& c);

/// Entrywise best rational approximation with denominator <= max_denominator.
RationalMatrix rationalize(const Matrix& m, long max_denominator, bool symmetrize = true);
Rational rationalize(double x, long max_denominator);

struct CanonicalPair {
  Matrix a0;
  Matrix b0;
  Matrix u;
  double lambda_repeated;
  double lambda_other;
  double a_residual;  // max |U^T A U - A0|
  double b_residual;  // max |U^T B U - B0|
};

/// Orthogonal U with U^T A U diagonal (repeated eigenvalue first, then the
/// other) and U^T B U an arrowhead whose last column is nonnegative.
/// Throws MultiplicityTooLow.
CanonicalPair multeig_canonical(const PDMatrix& a, const PDMatrix& b, double rel_gap = kClusterGap);

/// Word in a canonical pair with positive integer betas: diagonal powers of
/// A0 and repeated products of B0, so nonnegativity is preserved exactly.
Matrix canonical_word(const ExponentSequence& seq, const CanonicalPair& pair);

struct PerronResult {
  double rho;
  Vector vector;
  double residual;     // |W x - rho x| / (|W| |x|)
  double lower_bound;  // min_i (W x)_i / x_i over positive x_i
  bool dominant;       // every other eigenvalue has modulus < rho
};

/// Spectral radius of an entrywise nonnegative matrix, confirmed as an
/// eigenvalue. Throws NegativeEntry, SingularMatrix or ConvergenceFailure.
PerronResult perron_positive(const Matrix& w);

}  // namespace gword
