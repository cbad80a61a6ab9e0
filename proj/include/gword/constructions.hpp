#pragma once

// Explicit constructions: the cited 3x3 pair, the commutator family
// A^m B A^-m B^-1 and its scaled limit, the two-parameter epsilon family and
// the projection products it degenerates to.

#include <string>
#include <utility>
#include <vector>

#include "gword/linalg.hpp"
#include "gword/projections.hpp"
#include "gword/rational.hpp"
#include "gword/word.hpp"

namespace gword {

/// The cited 3x3 integer pair on which A B A^2 B^2 has a non-positive
/// spectrum.
std::pair<RationalMatrix, RationalMatrix> hijo_example();

/// The sequence of A B A^2 B^2.
ExponentSequence hijo_sequence();

/// Canonical sequence of A^m B A^-m B^-1.
ExponentSequence thfour_sequence(long m);

/// Entries of B coupling the two eigenspaces of A that are at most this
/// fraction of max |B| are rounding noise and are treated as zero.
inline constexpr double kCommuteSnap = 1e-12;

/// Evaluates A^m B A^-m B^-1 for A with exactly two distinct eigenvalues.
/// The product is formed in the eigenbasis of A, where the conjugation by
/// A^m only rescales entries, and rotated back. Throws NotTwoEigenvalues.
EvalResult thfour_word(const PDMatrix& a, const PDMatrix& b, long m, const Tolerances& tol = {},
                       double rel_gap = kClusterGap);

struct ThfourLimit {
  /// Limit of gamma^m A^m B A^-m B^-1 in the eigenbasis of A ordered with
  /// the larger eigenvalue first.
  Matrix limit;
  double gamma;       // lambda2 / lambda1
  std::size_t split;  // multiplicity of lambda1
  /// Columns are the sorted eigenvectors of A; the limit is expressed in
  /// this basis.
  Matrix basis;
};

ThfourLimit thfour_limit(const PDMatrix& a, const PDMatrix& b, double rel_gap = kClusterGap);

/// gamma^m A^m B A^-m B^-1 expressed in the same basis as thfour_limit.
Matrix thfour_scaled(const PDMatrix& a, const PDMatrix& b, long m, double rel_gap = kClusterGap);

/// A(eps) = diag(1, eps), B(eps) = [[1/2 + eps, 1/2], [1/2, 1/2]], exact.
std::pair<RationalMatrix, RationalMatrix> epsilon_family_exact(const Rational& eps);

/// True when the first pair surviving the minimal reduction has positive
/// exponents (vacuously true when nothing survives).
bool is_normalized(const ExponentSequence& seq, bool beta_cyclic = false);

/// Numeric A(eps), B(eps). Throws NotNormalized unless is_normalized(seq).
std::pair<PDMatrix, PDMatrix> epsilon_family(const ExponentSequence& seq, double eps, bool beta_cyclic = false);

/// 2^{sum of negative betas} * eps^{-(sum of negative alphas + sum of negative betas)}.
double scale_factor(const ExponentSequence& seq, double eps);

/// The constant projections P = diag(1, 0) and Q = [[1/2, 1/2], [1/2, 1/2]].
RationalMatrix projection_p();
RationalMatrix projection_q();

/// P_1 Q_1 ... P_N Q_N with P_j = P or I - P by the sign of alpha_j and
/// Q_j = Q or I - Q by the sign of beta_j. Throws NotNormalized.
RationalMatrix projection_limit(const ExponentSequence& seq, bool beta_cyclic = false);

/// (P Q (I-P) (I-Q))^k in closed form.
RationalMatrix pq_power(long k);

struct IdentityCheck {
  std::string name;
  RationalMatrix lhs;
  RationalMatrix rhs;
  bool holds;
};

/// Exact compression identities between P, Q and their complements.
std::vector<IdentityCheck> projection_identities_check();

}  // namespace gword
