#pragma once

// Orthogonal projections, the simultaneous block form of a pair of
// projections, and blockwise evaluation of words in matrices with at most
// two distinct eigenvalues.

#include <cstddef>
#include <vector>

#include "gword/linalg.hpp"
#include "gword/word.hpp"

namespace gword {

/// Symmetric idempotent matrix. Construction checks P^T = P and
/// P^2 = P within 1e-10 * n, then stores the symmetrized input.
class OrthoProjection {
 public:
  explicit OrthoProjection(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t rank() const { return rank_; }

 private:
  Matrix m_;
  std::size_t rank_;
};

struct TwoEigenvalueSplit {
  double lambda1;
  double lambda2;
  OrthoProjection projection;
  /// max |(lambda1 - lambda2) P + lambda2 I - A|
  double residual;
};

inline constexpr double kClusterGap = 1e-6;

/// Eigenvalue clusters of a PD matrix: consecutive (descending) eigenvalues
/// whose relative gap is at most rel_gap share a cluster. Returns the cluster
/// sizes in descending eigenvalue order.
std::vector<std::size_t> eigenvalue_clusters(const PDMatrix& a, double rel_gap = kClusterGap);

/// A = (lambda1 - lambda2) P + lambda2 I. A scalar matrix gives
/// lambda1 = lambda2 and P = I. Throws MoreThanTwoEigenvalues.
TwoEigenvalueSplit two_eigenvalue_split(const PDMatrix& a, double rel_gap = kClusterGap);

enum class BlockKind {
  RangeRange,    // ran P and ran Q
  RangeKernel,   // ran P and ker Q
  KernelRange,   // ker P and ran Q
  KernelKernel,  // ker P and ker Q
  Generic,       // 2x2 block with a principal angle strictly inside (0, pi/2)
};
std::string_view to_string(BlockKind k);

struct ProjectionBlock {
  BlockKind kind;
  std::size_t size;   // 1 or 2
  std::size_t offset; // first column of the block in U
  Matrix p;
  Matrix q;
  double angle;  // 0 or pi/2 for 1x1 blocks
};

struct TwoProjectionForm {
  Matrix u;
  std::vector<ProjectionBlock> blocks;
  double orthogonality_residual;
  double p_residual;
  double q_residual;
};

inline constexpr double kAngleSnap = 1e-10;

TwoProjectionForm halmos_form(const OrthoProjection& p, const OrthoProjection& q);

/// Assembles the block diagonal matrix from per-block entries of the given
/// member (p or q).
Matrix block_diagonal(const TwoProjectionForm& f, Matrix ProjectionBlock::*member);

struct BlockwiseResult {
  std::vector<EvalResult> blocks;
  std::vector<std::size_t> block_sizes;
  Spectrum merged;
  PositivityVerdict verdict;
  TwoEigenvalueSplit split_a;
  TwoEigenvalueSplit split_b;
};

BlockwiseResult blockwise_evaluate(const ExponentSequence& seq, const PDMatrix& a, const PDMatrix& b,
                                   const Tolerances& tol = {}, double rel_gap = kClusterGap);

}  // namespace gword
