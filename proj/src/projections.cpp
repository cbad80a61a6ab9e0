#include "gword/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gword/error.hpp"

namespace gword {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

/// Orthonormal basis of the orthogonal complement of span(cols) in R^k;
/// cols must already be orthonormal.
Matrix complement_basis(const Matrix& cols, Eigen::Index k) {
  if (cols.cols() == 0) return Matrix::Identity(k, k);
  Eigen::HouseholderQR<Matrix> qr(cols);
  Matrix full = qr.householderQ() * Matrix::Identity(k, k);
  return full.rightCols(k - cols.cols());
}

void split_range_kernel(const Matrix& p, Matrix& range, Matrix& kernel) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  std::vector<Eigen::Index> r, z;
  for (Eigen::Index i = 0; i < p.rows(); ++i) (es.eigenvalues()(i) > 0.5 ? r : z).push_back(i);
  range.resize(p.rows(), static_cast<Eigen::Index>(r.size()));
  kernel.resize(p.rows(), static_cast<Eigen::Index>(z.size()));
  for (std::size_t i = 0; i < r.size(); ++i) range.col(idx(i)) = es.eigenvectors().col(r[i]);
  for (std::size_t i = 0; i < z.size(); ++i) kernel.col(idx(i)) = es.eigenvectors().col(z[i]);
}

Matrix scalar_block(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

OrthoProjection::OrthoProjection(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "projection must be square");
  const double n = static_cast<double>(m.rows());
  if (max_abs_diff(m, m.transpose()) > 1e-10 * n) throw Error(ErrorCode::AsymmetricInput, "projection is not symmetric");
  m_ = 0.5 * (m + m.transpose());
  if (max_abs_diff(m_ * m_, m_) > 1e-10 * n) throw Error(ErrorCode::InvalidArgument, "matrix is not idempotent");
  rank_ = static_cast<std::size_t>(std::lround(m_.trace()));
}

std::vector<std::size_t> eigenvalue_clusters(const PDMatrix& a, double rel_gap) {
  const Vector& ev = a.eigvals();
  std::vector<std::size_t> sizes{1};
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if ((ev(i - 1) - ev(i)) > rel_gap * ev(i - 1))
      sizes.push_back(1);
    else
      ++sizes.back();
  }
  return sizes;
}

TwoEigenvalueSplit two_eigenvalue_split(const PDMatrix& a, double rel_gap) {
  const auto sizes = eigenvalue_clusters(a, rel_gap);
  const Vector& ev = a.eigvals();
  const Eigen::Index n = ev.size();
  if (sizes.size() > 2) {
    std::ostringstream msg;
    msg << sizes.size() << " eigenvalue clusters, diameters";
    Eigen::Index start = 0;
    for (std::size_t s : sizes) {
      msg << ' ' << ev(start) - ev(start + idx(s) - 1);
      start += idx(s);
    }
    throw Error(ErrorCode::MoreThanTwoEigenvalues, msg.str());
  }
  const Eigen::Index k = idx(sizes.front());
  const double l1 = ev.head(k).mean();
  const double l2 = sizes.size() == 1 ? l1 : ev.tail(n - k).mean();
  const Matrix v = a.eigvecs().leftCols(k);
  Matrix p = sizes.size() == 1 ? Matrix::Identity(n, n) : Matrix(v * v.transpose());
  p = 0.5 * (p + p.transpose());
  const Matrix rec = (l1 - l2) * p + l2 * Matrix::Identity(n, n);
  const double res = max_abs_diff(rec, a.base().matrix());
  return {l1, l2, OrthoProjection(p), res};
}

std::string_view to_string(BlockKind k) {
  switch (k) {
    case BlockKind::RangeRange: return "ranP&ranQ";
    case BlockKind::RangeKernel: return "ranP&kerQ";
    case BlockKind::KernelRange: return "kerP&ranQ";
    case BlockKind::KernelKernel: return "kerP&kerQ";
    case BlockKind::Generic: return "generic";
  }
  return "?";
}

TwoProjectionForm halmos_form(const OrthoProjection& pp, const OrthoProjection& qq) {
  if (pp.dim() != qq.dim()) throw Error(ErrorCode::DimensionMismatch, "projections differ in size");
  const Matrix& p = pp.matrix();
  const Matrix& q = qq.matrix();
  const Eigen::Index n = p.rows();
  constexpr double half_pi = std::numbers::pi / 2;

  Matrix ran_p, ker_p;
  split_range_kernel(p, ran_p, ker_p);

  // Principal vectors inside ran P from the compression of Q.
  std::vector<Vector> rr, rk, ker_cols;
  struct Pair {
    double angle;
    Vector e, g;
  };
  std::vector<Pair> generic;
  if (ran_p.cols() > 0) {
    const Matrix compressed = ran_p.transpose() * q * ran_p;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (compressed + compressed.transpose()));
    for (Eigen::Index i = 0; i < compressed.rows(); ++i) {
      const Vector e = ran_p * es.eigenvectors().col(i);
      const Vector qe = q * e;
      const double c = qe.norm();
      const double s = (e - qe).norm();
      const double theta = std::atan2(s, c);
      if (theta < kAngleSnap) {
        rr.push_back(e);
      } else if (theta > half_pi - kAngleSnap) {
        rk.push_back(e);
      } else {
        const Vector g = (qe - p * qe) / (c * s);
        generic.push_back({theta, e, g.normalized()});
      }
    }
  }
  std::stable_sort(generic.begin(), generic.end(), [](const Pair& a, const Pair& b) { return a.angle < b.angle; });

  // The rest of ker P splits into its intersections with ran Q and ker Q.
  std::vector<Vector> kr, kk;
  if (ker_p.cols() > 0) {
    Matrix gcoords(ker_p.cols(), static_cast<Eigen::Index>(generic.size()));
    for (std::size_t i = 0; i < generic.size(); ++i) gcoords.col(idx(i)) = ker_p.transpose() * generic[i].g;
    if (gcoords.cols() > 0) {
      // Re-orthonormalize to absorb rounding before taking the complement.
      Eigen::HouseholderQR<Matrix> qr(gcoords);
      gcoords = (qr.householderQ() * Matrix::Identity(gcoords.rows(), gcoords.rows())).leftCols(gcoords.cols());
    }
    const Matrix rest = ker_p * complement_basis(gcoords, ker_p.cols());
    if (rest.cols() > 0) {
      const Matrix compressed = rest.transpose() * q * rest;
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (compressed + compressed.transpose()));
      for (Eigen::Index i = 0; i < rest.cols(); ++i) {
        const Vector v = rest * es.eigenvectors().col(i);
        (es.eigenvalues()(i) > 0.5 ? kr : kk).push_back(v);
      }
    }
  }

  TwoProjectionForm f;
  f.u.resize(n, n);
  Eigen::Index col = 0;
  auto push_1x1 = [&](const std::vector<Vector>& vs, BlockKind kind, double pv, double qv, double angle) {
    for (const auto& v : vs) {
      f.u.col(col) = v;
      f.blocks.push_back({kind, 1, static_cast<std::size_t>(col), scalar_block(pv), scalar_block(qv), angle});
      ++col;
    }
  };
  push_1x1(rr, BlockKind::RangeRange, 1, 1, 0.0);
  push_1x1(rk, BlockKind::RangeKernel, 1, 0, half_pi);
  push_1x1(kr, BlockKind::KernelRange, 0, 1, half_pi);
  push_1x1(kk, BlockKind::KernelKernel, 0, 0, 0.0);
  for (const auto& g : generic) {
    f.u.col(col) = g.e;
    f.u.col(col + 1) = g.g;
    const double c = std::cos(g.angle), s = std::sin(g.angle);
    Matrix pb(2, 2), qb(2, 2);
    pb << 1, 0, 0, 0;
    qb << c * c, c * s, c * s, s * s;
    f.blocks.push_back({BlockKind::Generic, 2, static_cast<std::size_t>(col), pb, qb, g.angle});
    col += 2;
  }
  if (col != n) throw Error(ErrorCode::ConvergenceFailure, "block decomposition lost dimensions");

  f.orthogonality_residual = max_abs_diff(f.u.transpose() * f.u, Matrix::Identity(n, n));
  f.p_residual = max_abs_diff(f.u.transpose() * p * f.u, block_diagonal(f, &ProjectionBlock::p));
  f.q_residual = max_abs_diff(f.u.transpose() * q * f.u, block_diagonal(f, &ProjectionBlock::q));
  return f;
}

Matrix block_diagonal(const TwoProjectionForm& f, Matrix ProjectionBlock::*member) {
  const Eigen::Index n = f.u.rows();
  Matrix out = Matrix::Zero(n, n);
  for (const auto& b : f.blocks) out.block(idx(b.offset), idx(b.offset), idx(b.size), idx(b.size)) = b.*member;
  return out;
}

BlockwiseResult blockwise_evaluate(const ExponentSequence& seq, const PDMatrix& a, const PDMatrix& b,
                                   const Tolerances& tol, double rel_gap) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  TwoEigenvalueSplit sa = two_eigenvalue_split(a, rel_gap);
  TwoEigenvalueSplit sb = two_eigenvalue_split(b, rel_gap);
  const TwoProjectionForm form = halmos_form(sa.projection, sb.projection);

  std::vector<EvalResult> blocks;
  std::vector<std::size_t> sizes;
  std::vector<Complex> all;
  for (const auto& blk : form.blocks) {
    const Eigen::Index s = idx(blk.size);
    const Matrix ab = (sa.lambda1 - sa.lambda2) * blk.p + sa.lambda2 * Matrix::Identity(s, s);
    const Matrix bb = (sb.lambda1 - sb.lambda2) * blk.q + sb.lambda2 * Matrix::Identity(s, s);
    EvalResult r = evaluate(seq, spectral_factor(ab), spectral_factor(bb), tol);
    all.insert(all.end(), r.spectrum.values.begin(), r.spectrum.values.end());
    sizes.push_back(blk.size);
    blocks.push_back(std::move(r));
  }
  Spectrum merged = make_spectrum(std::move(all));
  PositivityVerdict v = verdict_from_spectrum(merged, tol);
  return {std::move(blocks), std::move(sizes), std::move(merged), std::move(v), std::move(sa), std::move(sb)};
}

}  // namespace gword
