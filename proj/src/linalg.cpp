#include "gword/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gword/error.hpp"

namespace gword {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

bool spectrum_before(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square and non-empty");
  }
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "asymmetry " << asym << " exceeds 1e-12 * " << scale;
    throw Error(ErrorCode::AsymmetricInput, os.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(std::size_t n) { return SymMatrix(Matrix::Identity(idx(n), idx(n))); }

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
  Vector v = Eigen::Map<const Vector>(d.data(), idx(d.size()));
  return SymMatrix(Matrix(v.asDiagonal()));
}

PDMatrix spectral_factor(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  // Eigen returns ascending order; store descending.
  const Eigen::Index n = m.matrix().rows();
  Vector vals = solver.eigenvalues().reverse();
  Matrix vecs = solver.eigenvectors().rowwise().reverse();
  const double floor = kPositivityFloor * std::max(1.0, vals(0));
  if (vals(n - 1) <= floor) {
    std::ostringstream os;
    os << "eigenvalue " << vals(n - 1) << " is not above the positivity floor " << floor;
    throw Error(ErrorCode::NotPositiveDefinite, os.str());
  }
  return PDMatrix(m, std::move(vals), std::move(vecs));
}

PDMatrix spectral_factor(const Matrix& m) { return spectral_factor(SymMatrix(m)); }

SymMatrix PDMatrix::power(double t) const {
  if (t == 0.0) return SymMatrix::identity(dim());
  if (t == 1.0) return base_;
  Vector scaled = eigvals_.unaryExpr([t](double x) { return std::pow(x, t); });
  Matrix r = eigvecs_ * scaled.asDiagonal() * eigvecs_.transpose();
  return SymMatrix(Matrix(0.5 * (r + r.transpose())));
}

double PDMatrix::determinant() const { return eigvals_.prod(); }

SymMatrix pd_power(const PDMatrix& m, double t) { return m.power(t); }

double Spectrum::min_real() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : values) r = std::min(r, z.real());
  return r;
}

double Spectrum::max_abs_imag() const {
  double r = 0.0;
  for (const auto& z : values) r = std::max(r, std::abs(z.imag()));
  return r;
}

double Spectrum::max_abs() const {
  double r = 0.0;
  for (const auto& z : values) r = std::max(r, std::abs(z));
  return r;
}

Complex Spectrum::product() const {
  Complex p(1.0, 0.0);
  for (const auto& z : values) p *= z;
  return p;
}

Spectrum make_spectrum(std::vector<Complex> raw) {
  // Pair every value in the upper half plane with the closest one in the
  // lower half plane and replace both by an exact conjugate pair.
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i] || raw[i].imag() <= 0.0) continue;
    std::size_t best = raw.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < raw.size(); ++j) {
      if (j == i || used[j] || raw[j].imag() >= 0.0) continue;
      const double d = std::abs(raw[j] - std::conj(raw[i]));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == raw.size() || best_dist > 1e-8 * (1.0 + std::abs(raw[i]))) {
      throw Error(ErrorCode::ConvergenceFailure, "non-real eigenvalue without conjugate partner");
    }
    const Complex avg = 0.5 * (raw[i] + std::conj(raw[best]));
    raw[i] = avg;
    raw[best] = std::conj(avg);
    used[i] = used[best] = true;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!used[i] && raw[i].imag() < 0.0) {
      throw Error(ErrorCode::ConvergenceFailure, "non-real eigenvalue without conjugate partner");
    }
  }
  std::sort(raw.begin(), raw.end(), spectrum_before);
  return Spectrum{std::move(raw)};
}

Spectrum eigenvalues_general(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "eigenvalues of a non-square matrix");
  if (!m.allFinite()) throw Error(ErrorCode::InvalidArgument, "matrix has non-finite entries");
  if (m.rows() == 1) return Spectrum{{Complex(m(0, 0), 0.0)}};
  Eigen::EigenSolver<Matrix> solver;
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "real Schur iteration did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return make_spectrum(std::vector<Complex>(ev.data(), ev.data() + ev.size()));
}

SymMatrix schur_complement(const SymMatrix& b, std::size_t k) {
  const std::size_t n = b.dim();
  if (k < 1 || k >= n) {
    std::ostringstream os;
    os << "split " << k << " outside [1, " << n - 1 << "]";
    throw Error(ErrorCode::SplitOutOfRange, os.str());
  }
  const Eigen::Index kk = idx(k), rest = idx(n - k);
  const Matrix& m = b.matrix();
  Matrix b11 = m.topLeftCorner(kk, kk);
  Matrix b12 = m.topRightCorner(kk, rest);
  Matrix b22 = m.bottomRightCorner(rest, rest);
  Matrix c = b22 - b12.transpose() * b11.llt().solve(b12);
  return SymMatrix(Matrix(0.5 * (c + c.transpose())));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "max_abs_diff on different shapes");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace gword
