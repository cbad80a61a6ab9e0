#pragma once

// Dense real linear algebra for the word evaluator: symmetric and positive
// definite wrappers with cached spectral factorizations, fractional powers,
// general eigenvalues and Schur complements.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace gword {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Real symmetric matrix. Construction rejects inputs whose asymmetry exceeds
/// 1e-12 * max|entry| and stores the exactly symmetrized average.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m);

  static SymMatrix identity(std::size_t n);
  static SymMatrix diagonal(const std::vector<double>& d);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix m_;
};

/// Symmetric positive definite matrix together with its spectral
/// factorization base = V diag(eigvals) V^T, eigenvalues descending.
class PDMatrix {
 public:
  const SymMatrix& base() const { return base_; }
  const Vector& eigvals() const { return eigvals_; }
  const Matrix& eigvecs() const { return eigvecs_; }
  std::size_t dim() const { return base_.dim(); }

  /// V diag(eigvals^t) V^T.
  SymMatrix power(double t) const;
  double determinant() const;
  double condition_number() const { return eigvals_(0) / eigvals_(eigvals_.size() - 1); }

 private:
  friend PDMatrix spectral_factor(const SymMatrix& m);
  PDMatrix(SymMatrix base, Vector eigvals, Matrix eigvecs)
      : base_(std::move(base)), eigvals_(std::move(eigvals)), eigvecs_(std::move(eigvecs)) {}

  SymMatrix base_;
  Vector eigvals_;
  Matrix eigvecs_;
};

/// Eigenvalues of a real square matrix, sorted by descending real part with
/// ties broken by descending imaginary part. Non-real values come in exact
/// conjugate pairs.
struct Spectrum {
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
  double min_real() const;
  double max_abs_imag() const;
  double max_abs() const;
  Complex product() const;
};

/// Relative floor below which an eigenvalue is treated as non-positive.
inline constexpr double kPositivityFloor = 1e-12;

PDMatrix spectral_factor(const SymMatrix& m);
PDMatrix spectral_factor(const Matrix& m);

SymMatrix pd_power(const PDMatrix& m, double t);

Spectrum eigenvalues_general(const Matrix& m);

/// Sorts and conjugate-pairs raw eigenvalues (pairing tolerance 1e-8 (1+|z|)).
Spectrum make_spectrum(std::vector<Complex> raw);

/// C = B22 - B21 B11^{-1} B12 for the split after the first k rows/columns.
SymMatrix schur_complement(const SymMatrix& b, std::size_t k);

/// max |a_ij - b_ij|
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace gword
