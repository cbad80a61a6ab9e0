#pragma once

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace testing_support {

using Mat = Eigen::MatrixXd;

/// Cofactor expansion along the first row; exponential, fine for n <= 6.
inline mpq_class laplace_det(const std::vector<std::vector<mpq_class>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  mpq_class det = 0;
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<std::vector<mpq_class>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<mpq_class> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != col) row.push_back(a[i][j]);
      minor.push_back(row);
    }
    const mpq_class term = a[0][col] * laplace_det(minor);
    det += (col % 2 == 0) ? term : mpq_class(-term);
  }
  return det;
}

inline std::vector<std::vector<mpq_class>> rows_of(std::initializer_list<std::initializer_list<long>> r) {
  std::vector<std::vector<mpq_class>> out;
  for (const auto& row : r) {
    std::vector<mpq_class> v;
    for (long x : row) v.emplace_back(x);
    out.push_back(v);
  }
  return out;
}

inline std::vector<std::vector<mpq_class>> leading_block(const std::vector<std::vector<mpq_class>>& a, std::size_t k) {
  std::vector<std::vector<mpq_class>> out(k, std::vector<mpq_class>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out[i][j] = a[i][j];
  return out;
}

/// Haar-ish orthogonal matrix via Gram-Schmidt on Gaussian columns.
inline Mat random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Mat q(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    Eigen::VectorXd v(q.rows());
    for (Eigen::Index i = 0; i < q.rows(); ++i) v(i) = g(rng);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
    q.col(j) = v.normalized();
  }
  return q;
}

/// Q diag(lambda) Q^T with lambda log-uniform in [lo, hi].
inline Mat random_pd(std::size_t n, std::mt19937_64& rng, double lo = 0.1, double hi = 10.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  Mat q = random_orthogonal(n, rng);
  Eigen::VectorXd d(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = std::exp(u(rng));
  Mat m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

inline Mat with_spectrum(const std::vector<double>& eig, std::mt19937_64& rng) {
  Mat q = random_orthogonal(eig.size(), rng);
  Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(eig.data(), static_cast<Eigen::Index>(eig.size()));
  Mat m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

/// Nonzero exponent uniform in [-hi, -lo] U [lo, hi].
inline double random_exponent(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::bernoulli_distribution s(0.5);
  return s(rng) ? u(rng) : -u(rng);
}

}  // namespace testing_support
