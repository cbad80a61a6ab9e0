#include "doctest.h"

#include <algorithm>
#include <random>

#include "gword/error.hpp"
#include "gword/linalg.hpp"
#include "gword/rational.hpp"
#include "support.hpp"

using namespace gword;
namespace ts = testing_support;

namespace {

Matrix cited_a() {
  Matrix a(3, 3);
  a << 1, 20, 210, 20, 402, 4240, 210, 4240, 44903;
  return a;
}

Matrix cited_b() {
  Matrix b(3, 3);
  b << 36501, -3820, 190, -3820, 401, -20, 190, -20, 1;
  return b;
}

}  // namespace

TEST_CASE("spectral_factor on identity and diagonal inputs") {
  const PDMatrix id = spectral_factor(SymMatrix::identity(3));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(id.eigvals()(i) == doctest::Approx(1.0));

  const PDMatrix d = spectral_factor(SymMatrix::diagonal({4.0, 9.0}));
  CHECK(d.eigvals()(0) == doctest::Approx(9.0));
  CHECK(d.eigvals()(1) == doctest::Approx(4.0));
  // Eigenvectors of a diagonal matrix with distinct entries form a signed permutation.
  const Matrix p = d.eigvecs().cwiseAbs();
  CHECK(p(1, 0) == doctest::Approx(1.0));
  CHECK(p(0, 1) == doctest::Approx(1.0));
  CHECK(p(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("cited 3x3 pair is positive definite, exact minors agree") {
  // Oracle: cofactor-expansion minors, computed independently of Bareiss.
  const auto a = ts::rows_of({{1, 20, 210}, {20, 402, 4240}, {210, 4240, 44903}});
  const auto b = ts::rows_of({{36501, -3820, 190}, {-3820, 401, -20}, {190, -20, 1}});
  std::vector<mpq_class> minors_a, minors_b;
  for (std::size_t k = 1; k <= 3; ++k) {
    minors_a.push_back(ts::laplace_det(ts::leading_block(a, k)));
    minors_b.push_back(ts::laplace_det(ts::leading_block(b, k)));
  }
  CHECK(minors_a == std::vector<mpq_class>{1, 2, 6});
  CHECK(minors_b == std::vector<mpq_class>{36501, 44501, 1});

  const PDMatrix pa = spectral_factor(cited_a());
  const PDMatrix pb = spectral_factor(cited_b());
  CHECK(pa.eigvals().minCoeff() > 0.0);
  CHECK(pb.eigvals().minCoeff() > 0.0);
}

TEST_CASE("spectral_factor error paths") {
  Matrix neg = -Matrix::Identity(3, 3);
  try {
    spectral_factor(neg);
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveDefinite);
  }
  Matrix asym(2, 2);
  asym << 1, 0.5, 0.4, 1;
  try {
    SymMatrix s(asym);
    FAIL("expected AsymmetricInput");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AsymmetricInput);
  }
  Matrix singular(2, 2);
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(spectral_factor(singular), Error);
}

TEST_CASE("spectral factorization invariants") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 6);
    const PDMatrix m = spectral_factor(ts::random_pd(n, rng));
    const double lmax = m.eigvals()(0);
    const Matrix rec = m.eigvecs() * m.eigvals().asDiagonal() * m.eigvecs().transpose();
    CHECK(max_abs_diff(rec, m.base().matrix()) <= 1e-10 * static_cast<double>(n) * lmax);
    const Matrix vtv = m.eigvecs().transpose() * m.eigvecs();
    CHECK(max_abs_diff(vtv, Matrix::Identity(vtv.rows(), vtv.cols())) <= 1e-10 * static_cast<double>(n));
    for (Eigen::Index i = 1; i < m.eigvals().size(); ++i) CHECK(m.eigvals()(i - 1) >= m.eigvals()(i));
  }
}

TEST_CASE("pd_power special exponents") {
  std::mt19937_64 rng(3);
  const PDMatrix m = spectral_factor(ts::random_pd(4, rng));
  CHECK(max_abs_diff(pd_power(m, 0.0).matrix(), Matrix::Identity(4, 4)) <= 1e-12);

  const PDMatrix d = spectral_factor(SymMatrix::diagonal({4.0, 9.0}));
  Matrix expect(2, 2);
  expect << 2, 0, 0, 3;
  CHECK(max_abs_diff(pd_power(d, 0.5).matrix(), expect) <= 1e-12);
}

TEST_CASE("pd_power(M, 2) matches direct multiplication") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const Matrix raw = ts::random_pd(5, rng);
    const PDMatrix m = spectral_factor(raw);
    const double norm = raw.norm();
    CHECK(max_abs_diff(pd_power(m, 2.0).matrix(), raw * raw) <= 1e-10 * norm * norm);
  }
}

TEST_CASE("power composition and inverse properties") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    const PDMatrix m = spectral_factor(ts::random_pd(n, rng, 0.2, 5.0));
    const double s = u(rng), r = u(rng);
    const Matrix lhs = pd_power(spectral_factor(pd_power(m, s)), r).matrix();
    const Matrix rhs = pd_power(m, s * r).matrix();
    CHECK(max_abs_diff(lhs, rhs) <= 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));

    const Matrix prod = pd_power(m, -1.0).matrix() * m.base().matrix();
    CHECK(max_abs_diff(prod, Matrix::Identity(prod.rows(), prod.cols())) <= 1e-9 * m.condition_number());
  }
}

TEST_CASE("eigenvalues_general examples") {
  const Spectrum d = eigenvalues_general(SymMatrix::diagonal({3, 1, 2}).matrix());
  REQUIRE(d.size() == 3);
  CHECK(d.values[0].real() == doctest::Approx(3));
  CHECK(d.values[1].real() == doctest::Approx(2));
  CHECK(d.values[2].real() == doctest::Approx(1));

  Matrix rot(2, 2);
  rot << 0, 1, -1, 0;
  const Spectrum r = eigenvalues_general(rot);
  CHECK(r.values[0].imag() == doctest::Approx(1.0));
  CHECK(r.values[1].imag() == doctest::Approx(-1.0));
  CHECK(r.values[0] == std::conj(r.values[1]));

  // Companion matrix of (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6.
  Matrix comp(3, 3);
  comp << 6, -11, 6, 1, 0, 0, 0, 1, 0;
  const Spectrum c = eigenvalues_general(comp);
  CHECK(c.values[0].real() == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(c.values[1].real() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(c.values[2].real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(c.max_abs_imag() == 0.0);
}

TEST_CASE("schur_complement examples") {
  Matrix bd = Matrix::Zero(4, 4);
  bd.topLeftCorner(2, 2) << 2, 1, 1, 2;
  bd.bottomRightCorner(2, 2) << 3, -1, -1, 5;
  const SymMatrix c = schur_complement(SymMatrix(bd), 2);
  CHECK(max_abs_diff(c.matrix(), bd.bottomRightCorner(2, 2)) == 0.0);

  Matrix small(2, 2);
  small << 2, 1, 1, 1;
  CHECK(schur_complement(SymMatrix(small), 1)(0, 0) == doctest::Approx(0.5));

  // Exact oracle: the Schur complement of the leading 2x2 block of the
  // cited B is det(B) / det(B11) = 1 / 44501.
  const SymMatrix cb = schur_complement(SymMatrix(cited_b()), 2);
  CHECK(cb(0, 0) > 0.0);
  CHECK(cb(0, 0) == doctest::Approx(1.0 / 44501.0).epsilon(1e-8));

  CHECK_THROWS_AS(schur_complement(SymMatrix(small), 0), Error);
  CHECK_THROWS_AS(schur_complement(SymMatrix(small), 2), Error);
}

TEST_CASE("schur complement of a positive definite matrix is positive definite") {
  std::mt19937_64 rng(5150);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
    const std::size_t k = 1 + static_cast<std::size_t>(t) % (n - 1);
    const SymMatrix c = schur_complement(SymMatrix(ts::random_pd(n, rng)), k);
    CHECK_NOTHROW(spectral_factor(c));
  }
}

TEST_CASE("exact characteristic polynomial vanishes on numeric eigenvalues") {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 5);
    std::vector<Rational> e;
    for (std::size_t i = 0; i < n * n; ++i) e.emplace_back(num(rng), den(rng));
    const RationalMatrix m(n, e);
    const RationalPolynomial p = rat_charpoly(m);
    double cnorm = 0;
    for (const auto& c : p) cnorm = std::max(cnorm, std::abs(c.get_d()));
    for (const Complex& z : eigenvalues_general(m.to_double()).values) {
      Complex acc = 0;
      for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k].get_d();
      // Residual relative to the coefficient scale and |z|^n.
      const double scale = cnorm * std::max(1.0, std::pow(std::abs(z), static_cast<double>(n)));
      CHECK(std::abs(acc) <= 1e-6 * scale);
    }
  }
}
