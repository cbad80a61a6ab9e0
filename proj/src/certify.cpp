#include "gword/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gword/error.hpp"
#include "gword/polynomial.hpp"

namespace gword {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string Certificate::kind_name() const {
  return std::visit(Overloaded{[](const NoCertificate&) { return std::string("None"); },
                               [](const NegativeTrace&) { return std::string("NegativeTrace"); },
                               [](const CoefficientSignViolation&) { return std::string("CoefficientSignViolation"); },
                               [](const SturmCount&) { return std::string("SturmCount"); },
                               [](const PerronPositive&) { return std::string("PerronPositive"); }},
                    kind);
}

Certificate decide_exact(const RationalMatrix& w) {
  Certificate cert;
  cert.product = w;
  const std::size_t n = w.dim();
  const Rational tr = rat_trace(w);
  cert.charpoly = rat_charpoly(w);
  if (tr <= 0) {
    cert.kind = NegativeTrace{tr};
    return cert;
  }
  const RationalPolynomial& p = cert.charpoly;
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational& c = p[n - k];
    const int want = (k % 2 == 0) ? 1 : -1;
    if (sgn(c) != want) {
      cert.kind = CoefficientSignViolation{k, c};
      return cert;
    }
  }
  // Alternating signs with a nonzero constant term rule out roots at zero
  // and on the negative axis; count the positive ones with multiplicity.
  const auto factors = poly::squarefree_factors(p);
  SturmCount sc{0, n, {}};
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (poly::degree(factors[k]) < 1) continue;
    const std::size_t roots = poly::count_positive_roots(factors[k]);
    if (roots > 0) sc.counts.emplace_back(k + 1, roots);
    sc.positive_roots += (k + 1) * roots;
  }
  if (sc.positive_roots < n)
    cert.kind = sc;
  else
    cert.kind = NoCertificate{};
  return cert;
}

Certificate sturm_decide(const ExponentSequence& seq, const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  for (const auto& p : seq.pairs) {
    if (!p.alpha.is_integer() || !p.beta.is_integer())
      throw Error(ErrorCode::NonIntegerExponent, "exact decision needs integer exponents, got " + format_pairs(seq));
  }
  if (seq.residual && !seq.residual->exponent.is_integer())
    throw Error(ErrorCode::NonIntegerExponent, "residual exponent is not an integer");
  if (!rat_is_positive_definite(a)) throw Error(ErrorCode::NotPositiveDefinite, "A fails the exact minor test");
  if (!rat_is_positive_definite(b)) throw Error(ErrorCode::NotPositiveDefinite, "B fails the exact minor test");
  return decide_exact(evaluate_exact(seq, a, b));
}

bool verify_certificate(const Certificate& c) {
  if (!c.product) return false;
  const RationalMatrix& w = *c.product;
  const std::size_t n = w.dim();
  return std::visit(
      Overloaded{
          [&](const NoCertificate&) { return decide_exact(w).is_none(); },
          [&](const NegativeTrace& t) {
            Rational sum = 0;
            for (std::size_t i = 0; i < n; ++i) sum += w(i, i);
            return sum == t.value && sum <= 0;
          },
          [&](const CoefficientSignViolation& v) {
            if (v.index < 1 || v.index > n) return false;
            const RationalPolynomial p = rat_charpoly(w);
            const int want = (v.index % 2 == 0) ? 1 : -1;
            return p[n - v.index] == v.coefficient && sgn(v.coefficient) != want;
          },
          [&](const SturmCount& s) {
            const Certificate again = decide_exact(w);
            const auto* t = std::get_if<SturmCount>(&again.kind);
            return t && t->positive_roots == s.positive_roots && s.positive_roots < n;
          },
          [&](const PerronPositive& p) { return p.lower_bound > 0; }},
      c.kind);
}

Rational rationalize(double x, long max_denominator) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "cannot rationalize a non-finite value");
  if (max_denominator < 1) throw Error(ErrorCode::InvalidArgument, "max_denominator must be positive");
  const Rational exact(x);
  const mpz_class bound(max_denominator);
  if (exact.get_den() <= bound) return exact;

  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class num = exact.get_num(), den = exact.get_den();
  while (true) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const mpz_class q2 = q0 + a * q1;
    if (q2 > bound) break;
    const mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const mpz_class rem = num - a * den;
    num = den;
    den = rem;
  }
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), mpz_class(bound - q0).get_mpz_t(), q1.get_mpz_t());
  const Rational lower(mpz_class(p0 + k * p1), mpz_class(q0 + k * q1));
  const Rational upper(p1, q1);
  Rational dl = lower - exact, du = upper - exact;
  if (abs(du) <= abs(dl)) return Rational(upper);
  return Rational(lower);
}

RationalMatrix rationalize(const Matrix& m, long max_denominator, bool symmetrize) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  const auto n = static_cast<std::size_t>(m.rows());
  RationalMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = rationalize(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), max_denominator);
  if (symmetrize) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Rational avg = (out(i, j) + out(j, i)) / 2;
        out(i, j) = avg;
        out(j, i) = avg;
      }
  }
  return out;
}

CanonicalPair multeig_canonical(const PDMatrix& a, const PDMatrix& b, double rel_gap) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  const auto n = static_cast<Eigen::Index>(a.dim());
  if (n < 2) throw Error(ErrorCode::MultiplicityTooLow, "need n >= 2");
  const auto sizes = eigenvalue_clusters(a, rel_gap);
  const Vector& ev = a.eigvals();

  Matrix v(n, n);
  double rep = 0, other = 0;
  if (sizes.size() == 1) {
    v = Matrix::Identity(n, n);
    rep = other = ev.mean();
  } else if (sizes.size() == 2 && static_cast<Eigen::Index>(sizes[0]) == n - 1) {
    v = a.eigvecs();
    rep = ev.head(n - 1).mean();
    other = ev(n - 1);
  } else if (sizes.size() == 2 && static_cast<Eigen::Index>(sizes[1]) == n - 1) {
    v.leftCols(n - 1) = a.eigvecs().rightCols(n - 1);
    v.col(n - 1) = a.eigvecs().col(0);
    rep = ev.tail(n - 1).mean();
    other = ev(0);
  } else {
    throw Error(ErrorCode::MultiplicityTooLow,
                "A has " + std::to_string(sizes.size()) + " eigenvalue clusters, none of multiplicity n-1");
  }

  const Matrix bp = v.transpose() * b.base().matrix() * v;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (bp.topLeftCorner(n - 1, n - 1) + bp.topLeftCorner(n - 1, n - 1).transpose()));
  Matrix w = Matrix::Identity(n, n);
  w.topLeftCorner(n - 1, n - 1) = es.eigenvectors();
  Matrix u = v * w;

  {
    Eigen::Index at = 0;
    u.col(n - 1).cwiseAbs().maxCoeff(&at);
    if (u(at, n - 1) < 0) u.col(n - 1) *= -1.0;
  }
  const double scale = b.eigvals()(0);
  Matrix b0 = u.transpose() * b.base().matrix() * u;
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    double s = 1.0;
    if (std::abs(b0(i, n - 1)) > 1e-14 * scale) {
      s = b0(i, n - 1) < 0 ? -1.0 : 1.0;
    } else {
      Eigen::Index at = 0;
      u.col(i).cwiseAbs().maxCoeff(&at);
      s = u(at, i) < 0 ? -1.0 : 1.0;
    }
    u.col(i) *= s;
  }

  const Matrix ua = u.transpose() * a.base().matrix() * u;
  const Matrix ub = u.transpose() * b.base().matrix() * u;
  CanonicalPair out;
  out.u = u;
  out.lambda_repeated = rep;
  out.lambda_other = other;
  out.a0 = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n - 1; ++i) out.a0(i, i) = rep;
  out.a0(n - 1, n - 1) = other;
  out.b0 = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    out.b0(i, i) = ub(i, i);
    const double g = std::max(0.0, 0.5 * (ub(i, n - 1) + ub(n - 1, i)));
    out.b0(i, n - 1) = g;
    out.b0(n - 1, i) = g;
  }
  out.b0(n - 1, n - 1) = ub(n - 1, n - 1);
  out.a_residual = max_abs_diff(ua, out.a0);
  out.b_residual = max_abs_diff(ub, out.b0);
  return out;
}

Matrix canonical_word(const ExponentSequence& seq, const CanonicalPair& pair) {
  const Eigen::Index n = pair.a0.rows();
  Matrix out = Matrix::Identity(n, n);
  for (const auto& p : seq.pairs) {
    if (!p.beta.is_integer() || p.beta.sign() < 0)
      throw Error(ErrorCode::InvalidArgument, "canonical words need positive integer betas");
    Vector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::pow(pair.a0(i, i), p.alpha.value());
    out = out * d.asDiagonal();
    for (long k = 0; k < p.beta.as_integer(); ++k) out = out * pair.b0;
  }
  return out;
}

PerronResult perron_positive(const Matrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      if (w(i, j) < 0)
        throw Error(ErrorCode::NegativeEntry,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is negative");
  const Eigen::Index n = w.rows();
  const Spectrum s = eigenvalues_general(w);
  const double rho = s.max_abs();
  if (!(rho > 0.0)) throw Error(ErrorCode::SingularMatrix, "spectral radius is zero");

  Eigen::JacobiSVD<Matrix> svd(w - rho * Matrix::Identity(n, n), Eigen::ComputeFullV);
  Vector x = svd.matrixV().col(n - 1);
  if (x.sum() < 0) x = -x;
  const double wn = w.norm();
  const double residual = (w * x - rho * x).norm() / (wn * x.norm());
  if (residual > 1e-9)
    throw Error(ErrorCode::ConvergenceFailure, "spectral radius is not confirmed as an eigenvalue");

  const Vector xp = x.cwiseMax(0.0);
  const Vector wx = w * xp;
  double lower = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i)
    if (xp(i) > 0) lower = std::min(lower, wx(i) / xp(i));

  std::size_t at_radius = 0;
  for (const auto& z : s.values)
    if (std::abs(z) >= rho * (1.0 - 1e-9)) ++at_radius;
  return {rho, x, residual, lower, at_radius == 1};
}

}  // namespace gword
