#include "gword/constructions.hpp"

#include <cmath>

#include "gword/error.hpp"
#include "gword/reduction.hpp"

namespace gword {

namespace {

struct TwoClusterBasis {
  Matrix v;          // eigenvectors, larger eigenvalue block first
  Vector log_eig;    // log of each eigenvalue
  std::size_t split; // size of the leading block
  double gamma;      // ratio of cluster means, < 1
};

TwoClusterBasis two_cluster_basis(const PDMatrix& a, double rel_gap) {
  const auto sizes = eigenvalue_clusters(a, rel_gap);
  if (sizes.size() != 2) {
    throw Error(ErrorCode::NotTwoEigenvalues,
                "A has " + std::to_string(sizes.size()) + " distinct eigenvalue cluster(s), expected 2");
  }
  const Vector& ev = a.eigvals();
  const auto k = static_cast<Eigen::Index>(sizes[0]);
  const double l1 = ev.head(k).mean();
  const double l2 = ev.tail(ev.size() - k).mean();
  return {a.eigvecs(), ev.array().log().matrix(), sizes[0], l2 / l1};
}

// (D^m B' D^-m)_{ij} * gamma^{shift m}, with B' = V^T B V.
Matrix conjugated(const TwoClusterBasis& t, const Matrix& bp, long m, double log_shift) {
  Matrix out(bp.rows(), bp.cols());
  const double md = static_cast<double>(m);
  for (Eigen::Index i = 0; i < bp.rows(); ++i)
    for (Eigen::Index j = 0; j < bp.cols(); ++j)
      out(i, j) = std::exp(md * (t.log_eig(i) - t.log_eig(j)) + log_shift) * bp(i, j);
  return out;
}

Matrix in_basis(const Matrix& v, const Matrix& m) { return v.transpose() * m * v; }

// B (or B^-1) in A's eigenbasis with rounding-level coupling between the two
// eigenspaces removed. The commutator scaling multiplies those entries by
// gamma^-m, so leaving 1e-16 noise in would turn a commuting pair into garbage.
Matrix in_cluster_basis(const TwoClusterBasis& t, const Matrix& m) {
  Matrix out = in_basis(t.v, m);
  const double floor = kCommuteSnap * out.cwiseAbs().maxCoeff();
  const auto k = static_cast<Eigen::Index>(t.split);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      if ((i < k) != (j < k) && std::abs(out(i, j)) <= floor) out(i, j) = 0.0;
  return out;
}

RationalMatrix complement(const RationalMatrix& m) { return RationalMatrix::identity(m.dim()) - m; }

}  // namespace

std::pair<RationalMatrix, RationalMatrix> hijo_example() {
  return {RationalMatrix{{1, 20, 210}, {20, 402, 4240}, {210, 4240, 44903}},
          RationalMatrix{{36501, -3820, 190}, {-3820, 401, -20}, {190, -20, 1}}};
}

ExponentSequence hijo_sequence() { return ExponentSequence::from_integers({{1, 1}, {2, 2}}); }

ExponentSequence thfour_sequence(long m) {
  if (m == 0) throw Error(ErrorCode::ZeroExponent, "m must be nonzero");
  return canonicalize(to_word(ExponentSequence::from_integers({{m, 1}, {-m, -1}})));
}

EvalResult thfour_word(const PDMatrix& a, const PDMatrix& b, long m, const Tolerances& tol, double rel_gap) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  const TwoClusterBasis t = two_cluster_basis(a, rel_gap);
  const Matrix bp = in_cluster_basis(t, b.base().matrix());
  const Matrix bp_inv = in_cluster_basis(t, b.power(-1.0).matrix());
  const Matrix w = conjugated(t, bp, m, 0.0) * bp_inv;
  EvalResult r;
  r.matrix = t.v * w * t.v.transpose();
  r.spectrum = eigenvalues_general(w);
  r.verdict = verdict_from_spectrum(r.spectrum, tol);
  r.min_real = r.spectrum.min_real();
  r.max_imag = r.spectrum.max_abs_imag();
  return r;
}

Matrix thfour_scaled(const PDMatrix& a, const PDMatrix& b, long m, double rel_gap) {
  const TwoClusterBasis t = two_cluster_basis(a, rel_gap);
  const Matrix bp = in_cluster_basis(t, b.base().matrix());
  const Matrix bp_inv = in_cluster_basis(t, b.power(-1.0).matrix());
  return conjugated(t, bp, m, static_cast<double>(m) * std::log(t.gamma)) * bp_inv;
}

ThfourLimit thfour_limit(const PDMatrix& a, const PDMatrix& b, double rel_gap) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in size");
  const TwoClusterBasis t = two_cluster_basis(a, rel_gap);
  const Matrix bp = in_basis(t.v, b.base().matrix());
  const SymMatrix bs(0.5 * (bp + bp.transpose()));
  const auto k = static_cast<Eigen::Index>(t.split);
  const Eigen::Index r = bp.rows() - k;
  const Matrix c = schur_complement(bs, t.split).matrix();
  const Matrix b11 = bs.matrix().topLeftCorner(k, k);
  const Matrix b12 = bs.matrix().topRightCorner(k, r);
  const Matrix b21 = bs.matrix().bottomLeftCorner(r, k);
  const Matrix b12_cinv = c.llt().solve(b12.transpose()).transpose();
  const Matrix b11_inv = b11.llt().solve(Matrix::Identity(k, k));

  Matrix lim = Matrix::Zero(bp.rows(), bp.cols());
  lim.topLeftCorner(k, k) = -b12_cinv * b21 * b11_inv;
  lim.topRightCorner(k, r) = b12_cinv;
  return {lim, t.gamma, t.split, t.v};
}

std::pair<RationalMatrix, RationalMatrix> epsilon_family_exact(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  RationalMatrix a(2), b(2);
  a(0, 0) = 1;
  a(1, 1) = eps;
  b(0, 0) = Rational(1, 2) + eps;
  b(0, 1) = Rational(1, 2);
  b(1, 0) = Rational(1, 2);
  b(1, 1) = Rational(1, 2);
  return {a, b};
}

bool is_normalized(const ExponentSequence& seq, bool beta_cyclic) {
  const Normalization n = normalize_signs(seq, beta_cyclic);
  return n.alpha_sign > 0 && n.beta_sign > 0;
}

std::pair<PDMatrix, PDMatrix> epsilon_family(const ExponentSequence& seq, double eps, bool beta_cyclic) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!is_normalized(seq, beta_cyclic))
    throw Error(ErrorCode::NotNormalized, "first surviving pair of " + format_pairs(seq) + " is not positive");
  Matrix a(2, 2), b(2, 2);
  a << 1, 0, 0, eps;
  b << 0.5 + eps, 0.5, 0.5, 0.5;
  return {spectral_factor(a), spectral_factor(b)};
}

double scale_factor(const ExponentSequence& seq, double eps) {
  double neg_a = 0.0, neg_b = 0.0;
  for (const auto& p : seq.pairs) {
    if (p.alpha.value() < 0) neg_a += p.alpha.value();
    if (p.beta.value() < 0) neg_b += p.beta.value();
  }
  return std::pow(2.0, neg_b) * std::pow(eps, -(neg_a + neg_b));
}

RationalMatrix projection_p() { return RationalMatrix{{1, 0}, {0, 0}}; }

RationalMatrix projection_q() {
  return RationalMatrix(2, {Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)});
}

RationalMatrix projection_limit(const ExponentSequence& seq, bool beta_cyclic) {
  if (!is_normalized(seq, beta_cyclic))
    throw Error(ErrorCode::NotNormalized, "first surviving pair of " + format_pairs(seq) + " is not positive");
  const RationalMatrix p = projection_p(), q = projection_q();
  const RationalMatrix pc = complement(p), qc = complement(q);
  RationalMatrix out = RationalMatrix::identity(2);
  for (const auto& pr : seq.pairs) {
    out = out * (pr.alpha.sign() > 0 ? p : pc);
    out = out * (pr.beta.sign() > 0 ? q : qc);
  }
  return out;
}

RationalMatrix pq_power(long k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "power must be at least 1");
  mpz_class four_k;
  mpz_ui_pow_ui(four_k.get_mpz_t(), 4, static_cast<unsigned long>(k));
  const Rational unit(1, four_k);
  const Rational lead = (k % 2 == 0) ? unit : Rational(-unit);
  RationalMatrix out(2);
  out(0, 0) = lead;
  out(0, 1) = -lead;
  return out;
}

std::vector<IdentityCheck> projection_identities_check() {
  const RationalMatrix p = projection_p(), q = projection_q();
  const RationalMatrix pc = complement(p), qc = complement(q);
  const Rational half(1, 2);
  std::vector<IdentityCheck> out;
  auto add = [&](std::string name, const RationalMatrix& lhs, const RationalMatrix& rhs) {
    const bool ok = lhs == rhs;
    out.push_back({std::move(name), lhs, rhs, ok});
  };
  add("PQP = P/2", p * q * p, p * half);
  add("P(I-Q)P = P/2", p * qc * p, p * half);
  add("(I-P)Q(I-P) = (I-P)/2", pc * q * pc, pc * half);
  add("(I-P)(I-Q)(I-P) = (I-P)/2", pc * qc * pc, pc * half);
  add("QPQ = Q/2", q * p * q, q * half);
  add("Q(I-P)Q = Q/2", q * pc * q, q * half);
  add("(I-Q)P(I-Q) = (I-Q)/2", qc * p * qc, qc * half);
  add("(I-Q)(I-P)(I-Q) = (I-Q)/2", qc * pc * qc, qc * half);
  return out;
}

}  // namespace gword
