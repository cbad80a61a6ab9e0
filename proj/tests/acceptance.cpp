// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are pinned here and not configurable.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "gword/certify.hpp"
#include "gword/cli.hpp"
#include "gword/constructions.hpp"
#include "gword/projections.hpp"
#include "gword/reduction.hpp"
#include "gword/report.hpp"
#include "gword/search.hpp"
#include "support.hpp"

using namespace gword;
namespace ts = testing_support;

namespace {

constexpr double kSpectrumMatch = 1e-7;      // blockwise vs direct
constexpr double kLimitMatch = 1e-6;         // scaled commutator at m = 40 vs limit
constexpr double kHalmosPerDim = 1e-9;       // reconstruction / orthogonality per unit of n
constexpr double kOracleRelative = 1e-6;     // library spectrum vs independent spectrum
constexpr long kMaxCommutatorPower = 64;

struct Criterion {
  int id;
  std::string title;
  std::function<std::string(bool&)> body;  // returns a one-line summary
};

// ---------------------------------------------------------------- oracles

using Q = mpq_class;
using QMat = std::vector<std::vector<Q>>;

QMat qmul(const QMat& a, const QMat& b) {
  const std::size_t n = a.size();
  QMat c(n, std::vector<Q>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

QMat qidentity(std::size_t n) {
  QMat c(n, std::vector<Q>(n, 0));
  for (std::size_t i = 0; i < n; ++i) c[i][i] = 1;
  return c;
}

// Inverse by the adjugate: cofactors from Laplace determinants.
QMat qinverse(const QMat& a) {
  const std::size_t n = a.size();
  const Q det = ts::laplace_det(a);
  QMat inv(n, std::vector<Q>(n));
  if (n == 1) {
    inv[0][0] = 1 / det;
    return inv;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QMat minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<Q> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(row);
      }
      const Q cof = ts::laplace_det(minor);
      inv[i][j] = ((i + j) % 2 == 0 ? cof : Q(-cof)) / det;
    }
  return inv;
}

QMat qpow(const QMat& a, long k) {
  QMat base = k < 0 ? qinverse(a) : a, out = qidentity(a.size());
  for (long i = 0; i < std::labs(k); ++i) out = qmul(out, base);
  return out;
}

Q qtrace(const QMat& a) {
  Q t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

QMat qrows(const RationalMatrix& m) {
  QMat r(m.dim(), std::vector<Q>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = m(i, j);
  return r;
}

QMat qword(const std::vector<std::pair<long, long>>& seq, const QMat& a, const QMat& b) {
  QMat w = qidentity(a.size());
  for (const auto& [al, be] : seq) w = qmul(qmul(w, qpow(a, al)), qpow(b, be));
  return w;
}

// Spectrum of a product of real powers, computed with Eigen's symmetric and
// general eigensolvers only.
Eigen::MatrixXd sym_power(const Eigen::MatrixXd& m, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd d = es.eigenvalues().array().pow(t);
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

std::vector<std::complex<double>> oracle_spectrum(const std::vector<std::pair<double, double>>& seq,
                                                  const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  for (const auto& [al, be] : seq) w = w * sym_power(a, al) * sym_power(b, be);
  Eigen::EigenSolver<Eigen::MatrixXd> es(w, false);
  std::vector<std::complex<double>> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

// Optimal-matching-free comparison: sort both by (real, imag).
double spectrum_gap(std::vector<std::complex<double>> x, std::vector<std::complex<double>> y) {
  auto key = [](std::complex<double> p, std::complex<double> q) {
    return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
  };
  std::sort(x.begin(), x.end(), key);
  std::sort(y.begin(), y.end(), key);
  double gap = 0, scale = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    gap = std::max(gap, std::abs(x[i] - y[i]));
    scale = std::max(scale, std::abs(y[i]));
  }
  return gap / scale;
}

Eigen::MatrixXd unit_det(const Eigen::MatrixXd& m) {
  return m * std::pow(m.determinant(), -1.0 / static_cast<double>(m.rows()));
}

std::vector<std::pair<double, double>> real_pairs(std::mt19937_64& rng, std::size_t n, int beta_sign) {
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  std::vector<std::pair<double, double>> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double b = beta_sign == 0 ? ts::random_exponent(rng, 0.2, 2.0) : beta_sign * mag(rng);
    p.emplace_back(ts::random_exponent(rng, 0.2, 2.0), b);
  }
  return p;
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// ------------------------------------------------------------- criteria

std::string c1_cited_pair(bool& ok) {
  const auto [a, b] = hijo_example();
  const QMat ea = ts::rows_of({{1, 20, 210}, {20, 402, 4240}, {210, 4240, 44903}});
  const QMat eb = ts::rows_of({{36501, -3820, 190}, {-3820, 401, -20}, {190, -20, 1}});
  ok = qrows(a) == ea && qrows(b) == eb;
  std::vector<Q> ma, mb;
  for (std::size_t k = 1; k <= 3; ++k) {
    ma.push_back(ts::laplace_det(ts::leading_block(ea, k)));
    mb.push_back(ts::laplace_det(ts::leading_block(eb, k)));
  }
  ok = ok && ma == std::vector<Q>{1, 2, 6} && mb == std::vector<Q>{36501, 44501, 1};
  ok = ok && rat_is_positive_definite(a) && rat_is_positive_definite(b);
  const Certificate c = sturm_decide(ExponentSequence::from_integers({{1, 1}, {2, 2}}), a, b);
  ok = ok && !c.is_none() && verify_certificate(c);
  const Q tr = qtrace(qword({{1, 1}, {2, 2}}, ea, eb));
  ok = ok && tr == -3164;
  const EvalResult e = evaluate(hijo_sequence(), spectral_factor(a.to_double()), spectral_factor(b.to_double()));
  ok = ok && e.verdict.verdict == Verdict::NotAllPositive;
  return "minors A " + ma[0].get_str() + "," + ma[1].get_str() + "," + ma[2].get_str() + "; B " + mb[0].get_str() +
         "," + mb[1].get_str() + "," + mb[2].get_str() + "; certificate " + c.kind_name() + "; oracle trace " +
         tr.get_str();
}

std::string c2_class1(bool& ok) {
  std::mt19937_64 rng(20201);
  std::size_t pos = 0, inconclusive = 0, mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 5);
    const Eigen::MatrixXd a = ts::random_pd(n, rng), b = ts::random_pd(n, rng);
    const auto p = real_pairs(rng, 1, 0);
    const EvalResult e = evaluate(ExponentSequence::from_reals(p), spectral_factor(a), spectral_factor(b));
    pos += e.verdict.verdict == Verdict::AllPositive;
    inconclusive += e.verdict.verdict == Verdict::Inconclusive;
    mismatch += spectrum_gap(e.spectrum.values, oracle_spectrum(p, a, b)) > kOracleRelative;
  }
  ok = pos == 1000 && inconclusive == 0 && mismatch == 0;
  return std::to_string(pos) + "/1000 AllPositive, " + std::to_string(inconclusive) + " Inconclusive, " +
         std::to_string(mismatch) + " oracle mismatches";
}

std::string c3_two_by_two(bool& ok) {
  std::mt19937_64 rng(20202);
  std::bernoulli_distribution coin(0.5);
  std::size_t pos = 0, mismatch = 0;
  for (int t = 0; t < 1000; ++t) {
    // Rescaling A or B does not change the verdict; unit determinant keeps
    // the product clear of the absolute tolerance band.
    const Eigen::MatrixXd a = unit_det(ts::random_pd(2, rng)), b = unit_det(ts::random_pd(2, rng));
    const auto p = real_pairs(rng, 1 + static_cast<std::size_t>(t % 4), coin(rng) ? 1 : -1);
    const EvalResult e = evaluate(ExponentSequence::from_reals(p), spectral_factor(a), spectral_factor(b));
    pos += e.verdict.verdict == Verdict::AllPositive;
    mismatch += spectrum_gap(e.spectrum.values, oracle_spectrum(p, a, b)) > kOracleRelative;
  }
  // Exact trials: tr > 0, det > 0 and tr^2 >= 4 det decide a 2x2 spectrum.
  std::uniform_int_distribution<long> num(-9, 9), diag(1, 9), den(1, 4), mag(1, 3);
  std::size_t none = 0, oracle_agree = 0;
  for (int t = 0; t < 100; ++t) {
    auto pd = [&] {
      while (true) {
        const Q x(diag(rng), den(rng)), z(diag(rng), den(rng)), y(num(rng), den(rng));
        if (x * z > y * y) {
          QMat m{{x, y}, {y, z}};
          for (auto& r : m)
            for (auto& v : r) v.canonicalize();
          return m;
        }
      }
    };
    const QMat qa = pd(), qb = pd();
    std::vector<std::pair<long, long>> seq;
    for (int i = 0; i < 1 + t % 4; ++i) seq.emplace_back((coin(rng) ? 1 : -1) * mag(rng), mag(rng));
    auto to_rm = [](const QMat& m) { return RationalMatrix(2, {m[0][0], m[0][1], m[1][0], m[1][1]}); };
    const Certificate c = sturm_decide(ExponentSequence::from_integers(seq), to_rm(qa), to_rm(qb));
    const QMat w = qword(seq, qa, qb);
    const Q tr = qtrace(w), det = ts::laplace_det(w);
    const bool oracle_positive = tr > 0 && det > 0 && tr * tr >= 4 * det;
    none += c.is_none();
    oracle_agree += c.is_none() == oracle_positive;
  }
  ok = pos == 1000 && mismatch == 0 && none == 100 && oracle_agree == 100;
  return std::to_string(pos) + "/1000 AllPositive, " + std::to_string(mismatch) + " oracle mismatches; exact " +
         std::to_string(none) + "/100 None, oracle agrees " + std::to_string(oracle_agree) + "/100";
}

std::string c4_repeated_eigenvalue(bool& ok) {
  std::mt19937_64 rng(20203);
  std::uniform_real_distribution<double> lam(0.2, 5.0);
  std::bernoulli_distribution coin(0.5);
  std::size_t pos = 0, mismatch = 0;
  for (int t = 0; t < 300; ++t) {
    const double d = lam(rng);
    double o = lam(rng);
    while (std::abs(o - d) < 0.1) o = lam(rng);
    const Eigen::MatrixXd a = ts::with_spectrum({d, d, o}, rng), b = ts::random_pd(3, rng, 0.2, 5.0);
    const auto p = real_pairs(rng, 1 + static_cast<std::size_t>(t % 4), coin(rng) ? 1 : -1);
    const EvalResult e = evaluate(ExponentSequence::from_reals(p), spectral_factor(a), spectral_factor(b));
    pos += e.verdict.verdict == Verdict::AllPositive;
    mismatch += spectrum_gap(e.spectrum.values, oracle_spectrum(p, a, b)) > kOracleRelative;
  }
  ok = pos == 300 && mismatch == 0;
  return std::to_string(pos) + "/300 AllPositive, " + std::to_string(mismatch) + " oracle mismatches";
}

std::string c5_two_eigenvalue(bool& ok) {
  std::mt19937_64 rng(20204);
  std::uniform_real_distribution<double> lam(0.3, 3.0);
  std::bernoulli_distribution coin(0.5);
  std::size_t pos = 0;
  double worst = 0;
  auto two = [&](std::size_t n) {
    double l1 = lam(rng), l2 = lam(rng);
    while (std::abs(l1 - l2) < 0.2) l2 = lam(rng);
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
    std::vector<double> s(n, l2);
    std::fill(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), l1);
    return ts::with_spectrum(s, rng);
  };
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 3 + static_cast<std::size_t>(t % 6);
    const Eigen::MatrixXd a = two(n), b = two(n);
    const auto p = real_pairs(rng, 1 + static_cast<std::size_t>(t % 4), coin(rng) ? 1 : -1);
    const BlockwiseResult r = blockwise_evaluate(ExponentSequence::from_reals(p), spectral_factor(a), spectral_factor(b));
    pos += r.verdict.verdict == Verdict::AllPositive;
    auto x = r.merged.values;
    auto y = oracle_spectrum(p, a, b);
    auto key = [](std::complex<double> u, std::complex<double> v) { return u.real() < v.real(); };
    std::sort(x.begin(), x.end(), key);
    std::sort(y.begin(), y.end(), key);
    double dev = x.size() == y.size() ? 0.0 : 1e300;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) dev = std::max(dev, std::abs(x[i] - y[i]));
    worst = std::max(worst, dev);
  }
  ok = pos == 500 && worst <= kSpectrumMatch;
  return std::to_string(pos) + "/500 AllPositive, max |merged - direct| " + fmt("%.3g", worst);
}

std::string c6_commutator(bool& ok) {
  std::mt19937_64 rng(20205);
  std::uniform_real_distribution<double> lam(1.0, 4.0), ratio(0.1, 0.5);
  std::size_t failing = 0;
  double worst_limit = 0;
  long max_first = 0;
  for (int t = 0; t < 50; ++t) {
    const double l1 = lam(rng), l2 = l1 * ratio(rng);
    const Eigen::MatrixXd r = ts::random_orthogonal(3, rng);
    Eigen::Vector3d d(l1, l1, l2);
    Eigen::MatrixXd am = r * d.asDiagonal() * r.transpose();
    am = 0.5 * (am + am.transpose());
    Eigen::MatrixXd b = ts::random_pd(3, rng, 0.5, 2.0);
    if (t >= 25) {
      // Nearly commuting: block diagonal in A's eigenspaces plus a weak
      // coupling, so failure only shows up at larger m.
      Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(3, 3);
      inner.topLeftCorner(2, 2) = ts::random_pd(2, rng, 0.5, 2.0);
      inner(2, 2) = lam(rng);
      const double delta = std::pow(10.0, -2.0 - (t % 3));
      inner(0, 2) = inner(2, 0) = delta;
      b = r * inner * r.transpose();
      b = 0.5 * (b + b.transpose());
    }
    const PDMatrix pa = spectral_factor(am), pb = spectral_factor(b);
    long first = 0;
    for (long m = 1; m <= kMaxCommutatorPower && first == 0; ++m)
      if (thfour_word(pa, pb, m).verdict.verdict == Verdict::NotAllPositive) first = m;
    failing += first > 0;
    max_first = std::max(max_first, first);
    // Direct gamma^m A^m B A^-m B^-1 from the known factorization of A.
    const double gamma = l2 / l1;
    Eigen::Vector3d up, down;
    for (int i = 0; i < 3; ++i) {
      up(i) = std::pow(d(i), 40.0);
      down(i) = std::pow(d(i), -40.0);
    }
    const Eigen::MatrixXd direct = std::pow(gamma, 40.0) * (r * up.asDiagonal() * r.transpose()) * b *
                                   (r * down.asDiagonal() * r.transpose()) * b.inverse();
    const ThfourLimit lim = thfour_limit(pa, pb);
    worst_limit = std::max(worst_limit, max_abs_diff(lim.basis * lim.limit * lim.basis.transpose(), direct));
  }
  std::size_t commuting_ok = 0;
  for (int t = 0; t < 20; ++t) {
    const double l1 = lam(rng), l2 = l1 * ratio(rng);
    const Eigen::MatrixXd r = ts::random_orthogonal(3, rng);
    Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(3, 3);
    inner.topLeftCorner(2, 2) = ts::random_pd(2, rng, 0.5, 2.0);
    inner(2, 2) = lam(rng);
    Eigen::MatrixXd am = r * Eigen::Vector3d(l1, l1, l2).asDiagonal() * r.transpose();
    Eigen::MatrixXd bm = r * inner * r.transpose();
    const PDMatrix pa = spectral_factor(Eigen::MatrixXd(0.5 * (am + am.transpose())));
    const PDMatrix pb = spectral_factor(Eigen::MatrixXd(0.5 * (bm + bm.transpose())));
    bool all = true;
    for (long m = 1; m <= kMaxCommutatorPower; ++m)
      all = all && thfour_word(pa, pb, m).verdict.verdict == Verdict::AllPositive;
    commuting_ok += all;
  }
  ok = failing == 50 && commuting_ok == 20 && worst_limit <= kLimitMatch;
  return std::to_string(failing) + "/50 non-commuting fail (largest first m " + std::to_string(max_first) + "), " +
         std::to_string(commuting_ok) + "/20 commuting stay positive, limit error " + fmt("%.3g", worst_limit);
}

std::string c7_projection_machinery(bool& ok) {
  const QMat p{{1, 0}, {0, 0}}, q{{Q(1, 2), Q(1, 2)}, {Q(1, 2), Q(1, 2)}};
  const QMat id = qidentity(2);
  auto sub = [](const QMat& x, const QMat& y) {
    QMat z = x;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) z[i][j] -= y[i][j];
    return z;
  };
  const QMat pc = sub(id, p), qc = sub(id, q);
  ok = qrows(projection_p()) == p && qrows(projection_q()) == q;
  for (const auto& c : projection_identities_check()) ok = ok && c.holds;

  const QMat step = qmul(qmul(qmul(p, q), pc), qc);
  QMat acc = id;
  for (long k = 1; k <= 10; ++k) {
    acc = qmul(acc, step);
    ok = ok && qrows(pq_power(k)) == acc;
  }

  // Every +-1 pattern with N <= 6: the limit is P_1 Q_1 ... P_N Q_N and for
  // reduced class m = 2 its trace is -1/4 * 2^(2-N).
  std::size_t m2 = 0, negative = 0, patterns = 0, odd_irreducible = 0;
  bool m2_exact = true;
  for (std::size_t n = 1; n <= 7; ++n) {
    for (unsigned mask = 0; mask < (1u << (2 * n)); ++mask) {
      std::vector<std::pair<long, long>> seq;
      for (std::size_t i = 0; i < n; ++i)
        seq.emplace_back((mask >> (2 * i)) & 1u ? -1 : 1, (mask >> (2 * i + 1)) & 1u ? -1 : 1);
      const ExponentSequence s = ExponentSequence::from_integers(seq);
      if (n % 2 == 1 && is_irreducible(s)) ++odd_irreducible;
      if (n == 7 || !is_normalized(s)) continue;
      const std::size_t m = reduced_class(s).m;
      if (m % 4 != 2) continue;
      ++patterns;
      QMat prod = id;
      for (const auto& [al, be] : seq) prod = qmul(qmul(prod, al > 0 ? p : pc), be > 0 ? q : qc);
      const Q tr = rat_trace(projection_limit(s));
      ok = ok && qrows(projection_limit(s)) == prod;
      negative += tr < 0;
      if (m == 2) {
        ++m2;
        Q expect(-1, 4);
        for (std::size_t i = 2; i < n; ++i) expect /= 2;
        m2_exact = m2_exact && tr == expect;
      }
    }
  }
  ok = ok && m2_exact && negative == patterns && odd_irreducible == 0 && m2 > 0;
  return "identities and pq_power(1..10) exact; " + std::to_string(m2) + " class-2 patterns with trace -1/4*2^(2-N) " +
         (m2_exact ? "exactly" : "NOT exactly") + "; " + std::to_string(negative) + "/" + std::to_string(patterns) +
         " patterns with m = 2 mod 4 have negative trace; odd m unreachable (" + std::to_string(odd_irreducible) +
         " irreducible odd-length patterns)";
}

std::string c8_epsilon_witnesses(bool& ok) {
  std::size_t total = 0, certified = 0, oracle = 0;
  for (int sa : {1, -1})
    for (int sb : {1, -1})
      for (long a1 = 1; a1 <= 3; ++a1)
        for (long b1 = 1; b1 <= 3; ++b1)
          for (long a2 = 1; a2 <= 3; ++a2)
            for (long b2 = 1; b2 <= 3; ++b2) {
              const std::vector<std::pair<long, long>> seq{{sa * a1, sb * b1}, {-sa * a2, -sb * b2}};
              ++total;
              try {
                const Witness w = epsilon_sweep(ExponentSequence::from_integers(seq));
                const auto* nt = std::get_if<NegativeTrace>(&w.certificate.kind);
                const bool dyadic = w.provenance.find("2^-") != std::string::npos;
                if (w.certified && nt && nt->value < 0 && dyadic && verify_certificate(w.certificate)) ++certified;
                if (w.a_exact && w.b_exact) {
                  const Q tr = qtrace(qword(seq, qrows(*w.a_exact), qrows(*w.b_exact)));
                  oracle += nt && tr < 0 && tr == nt->value;
                }
              } catch (const Error&) {
              }
            }
  ok = certified == total && oracle == total;
  return std::to_string(certified) + "/" + std::to_string(total) + " certified with dyadic eps, oracle trace agrees " +
         std::to_string(oracle) + "/" + std::to_string(total);
}

std::string c9_class2_complete(bool& ok) {
  std::size_t unknown = 0, bad = 0, bad_certified = 0, good = 0, good_clean = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    auto s = [&](unsigned bit) { return (mask >> bit) & 1u ? -1L : 1L; };
    const ExponentSequence seq = ExponentSequence::from_integers({{s(0), s(1)}, {s(2), s(3)}});
    const Classification c = classify(seq);
    if (c.verdict == Goodness::Unknown) {
      ++unknown;
    } else if (c.verdict == Goodness::ProvablyBad) {
      ++bad;
      try {
        const Witness w = epsilon_sweep(seq);
        bad_certified += w.certified && verify_certificate(w.certificate);
      } catch (const Error&) {
      }
    } else {
      ++good;
      SearchConfig cfg;
      cfg.n = 2;
      cfg.trials = 10000;
      cfg.seed = 900 + mask;
      const SearchResult r = random_search(seq, cfg);
      good_clean += !(r.witness && r.witness->certified);
    }
  }
  ok = unknown == 0 && bad_certified == bad && good_clean == good && bad + good == 16;
  return std::to_string(good) + " good (" + std::to_string(good_clean) + " clean after 10^4 trials), " +
         std::to_string(bad) + " bad (" + std::to_string(bad_certified) + " certified), " + std::to_string(unknown) +
         " unknown";
}

std::string c10_halmos(bool& ok) {
  std::mt19937_64 rng(20210);
  std::size_t good = 0;
  double worst = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 8);
    std::uniform_int_distribution<std::size_t> rk(0, n);
    auto proj = [&](std::size_t r) {
      const Eigen::MatrixXd o = ts::random_orthogonal(n, rng);
      const Eigen::MatrixXd v = o.leftCols(static_cast<Eigen::Index>(r));
      return Eigen::MatrixXd(v * v.transpose());
    };
    Eigen::MatrixXd p = proj(rk(rng)), q;
    if (t % 3 == 2) {
      // Share part of P's range and kernel.
      const Eigen::MatrixXd o = ts::random_orthogonal(n, rng);
      q = p;
      q += o.col(0) * o.col(0).transpose();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
      const Eigen::MatrixXd v = es.eigenvectors();
      q.setZero();
      for (Eigen::Index i = 0; i < v.cols(); ++i)
        if (es.eigenvalues()(i) > 0.5) q += v.col(i) * v.col(i).transpose();
    } else {
      q = proj(rk(rng));
    }
    const TwoProjectionForm f = halmos_form(OrthoProjection(p), OrthoProjection(q));
    const auto nn = static_cast<Eigen::Index>(n);
    bool sizes = true;
    Eigen::MatrixXd pb = Eigen::MatrixXd::Zero(nn, nn), qb = pb;
    for (const auto& b : f.blocks) {
      sizes = sizes && b.size >= 1 && b.size <= 2;
      const auto o = static_cast<Eigen::Index>(b.offset), s = static_cast<Eigen::Index>(b.size);
      pb.block(o, o, s, s) = b.p;
      qb.block(o, o, s, s) = b.q;
    }
    const double orth = (f.u.transpose() * f.u - Eigen::MatrixXd::Identity(nn, nn)).cwiseAbs().maxCoeff();
    const double rp = (f.u * pb * f.u.transpose() - p).cwiseAbs().maxCoeff();
    const double rq = (f.u * qb * f.u.transpose() - q).cwiseAbs().maxCoeff();
    const double err = std::max({orth, rp, rq});
    worst = std::max(worst, err / static_cast<double>(n));
    good += sizes && err <= kHalmosPerDim * static_cast<double>(n);
  }
  ok = good == 200;
  return std::to_string(good) + "/200 pairs, worst residual / n " + fmt("%.3g", worst);
}

std::string c11_determinism(bool& ok) {
  auto run = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return std::make_pair(code, out.str());
  };
  auto payload = [](const std::string& text) { return Json::parse(text)["results"].dump(); };
  std::size_t identical = 0, cases = 0;
  const std::vector<std::vector<std::string>> configs{
      {"search", "A B^2 A^-1 B^-3", "--n", "2", "--trials", "3000", "--seed", "7"},
      {"search", "A B A B^-1 A^-1 B^-1", "--n", "3", "--trials", "2000", "--seed", "8", "--refine"},
      {"search", "A^0.5 B A^-1.5 B^-2", "--n", "4", "--trials", "2000", "--seed", "9"},
  };
  for (const auto& base : configs) {
    std::vector<std::string> one = base, eight = base;
    one.insert(one.begin(), "--no-timing");
    eight.insert(eight.begin(), "--no-timing");
    one.insert(one.end(), {"--threads", "1"});
    eight.insert(eight.end(), {"--threads", "8"});
    const auto r1 = run(one), r1b = run(one), r8 = run(eight);
    ++cases;
    identical += r1.first == 0 && r8.first == 0 && r1.second == r1b.second && payload(r1.second) == payload(r8.second);
  }
  ok = identical == cases;
  return std::to_string(identical) + "/" + std::to_string(cases) +
         " search configurations byte-identical across reruns and across 1 vs 8 threads";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "cited 3x3 counterexample", c1_cited_pair},
      {2, "class-1 words are positive", c2_class1},
      {3, "2x2 words with same-sign betas are positive", c3_two_by_two},
      {4, "3x3 with a double eigenvalue of A is positive", c4_repeated_eigenvalue},
      {5, "two-eigenvalue matrices split into blocks", c5_two_eigenvalue},
      {6, "commutator family fails exactly off commuting pairs", c6_commutator},
      {7, "exact projection machinery", c7_projection_machinery},
      {8, "epsilon witnesses for class-2 bad patterns", c8_epsilon_witnesses},
      {9, "class-2 classification is complete", c9_class2_complete},
      {10, "two-projection canonical form", c10_halmos},
      {11, "seeded search is deterministic", c11_determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    std::string summary;
    const auto start = std::chrono::steady_clock::now();
    try {
      summary = c.body(ok);
    } catch (const std::exception& e) {
      ok = false;
      summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << summary << " ["
              << fmt("%.2f", secs) << " s]\n";
    failed += !ok;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion/criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
