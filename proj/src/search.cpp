#include "gword/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <gsl/gsl_multimin.h>

#include "gword/constructions.hpp"
#include "gword/error.hpp"
#include "gword/reduction.hpp"

namespace gword {

namespace {

struct TrialOutcome {
  Verdict verdict = Verdict::Inconclusive;
  double margin = std::numeric_limits<double>::infinity();
};

std::pair<PDMatrix, PDMatrix> trial_pair(const SearchConfig& c, std::size_t trial) {
  std::mt19937_64 rng = trial_rng(c.seed, trial);
  PDMatrix a = sample_pd(c.n, c.lambda_min, c.lambda_max, rng);
  PDMatrix b = sample_pd(c.n, c.lambda_min, c.lambda_max, rng);
  return {std::move(a), std::move(b)};
}

double scale_free_margin(const Spectrum& s) {
  const double m = s.max_abs();
  return m > 0 ? s.min_real() / m : 0.0;
}

// Failure well beyond the verdict thresholds, so rounding cannot explain it.
bool strong_failure(const Spectrum& s, const Tolerances& tol) {
  for (const auto& z : s.values) {
    if (z.real() <= -10.0 * tol.real) return true;
    if (std::abs(z.imag()) >= 100.0 * tol.imag * (1.0 + std::abs(z))) return true;
  }
  return false;
}

bool exact_exponents(const ExponentSequence& seq) {
  return seq.all_integer() && (!seq.residual || seq.residual->exponent.is_integer());
}

std::size_t tri_size(std::size_t n) { return n * (n + 1) / 2; }

// Lower-triangular factor with log-diagonal <-> parameter vector.
void pack(const Matrix& m, std::vector<double>& out) {
  const Matrix l = m.llt().matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i)
    for (Eigen::Index j = 0; j <= i; ++j) out.push_back(i == j ? std::log(l(i, i)) : l(i, j));
}

Matrix unpack(const double* x, std::size_t n) {
  const auto ni = static_cast<Eigen::Index>(n);
  Matrix l = Matrix::Zero(ni, ni);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < ni; ++i)
    for (Eigen::Index j = 0; j <= i; ++j, ++k) l(i, j) = (i == j) ? std::exp(x[k]) : x[k];
  const Matrix m = l * l.transpose();
  return 0.5 * (m + m.transpose());
}

struct RefineContext {
  const ExponentSequence* seq;
  std::size_t n;
};

double refine_f(const gsl_vector* v, void* params) {
  const auto* ctx = static_cast<const RefineContext*>(params);
  const Matrix a = unpack(v->data, ctx->n);
  const Matrix b = unpack(v->data + tri_size(ctx->n), ctx->n);
  const double f = refine_objective(*ctx->seq, a, b);
  return std::isfinite(f) ? f : 1e10;
}

Witness make_witness(const ExponentSequence& seq, const Matrix& a, const Matrix& b, const Tolerances& tol) {
  Witness w;
  w.seq = seq;
  w.a = a;
  w.b = b;
  w.spectrum = evaluate(seq, spectral_factor(a), spectral_factor(b), tol).spectrum;
  return w;
}

}  // namespace

void SearchConfig::validate() const {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");
  if (!(lambda_min > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda_min must be positive");
  if (!(lambda_max >= lambda_min)) throw Error(ErrorCode::InvalidArgument, "lambda_max must be >= lambda_min");
  if (max_denominator < 1) throw Error(ErrorCode::InvalidArgument, "max_denominator must be positive");
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial) {
  const auto t = static_cast<std::uint64_t>(trial);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

PDMatrix sample_pd(std::size_t n, double lambda_min, double lambda_max, std::mt19937_64& rng) {
  const auto ni = static_cast<Eigen::Index>(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index i = 0; i < ni; ++i) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(ni, ni);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < ni; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;

  std::uniform_real_distribution<double> u(std::log(lambda_min), std::log(lambda_max));
  Vector lam(ni);
  for (Eigen::Index i = 0; i < ni; ++i) lam(i) = std::exp(u(rng));
  const Matrix m = q * lam.asDiagonal() * q.transpose();
  return spectral_factor(Matrix(0.5 * (m + m.transpose())));
}

double refine_objective(const ExponentSequence& seq, const Matrix& a, const Matrix& b) {
  const Spectrum s = evaluate(seq, spectral_factor(a), spectral_factor(b)).spectrum;
  const double m = s.max_abs();
  if (!(m > 0)) return std::numeric_limits<double>::infinity();
  return s.min_real() / m + 1e-3 * s.max_abs_imag() / m;
}

Candidate refine(const ExponentSequence& seq, const Matrix& a, const Matrix& b, const SearchConfig& config) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  const double start = refine_objective(seq, a, b);
  Candidate best{a, b, start};

  std::vector<double> x0;
  pack(a, x0);
  pack(b, x0);
  const std::size_t dim = x0.size();
  RefineContext ctx{&seq, n};
  gsl_multimin_function fn{&refine_f, dim, &ctx};

  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);
  for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, x0[i]);
  gsl_vector_set_all(step, 0.1);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_multimin_fminimizer_set(s, &fn, x, step);
  for (std::size_t it = 0; it < config.refine_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(s) != 0) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10) == GSL_SUCCESS) break;
  }
  const gsl_vector* xm = gsl_multimin_fminimizer_x(s);
  const Matrix ra = unpack(xm->data, n);
  const Matrix rb = unpack(xm->data + tri_size(n), n);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);

  try {
    const double f = refine_objective(seq, ra, rb);
    if (f < best.objective) best = {ra, rb, f};
  } catch (const Error&) {
    // The optimizer wandered into a numerically singular region; keep the input.
  }
  return best;
}

std::optional<Certificate> certify_candidate(const ExponentSequence& seq, const Matrix& a, const Matrix& b,
                                             long max_denominator, RationalMatrix* a_out, RationalMatrix* b_out) {
  if (!exact_exponents(seq)) return std::nullopt;
  const RationalMatrix ra = rationalize(a, max_denominator, true);
  const RationalMatrix rb = rationalize(b, max_denominator, true);
  if (a_out) *a_out = ra;
  if (b_out) *b_out = rb;
  if (!rat_is_positive_definite(ra) || !rat_is_positive_definite(rb)) return std::nullopt;
  return sturm_decide(seq, ra, rb);
}

SearchResult random_search(const ExponentSequence& seq, const SearchConfig& config) {
  config.validate();
  const std::size_t trials = config.trials;
  std::vector<TrialOutcome> outcomes(trials);
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, trials));

  auto run = [&](std::size_t w) {
    for (std::size_t i = w; i < trials; i += workers) {
      try {
        auto [a, b] = trial_pair(config, i);
        const EvalResult r = evaluate(seq, a, b, config.tol);
        outcomes[i] = {r.verdict.verdict, scale_free_margin(r.spectrum)};
      } catch (const Error&) {
        outcomes[i] = {Verdict::Inconclusive, std::numeric_limits<double>::infinity()};
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }

  SearchResult res;
  res.trials_run = trials;
  res.best_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trials; ++i) {
    const auto& o = outcomes[i];
    if (o.verdict == Verdict::NotAllPositive) ++res.not_all_positive;
    if (o.verdict == Verdict::Inconclusive) ++res.inconclusive;
    if (o.margin < res.best_margin) {
      res.best_margin = o.margin;
      res.best_trial = i;
    }
  }

  auto consider = [&](const Matrix& a, const Matrix& b, const std::string& provenance,
                      std::size_t trial) -> std::optional<Witness> {
    Witness w = make_witness(seq, a, b, config.tol);
    w.provenance = provenance;
    w.trial = trial;
    w.seed = config.seed;
    RationalMatrix ra(1), rb(1);
    if (exact_exponents(seq)) {
      const auto cert = certify_candidate(seq, a, b, config.max_denominator, &ra, &rb);
      if (!cert || cert->is_none()) {
        ++res.false_alarms;
        return std::nullopt;
      }
      w.a_exact = ra;
      w.b_exact = rb;
      w.certificate = *cert;
      w.certified = true;
      return w;
    }
    if (!strong_failure(w.spectrum, config.tol)) return std::nullopt;
    w.note = "uncertified: exponents are not all integers";
    return w;
  };

  for (std::size_t i = 0; i < trials && !res.witness; ++i) {
    if (outcomes[i].verdict != Verdict::NotAllPositive) continue;
    auto [a, b] = trial_pair(config, i);
    res.witness = consider(a.base().matrix(), b.base().matrix(), "trial", i);
  }

  if (config.refine && !res.witness) {
    auto [a, b] = trial_pair(config, res.best_trial);
    const Candidate c = refine(seq, a.base().matrix(), b.base().matrix(), config);
    res.refine_start_objective = refine_objective(seq, a.base().matrix(), b.base().matrix());
    res.refined_objective = c.objective;
    const EvalResult r = evaluate(seq, spectral_factor(c.a), spectral_factor(c.b), config.tol);
    if (r.verdict.verdict == Verdict::NotAllPositive) res.witness = consider(c.a, c.b, "refined", res.best_trial);
  }
  return res;
}

Witness epsilon_sweep(const ExponentSequence& seq, bool beta_cyclic) {
  const Classification cls = classify(seq, beta_cyclic);
  if (cls.verdict != Goodness::ProvablyBad)
    throw Error(ErrorCode::NotProvablyBad,
                format_pairs(seq) + " is " + std::string(to_string(cls.verdict)) + ", reduced class " +
                    std::to_string(cls.reduced_class_m));
  const Normalization norm = normalize_signs(seq, beta_cyclic);
  const bool exact = exact_exponents(seq);
  for (unsigned k = 1; k <= 20; ++k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
    const Rational eps(1, den);
    const std::string recipe = "epsilon(" + format_pairs(seq) + ", 2^-" + std::to_string(k) + ")";
    if (exact) {
      const auto [a, b] = epsilon_family_exact(eps);
      const RationalMatrix aw = norm.alpha_sign > 0 ? a : rat_inverse(a);
      const RationalMatrix bw = norm.beta_sign > 0 ? b : rat_inverse(b);
      Certificate cert = sturm_decide(seq, aw, bw);
      const auto* nt = std::get_if<NegativeTrace>(&cert.kind);
      if (!nt || nt->value >= 0) continue;
      Witness w = make_witness(seq, aw.to_double(), bw.to_double(), {});
      w.a_exact = aw;
      w.b_exact = bw;
      w.certificate = std::move(cert);
      w.certified = true;
      w.provenance = recipe;
      return w;
    }
    const double e = eps.get_d();
    auto [pa, pb] = epsilon_family(norm.sequence, e, beta_cyclic);
    if (evaluate(norm.sequence, pa, pb).matrix.trace() >= 0) continue;
    const Matrix aw = pa.power(static_cast<double>(norm.alpha_sign)).matrix();
    const Matrix bw = pb.power(static_cast<double>(norm.beta_sign)).matrix();
    Witness w = make_witness(seq, aw, bw, {});
    w.provenance = recipe;
    w.note = "uncertified: exponents are not all integers; trace is negative in floating point";
    return w;
  }
  throw Error(ErrorCode::SweepExhausted, "no dyadic epsilon down to 2^-20 gives a negative trace for " +
                                             format_pairs(seq));
}

Witness hijo_witness(const ExponentSequence& seq) {
  const auto canon = [](const ExponentSequence& x) { return canonicalize(to_word(x)); };
  if (!(canon(seq) == canon(hijo_sequence())))
    throw Error(ErrorCode::InvalidArgument, "the cited pair is a witness for A B A^2 B^2 only");
  const auto [a, b] = hijo_example();
  Witness w = make_witness(seq, a.to_double(), b.to_double(), {});
  w.a_exact = a;
  w.b_exact = b;
  w.certificate = sturm_decide(seq, a, b);
  w.certified = !w.certificate.is_none();
  w.provenance = "hijo-eq2";
  return w;
}

Witness thfour_witness(long m, std::size_t max_k) {
  const ExponentSequence seq = thfour_sequence(m);
  const RationalMatrix b{{3, 1, 1}, {1, 3, 1}, {1, 1, 3}};
  for (std::size_t k = 1; k <= max_k; ++k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
    RationalMatrix a(3);
    a(0, 0) = Rational(r);
    a(1, 1) = Rational(r);
    a(2, 2) = 1;
    Certificate cert = sturm_decide(seq, a, b);
    if (cert.is_none()) continue;
    Witness w = make_witness(seq, a.to_double(), b.to_double(), {});
    w.a_exact = a;
    w.b_exact = b;
    w.certificate = std::move(cert);
    w.certified = true;
    w.provenance = "thfour(" + std::to_string(m) + ")";
    return w;
  }
  throw Error(ErrorCode::SweepExhausted, "no r = 2^k up to 2^" + std::to_string(max_k) + " fails for m = " +
                                             std::to_string(m));
}

}  // namespace gword
