#pragma once

// Randomized counterexample search, local refinement of near misses, and
// the dyadic epsilon sweep for sequences known to fail.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "gword/certify.hpp"
#include "gword/linalg.hpp"
#include "gword/rational.hpp"
#include "gword/word.hpp"

namespace gword {

struct SearchConfig {
  std::size_t n = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double lambda_min = 1e-2;
  double lambda_max = 1e2;
  Tolerances tol;
  bool refine = false;
  std::size_t refine_iterations = 400;
  long max_denominator = 1000000;
  std::size_t threads = 1;

  /// Throws InvalidArgument on lambda_min <= 0, lambda_max < lambda_min,
  /// n == 0 or trials == 0.
  void validate() const;
};

struct Witness {
  ExponentSequence seq;
  Matrix a;
  Matrix b;
  std::optional<RationalMatrix> a_exact;
  std::optional<RationalMatrix> b_exact;
  Spectrum spectrum;
  Certificate certificate;
  bool certified = false;
  /// Why certification was skipped or failed, when it was.
  std::string note;
  /// "trial" (with trial index and seed), "refined", or a recipe id.
  std::string provenance;
  std::optional<std::size_t> trial;
  std::optional<std::uint64_t> seed;
};

struct SearchResult {
  std::optional<Witness> witness;
  std::size_t trials_run = 0;
  std::size_t not_all_positive = 0;
  std::size_t inconclusive = 0;
  /// NotAllPositive trials whose exact re-check found all eigenvalues positive.
  std::size_t false_alarms = 0;
  /// Smallest scale-free margin min Re(lambda) / max |lambda| over all trials.
  double best_margin = 0.0;
  std::size_t best_trial = 0;
  /// Set when refinement ran.
  std::optional<double> refined_objective;
  std::optional<double> refine_start_objective;
};

/// Rng stream for one trial, derived from (seed, trial) alone.
std::mt19937_64 trial_rng(std::uint64_t seed, std::size_t trial);

/// Q diag(lambda) Q^T with Q from Gaussian QR (signs fixed) and lambda
/// log-uniform in [lambda_min, lambda_max].
PDMatrix sample_pd(std::size_t n, double lambda_min, double lambda_max, std::mt19937_64& rng);

SearchResult random_search(const ExponentSequence& seq, const SearchConfig& config);

struct Candidate {
  Matrix a;
  Matrix b;
  double objective;
};

/// Scale-free objective: min Re(lambda) / max |lambda| plus a 1e-3 weighted
/// max |Im(lambda)| / max |lambda| tie term.
double refine_objective(const ExponentSequence& seq, const Matrix& a, const Matrix& b);

/// Nelder-Mead over the Cholesky factors of A and B (log-parametrized
/// diagonals). Never returns a worse objective than the input.
Candidate refine(const ExponentSequence& seq, const Matrix& a, const Matrix& b, const SearchConfig& config);

/// Tries to certify a numeric failure: rationalizes A and B, checks exact
/// positive definiteness, and runs the exact decision. Returns nullopt for
/// non-integer exponents.
std::optional<Certificate> certify_candidate(const ExponentSequence& seq, const Matrix& a, const Matrix& b,
                                             long max_denominator, RationalMatrix* a_out = nullptr,
                                             RationalMatrix* b_out = nullptr);

/// Smallest k in 1..20 with tr W(A(2^-k), B(2^-k)) < 0 for the sign
/// normalized sequence, reported as a witness for the original sequence.
/// Throws NotProvablyBad or SweepExhausted.
Witness epsilon_sweep(const ExponentSequence& seq, bool beta_cyclic = false);

/// Witness on the cited 3x3 pair; the sequence must be that of A B A^2 B^2.
Witness hijo_witness(const ExponentSequence& seq);

/// Witness for A^m B A^-m B^-1 with A = diag(r, r, 1), r = 2^k scanned and a
/// fixed integer B; certified exactly.
Witness thfour_witness(long m, std::size_t max_k = 40);

}  // namespace gword
