#pragma once

// Sign-based cancellation of exponent pairs, reduced class, and the
// 2-goodness classifier built from it.
//
// AlphaRule at j: a_j * a_{j+1} > 0 (cyclically, a_{m+1} = a_1) removes pair j.
// BetaRule  at j: b_j * b_{j+1} > 0 removes pair j+1. The wrap j = m is only
// considered when beta_cyclic is set.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gword/word.hpp"

namespace gword {

enum class Rule { Alpha, Beta };
std::string_view to_string(Rule r);

struct Cancellation {
  Rule rule;
  std::size_t index;  // zero-based j
  auto operator<=>(const Cancellation&) const = default;
};

std::vector<Cancellation> applicable_cancellations(const ExponentSequence& seq, bool beta_cyclic = false);
ExponentSequence apply_cancellation(const ExponentSequence& seq, const Cancellation& c, bool beta_cyclic = false);
bool is_irreducible(const ExponentSequence& seq, bool beta_cyclic = false);

struct ReductionStep {
  Cancellation cancellation;
  ExponentSequence before;
  ExponentSequence after;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  ExponentSequence terminal;
  /// Positions (in the input) of the pairs that survive in `terminal`.
  std::vector<std::size_t> surviving;
};

struct ReducedClass {
  std::size_t m = 0;
  ReductionTrace trace;
  std::set<std::size_t> reachable;
};

/// Explores every cancellation order. m is the smallest reachable
/// irreducible length; the trace is the lexicographically smallest path
/// (by (rule, index) per step) that reaches a terminal of length m.
ReducedClass reduced_class(const ExponentSequence& seq, bool beta_cyclic = false);

enum class Goodness { ProvablyGood, ProvablyBad, Unknown };
std::string_view to_string(Goodness g);

struct Classification {
  Goodness verdict = Goodness::Unknown;
  /// Which result decides the verdict ("same-sign-alpha", "same-sign-beta",
  /// "reduced-class-2-or-3-mod-4", or "undecided").
  std::string theorem;
  std::string sign_pattern;
  std::size_t reduced_class_m = 0;
  std::set<std::size_t> reachable_m_set;
  /// Recipe identifier for a constructive witness, set for ProvablyBad.
  std::optional<std::string> witness_recipe;
  /// Reduced class under the other beta-rule convention, when it differs.
  std::optional<ReducedClass> other_mode;
};

Classification classify(const ExponentSequence& seq, bool beta_cyclic = false);

/// Flips the signs of all alphas and/or all betas so that the first pair
/// surviving the minimal reduction has positive exponents. Returns the
/// flipped sequence and the two sign factors applied (+1 or -1).
struct Normalization {
  ExponentSequence sequence;
  int alpha_sign = 1;
  int beta_sign = 1;
};
Normalization normalize_signs(const ExponentSequence& seq, bool beta_cyclic = false);

}  // namespace gword
