#include "gword/reduction.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "gword/error.hpp"

namespace gword {

std::string_view to_string(Rule r) { return r == Rule::Alpha ? "AlphaRule" : "BetaRule"; }

std::string_view to_string(Goodness g) {
  switch (g) {
    case Goodness::ProvablyGood: return "ProvablyGood";
    case Goodness::ProvablyBad: return "ProvablyBad";
    case Goodness::Unknown: return "Unknown";
  }
  return "?";
}

namespace {

std::size_t removed_position(const Cancellation& c, std::size_t m) {
  return c.rule == Rule::Alpha ? c.index : (c.index + 1) % m;
}

ExponentSequence subsequence(const ExponentSequence& seq, const std::vector<std::size_t>& keep) {
  ExponentSequence out;
  out.pairs.reserve(keep.size());
  for (std::size_t i : keep) out.pairs.push_back(seq.pairs[i]);
  return out;
}

class Explorer {
 public:
  Explorer(const ExponentSequence& seq, bool beta_cyclic) : seq_(seq), beta_cyclic_(beta_cyclic) {}

  std::size_t min_length(const std::vector<std::size_t>& state) {
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    const auto moves = applicable_cancellations(subsequence(seq_, state), beta_cyclic_);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    if (moves.empty()) {
      best = state.size();
      reachable_.insert(best);
    }
    for (const auto& c : moves) best = std::min(best, min_length(successor(state, c)));
    memo_.emplace(state, best);
    return best;
  }

  std::vector<std::size_t> successor(const std::vector<std::size_t>& state, const Cancellation& c) const {
    std::vector<std::size_t> next = state;
    next.erase(next.begin() + static_cast<std::ptrdiff_t>(removed_position(c, state.size())));
    return next;
  }

  const std::set<std::size_t>& reachable() const { return reachable_; }

 private:
  const ExponentSequence& seq_;
  bool beta_cyclic_;
  std::map<std::vector<std::size_t>, std::size_t> memo_;
  std::set<std::size_t> reachable_;
};

}  // namespace

std::vector<Cancellation> applicable_cancellations(const ExponentSequence& seq, bool beta_cyclic) {
  std::vector<Cancellation> out;
  const std::size_t m = seq.size();
  if (m == 0) return out;
  for (std::size_t j = 0; j < m; ++j) {
    if (seq.pairs[j].alpha.sign() * seq.pairs[(j + 1) % m].alpha.sign() > 0) out.push_back({Rule::Alpha, j});
  }
  const std::size_t beta_last = beta_cyclic ? m : m - 1;
  for (std::size_t j = 0; j < beta_last; ++j) {
    if (seq.pairs[j].beta.sign() * seq.pairs[(j + 1) % m].beta.sign() > 0) out.push_back({Rule::Beta, j});
  }
  return out;
}

ExponentSequence apply_cancellation(const ExponentSequence& seq, const Cancellation& c, bool beta_cyclic) {
  const auto moves = applicable_cancellations(seq, beta_cyclic);
  if (std::find(moves.begin(), moves.end(), c) == moves.end()) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(c.rule)) + " does not apply at index " +
                                                std::to_string(c.index));
  }
  ExponentSequence out = seq;
  out.residual.reset();
  out.pairs.erase(out.pairs.begin() + static_cast<std::ptrdiff_t>(removed_position(c, seq.size())));
  return out;
}

bool is_irreducible(const ExponentSequence& seq, bool beta_cyclic) {
  return applicable_cancellations(seq, beta_cyclic).empty();
}

ReducedClass reduced_class(const ExponentSequence& seq, bool beta_cyclic) {
  ExponentSequence base;
  base.pairs = seq.pairs;
  Explorer explorer(base, beta_cyclic);
  std::vector<std::size_t> state(base.size());
  for (std::size_t i = 0; i < state.size(); ++i) state[i] = i;

  ReducedClass result;
  result.m = explorer.min_length(state);

  // Greedy descent over sorted moves yields the lexicographically smallest
  // minimal path, since every path to length m has N - m steps.
  while (true) {
    const ExponentSequence current = subsequence(base, state);
    const auto moves = applicable_cancellations(current, beta_cyclic);
    if (moves.empty()) break;
    bool advanced = false;
    for (const auto& c : moves) {
      auto next = explorer.successor(state, c);
      if (explorer.min_length(next) == result.m) {
        result.trace.steps.push_back({c, current, subsequence(base, next)});
        state = std::move(next);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  result.trace.terminal = subsequence(base, state);
  result.trace.surviving = state;
  result.reachable = explorer.reachable();
  return result;
}

Classification classify(const ExponentSequence& seq, bool beta_cyclic) {
  Classification c;
  c.sign_pattern = sign_pattern(seq);
  ReducedClass rc = reduced_class(seq, beta_cyclic);
  c.reduced_class_m = rc.m;
  c.reachable_m_set = rc.reachable;
  ReducedClass other = reduced_class(seq, !beta_cyclic);
  if (other.m != rc.m || other.reachable != rc.reachable) c.other_mode = std::move(other);

  auto all_same = [&](auto member) {
    return std::all_of(seq.pairs.begin(), seq.pairs.end(),
                       [&](const ExponentPair& p) { return (p.*member).sign() == (seq.pairs.front().*member).sign(); });
  };
  if (seq.empty() || all_same(&ExponentPair::alpha)) {
    c.verdict = Goodness::ProvablyGood;
    c.theorem = "same-sign-alpha";
  } else if (all_same(&ExponentPair::beta)) {
    c.verdict = Goodness::ProvablyGood;
    c.theorem = "same-sign-beta";
  } else if (rc.m % 4 == 2 || rc.m % 4 == 3) {
    c.verdict = Goodness::ProvablyBad;
    c.theorem = "reduced-class-2-or-3-mod-4";
    c.witness_recipe = "epsilon";
  } else {
    c.verdict = Goodness::Unknown;
    c.theorem = "undecided";
  }
  return c;
}

Normalization normalize_signs(const ExponentSequence& seq, bool beta_cyclic) {
  Normalization n;
  n.sequence = seq;
  const ReducedClass rc = reduced_class(seq, beta_cyclic);
  if (rc.trace.terminal.empty()) return n;
  n.alpha_sign = rc.trace.terminal.pairs.front().alpha.sign();
  n.beta_sign = rc.trace.terminal.pairs.front().beta.sign();
  for (auto& p : n.sequence.pairs) {
    if (n.alpha_sign < 0) p.alpha = -p.alpha;
    if (n.beta_sign < 0) p.beta = -p.beta;
  }
  return n;
}

}  // namespace gword
