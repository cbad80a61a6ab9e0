#pragma once

// Generalized two-letter words A^{a1} B^{b1} ... A^{aN} B^{bN}: surface
// syntax, canonical exponent sequences, numeric evaluation and three-valued
// positivity verdicts.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gword/linalg.hpp"
#include "gword/rational.hpp"

namespace gword {

/// A nonzero real exponent. Integers and p/q literals are exact; decimal
/// literals carry only their double value.
class Exponent {
 public:
  static Exponent real(double v);
  static Exponent exact(Rational q);
  static Exponent integer(long v) { return exact(Rational(v)); }

  double value() const { return value_; }
  bool is_exact() const { return exact_.has_value(); }
  bool is_integer() const;
  const Rational& rational() const;
  /// Integer value; throws NonIntegerExponent when !is_integer().
  long as_integer() const;
  int sign() const { return value_ > 0 ? 1 : -1; }

  Exponent operator-() const;
  /// Sum of two exponents; std::nullopt when the sum vanishes.
  friend std::optional<Exponent> add(const Exponent& a, const Exponent& b);
  Exponent scaled(double factor) const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b);

 private:
  Exponent(double v, std::optional<Rational> q) : value_(v), exact_(std::move(q)) {}
  double value_;
  std::optional<Rational> exact_;
};

enum class Letter { A, B };

struct Factor {
  Letter letter;
  Exponent exponent;
  friend bool operator==(const Factor&, const Factor&) = default;
};

struct WordExpr {
  std::vector<Factor> factors;
};

struct ExponentPair {
  Exponent alpha;
  Exponent beta;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
};

/// (a1, b1, ..., aN, bN) with all entries nonzero. A word that collapses to
/// a single power of one letter has N = 0 and records that power in
/// `residual`.
struct ExponentSequence {
  std::vector<ExponentPair> pairs;
  std::optional<Factor> residual;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool is_exact() const;
  bool all_integer() const;

  static ExponentSequence from_integers(const std::vector<std::pair<long, long>>& p);
  static ExponentSequence from_reals(const std::vector<std::pair<double, double>>& p);

  friend bool operator==(const ExponentSequence&, const ExponentSequence&) = default;
};

/// Parses the word grammar; throws SyntaxError (with byte offset) or ZeroExponent.
WordExpr parse_word(std::string_view text);
std::string format_word(const WordExpr& w);
std::string format_word(const ExponentSequence& s);
/// Compact "(a1,b1),(a2,b2)" rendering.
std::string format_pairs(const ExponentSequence& s);
/// "+-" string over a1 b1 a2 b2 ...
std::string sign_pattern(const ExponentSequence& s);

ExponentSequence canonicalize(const WordExpr& w);
/// Round trip through the factor list; keeps a sequence canonical.
WordExpr to_word(const ExponentSequence& s);

enum class Verdict { AllPositive, NotAllPositive, Inconclusive };
std::string_view to_string(Verdict v);

struct PositivityVerdict {
  Verdict verdict;
  std::string reason;
};

struct Tolerances {
  double real = 1e-9;
  double imag = 1e-9;
};

PositivityVerdict verdict_from_spectrum(const Spectrum& s, const Tolerances& tol = {});

struct EvalResult {
  Matrix matrix;
  Spectrum spectrum;
  PositivityVerdict verdict;
  double min_real = 0.0;
  double max_imag = 0.0;
};

/// Numeric product of the factors in order, with spectrum and verdict.
EvalResult evaluate(const ExponentSequence& seq, const PDMatrix& a, const PDMatrix& b,
                    const Tolerances& tol = {});
/// Product matrix only.
Matrix word_matrix(const ExponentSequence& seq, const PDMatrix& a, const PDMatrix& b);
/// Exact product for integer exponents over rational matrices. The spectrum
/// of the result is decided by the certifier.
RationalMatrix evaluate_exact(const ExponentSequence& seq, const RationalMatrix& a,
                              const RationalMatrix& b);

}  // namespace gword
