#include "gword/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "gword/error.hpp"

namespace gword {

// ---------------------------------------------------------------- Exponent

Exponent Exponent::real(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite exponent");
  if (v == 0.0) throw Error(ErrorCode::ZeroExponent, "exponent must be nonzero");
  return Exponent(v, std::nullopt);
}

Exponent Exponent::exact(Rational q) {
  q.canonicalize();
  if (sgn(q) == 0) throw Error(ErrorCode::ZeroExponent, "exponent must be nonzero");
  const double v = q.get_d();
  return Exponent(v, std::move(q));
}

bool Exponent::is_integer() const { return exact_ && exact_->get_den() == 1; }

const Rational& Exponent::rational() const {
  if (!exact_) throw Error(ErrorCode::ExactModeUnsupported, "exponent " + to_string() + " is not exact");
  return *exact_;
}

long Exponent::as_integer() const {
  if (!is_integer()) throw Error(ErrorCode::NonIntegerExponent, "exponent " + to_string() + " is not an integer");
  if (!exact_->get_num().fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "exponent too large");
  return exact_->get_num().get_si();
}

Exponent Exponent::operator-() const {
  if (exact_) return Exponent(-value_, Rational(-*exact_));
  return Exponent(-value_, std::nullopt);
}

std::optional<Exponent> add(const Exponent& a, const Exponent& b) {
  if (a.exact_ && b.exact_) {
    Rational s = *a.exact_ + *b.exact_;
    if (sgn(s) == 0) return std::nullopt;
    return Exponent::exact(std::move(s));
  }
  const double s = a.value_ + b.value_;
  // Real sums that cancel to roundoff are treated as zero.
  if (std::abs(s) <= 1e-12 * std::max(std::abs(a.value_), std::abs(b.value_))) return std::nullopt;
  return Exponent::real(s);
}

Exponent Exponent::scaled(double factor) const {
  if (factor <= 0.0) throw Error(ErrorCode::InvalidArgument, "exponent scaling must be positive");
  return Exponent::real(value_ * factor);
}

std::string Exponent::to_string() const {
  if (exact_) return exact_->get_str();
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value_, std::chars_format::fixed);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos) s += ".0";
  return s;
}

bool operator==(const Exponent& a, const Exponent& b) {
  if (a.exact_.has_value() != b.exact_.has_value()) return false;
  if (a.exact_) return *a.exact_ == *b.exact_;
  return a.value_ == b.value_;
}

// ------------------------------------------------------- ExponentSequence

bool ExponentSequence::is_exact() const {
  for (const auto& p : pairs)
    if (!p.alpha.is_exact() || !p.beta.is_exact()) return false;
  return !residual || residual->exponent.is_exact();
}

bool ExponentSequence::all_integer() const {
  for (const auto& p : pairs)
    if (!p.alpha.is_integer() || !p.beta.is_integer()) return false;
  return !residual || residual->exponent.is_integer();
}

ExponentSequence ExponentSequence::from_integers(const std::vector<std::pair<long, long>>& p) {
  ExponentSequence s;
  for (auto [a, b] : p) s.pairs.push_back({Exponent::integer(a), Exponent::integer(b)});
  return s;
}

ExponentSequence ExponentSequence::from_reals(const std::vector<std::pair<double, double>>& p) {
  ExponentSequence s;
  for (auto [a, b] : p) s.pairs.push_back({Exponent::real(a), Exponent::real(b)});
  return s;
}

// ----------------------------------------------------------------- parsing

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '*' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

[[noreturn]] void syntax_error(std::size_t offset, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "at byte " + std::to_string(offset) + ": " + what);
}

Exponent parse_exponent(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  if (pos < text.size() && text[pos] == '-') ++pos;
  const std::size_t digits = pos;
  while (pos < text.size() && is_digit(text[pos])) ++pos;
  if (pos == digits) syntax_error(pos, "expected exponent digits");
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::size_t den = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == den) syntax_error(pos, "expected denominator digits");
    const std::string_view lit = text.substr(start, pos - start);
    Rational q;
    try {
      q = parse_rational(lit);
    } catch (const Error&) {
      syntax_error(den, "zero denominator");
    }
    if (sgn(q) == 0) throw Error(ErrorCode::ZeroExponent, "at byte " + std::to_string(start));
    return Exponent::exact(q);
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t frac = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    if (pos == frac) syntax_error(pos, "expected digits after '.'");
    double v = 0.0;
    const char* first = text.data() + start;
    const char* last = text.data() + pos;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) syntax_error(start, "bad decimal exponent");
    if (v == 0.0) throw Error(ErrorCode::ZeroExponent, "at byte " + std::to_string(start));
    return Exponent::real(v);
  }
  const Rational q = parse_rational(text.substr(start, pos - start));
  if (sgn(q) == 0) throw Error(ErrorCode::ZeroExponent, "at byte " + std::to_string(start));
  return Exponent::exact(q);
}

char letter_char(Letter l) { return l == Letter::A ? 'A' : 'B'; }

void append_factor(std::string& out, Letter l, const Exponent& e) {
  if (!out.empty()) out += ' ';
  out += letter_char(l);
  if (!(e.is_integer() && e.rational() == 1)) {
    out += '^';
    out += e.to_string();
  }
}

}  // namespace

WordExpr parse_word(std::string_view text) {
  WordExpr w;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && is_ws(text[pos])) ++pos;
    if (pos == text.size()) break;
    const char c = text[pos];
    if (c != 'A' && c != 'B') syntax_error(pos, std::string("expected 'A' or 'B', found '") + c + "'");
    const Letter letter = c == 'A' ? Letter::A : Letter::B;
    ++pos;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      w.factors.push_back({letter, parse_exponent(text, pos)});
    } else {
      w.factors.push_back({letter, Exponent::integer(1)});
    }
    if (pos < text.size() && !is_ws(text[pos]) && text[pos] != 'A' && text[pos] != 'B') {
      syntax_error(pos, std::string("unexpected '") + text[pos] + "'");
    }
  }
  if (w.factors.empty()) syntax_error(pos, "empty word");
  return w;
}

std::string format_word(const WordExpr& w) {
  std::string out;
  for (const auto& f : w.factors) append_factor(out, f.letter, f.exponent);
  return out;
}

WordExpr to_word(const ExponentSequence& s) {
  WordExpr w;
  if (s.residual) w.factors.push_back(*s.residual);
  for (const auto& p : s.pairs) {
    w.factors.push_back({Letter::A, p.alpha});
    w.factors.push_back({Letter::B, p.beta});
  }
  return w;
}

std::string format_word(const ExponentSequence& s) {
  if (s.empty() && !s.residual) return "I";
  return format_word(to_word(s));
}

std::string format_pairs(const ExponentSequence& s) {
  std::string out;
  for (const auto& p : s.pairs) {
    if (!out.empty()) out += ',';
    out += '(' + p.alpha.to_string() + ',' + p.beta.to_string() + ')';
  }
  return out.empty() ? "()" : out;
}

std::string sign_pattern(const ExponentSequence& s) {
  std::string out;
  for (const auto& p : s.pairs) {
    out += p.alpha.sign() > 0 ? '+' : '-';
    out += p.beta.sign() > 0 ? '+' : '-';
  }
  return out;
}

// ------------------------------------------------------------ canonicalize

namespace {

bool lex_greater(const std::vector<ExponentPair>& a, const std::vector<ExponentPair>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].alpha.value() != b[i].alpha.value()) return a[i].alpha.value() > b[i].alpha.value();
    if (a[i].beta.value() != b[i].beta.value()) return a[i].beta.value() > b[i].beta.value();
  }
  return false;
}

}  // namespace

ExponentSequence canonicalize(const WordExpr& w) {
  std::vector<Factor> st;
  for (const auto& f : w.factors) {
    if (!st.empty() && st.back().letter == f.letter) {
      auto sum = add(st.back().exponent, f.exponent);
      st.pop_back();
      if (sum) st.push_back({f.letter, *sum});
    } else {
      st.push_back(f);
    }
  }
  // Cyclic merge: the word is only defined up to similarity.
  while (st.size() >= 2 && st.front().letter == st.back().letter) {
    auto sum = add(st.front().exponent, st.back().exponent);
    st.pop_back();
    if (sum) {
      st.front().exponent = *sum;
    } else {
      st.erase(st.begin());
    }
  }
  ExponentSequence out;
  if (st.empty()) return out;
  if (st.size() == 1) {
    out.residual = st.front();
    return out;
  }
  if (st.front().letter == Letter::B) std::rotate(st.begin(), st.begin() + 1, st.end());
  std::vector<ExponentPair> pairs;
  for (std::size_t i = 0; i + 1 < st.size(); i += 2) pairs.push_back({st[i].exponent, st[i + 1].exponent});

  std::vector<ExponentPair> best = pairs;
  for (std::size_t r = 1; r < pairs.size(); ++r) {
    std::vector<ExponentPair> cand = pairs;
    std::rotate(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(r), cand.end());
    if (lex_greater(cand, best)) best = std::move(cand);
  }
  out.pairs = std::move(best);
  return out;
}

// ----------------------------------------------------------------- verdict

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AllPositive: return "AllPositive";
    case Verdict::NotAllPositive: return "NotAllPositive";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

PositivityVerdict verdict_from_spectrum(const Spectrum& s, const Tolerances& tol) {
  if (tol.real <= 0.0 || tol.imag <= 0.0) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
  auto describe = [](const Complex& z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    return os.str();
  };
  for (const auto& z : s.values) {
    if (z.real() <= -tol.real) {
      return {Verdict::NotAllPositive, "eigenvalue " + describe(z) + " has negative real part"};
    }
    if (std::abs(z.imag()) >= 10.0 * tol.imag * (1.0 + std::abs(z))) {
      return {Verdict::NotAllPositive, "eigenvalue " + describe(z) + " is not real"};
    }
  }
  for (const auto& z : s.values) {
    if (std::abs(z.imag()) > tol.imag * (1.0 + std::abs(z)) || z.real() < tol.real) {
      return {Verdict::Inconclusive, "eigenvalue " + describe(z) + " lies inside the tolerance band"};
    }
  }
  return {Verdict::AllPositive, "all eigenvalues real and positive"};
}

// -------------------------------------------------------------- evaluation

namespace {

const PDMatrix& pick(Letter l, const PDMatrix& a, const PDMatrix& b) { return l == Letter::A ? a : b; }

}  // namespace

Matrix word_matrix(const ExponentSequence& seq, const PDMatrix& a, const PDMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  const auto n = static_cast<Eigen::Index>(a.dim());
  Matrix w = Matrix::Identity(n, n);
  if (seq.residual) w = pick(seq.residual->letter, a, b).power(seq.residual->exponent.value()).matrix();
  for (const auto& p : seq.pairs) {
    w = w * a.power(p.alpha.value()).matrix();
    w = w * b.power(p.beta.value()).matrix();
  }
  return w;
}

EvalResult evaluate(const ExponentSequence& seq, const PDMatrix& a, const PDMatrix& b, const Tolerances& tol) {
  EvalResult r;
  r.matrix = word_matrix(seq, a, b);
  r.spectrum = eigenvalues_general(r.matrix);
  r.verdict = verdict_from_spectrum(r.spectrum, tol);
  r.min_real = r.spectrum.min_real();
  r.max_imag = r.spectrum.max_abs_imag();
  if (seq.empty()) r.verdict = {Verdict::AllPositive, "pure power of a positive definite matrix"};
  return r;
}

RationalMatrix evaluate_exact(const ExponentSequence& seq, const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "A and B differ in dimension");
  if (!seq.all_integer()) {
    throw Error(ErrorCode::ExactModeUnsupported, "exact evaluation needs integer exponents");
  }
  RationalMatrix w = RationalMatrix::identity(a.dim());
  if (seq.residual) {
    w = rat_int_power(seq.residual->letter == Letter::A ? a : b, seq.residual->exponent.as_integer());
  }
  for (const auto& p : seq.pairs) {
    w = rat_mul(w, rat_int_power(a, p.alpha.as_integer()));
    w = rat_mul(w, rat_int_power(b, p.beta.as_integer()));
  }
  return w;
}

}  // namespace gword
