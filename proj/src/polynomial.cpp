#include "gword/polynomial.hpp"

#include "gword/error.hpp"

namespace gword::poly {

void trim(RationalPolynomial& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

long degree(const RationalPolynomial& p) {
  RationalPolynomial q = p;
  trim(q);
  return static_cast<long>(q.size()) - 1;
}

bool is_zero(const RationalPolynomial& p) { return degree(p) < 0; }

RationalPolynomial derivative(const RationalPolynomial& p) {
  RationalPolynomial d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

RationalPolynomial make_monic(RationalPolynomial p) {
  trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

std::pair<RationalPolynomial, RationalPolynomial> divmod(const RationalPolynomial& a,
                                                         const RationalPolynomial& b) {
  RationalPolynomial r = a, d = b;
  trim(r);
  trim(d);
  if (d.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial division by zero");
  if (r.size() < d.size()) return {RationalPolynomial{}, r};
  RationalPolynomial q(r.size() - d.size() + 1);
  const Rational& lead = d.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational coef = r[k + d.size() - 1] / lead;
    q[k] = coef;
    if (sgn(coef) == 0) continue;
    for (std::size_t j = 0; j < d.size(); ++j) r[k + j] -= coef * d[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

Rational evaluate(const RationalPolynomial& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

namespace {

RationalPolynomial exact_quotient(const RationalPolynomial& a, const RationalPolynomial& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw Error(ErrorCode::InvalidArgument, "inexact polynomial quotient");
  return q;
}

RationalPolynomial subtract(RationalPolynomial a, const RationalPolynomial& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

int sign_at_zero(const RationalPolynomial& p) { return p.empty() ? 0 : sgn(p.front()); }
int sign_at_infinity(const RationalPolynomial& p) { return p.empty() ? 0 : sgn(p.back()); }

template <typename SignFn>
std::size_t variations(const std::vector<RationalPolynomial>& chain, SignFn sign) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    const int s = sign(p);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

std::vector<RationalPolynomial> squarefree_factors(const RationalPolynomial& p) {
  const RationalPolynomial f = make_monic(p);
  std::vector<RationalPolynomial> out;
  if (degree(f) <= 0) return out;
  const RationalPolynomial fp = derivative(f);
  const RationalPolynomial a0 = gcd(f, fp);
  RationalPolynomial b = exact_quotient(f, a0);
  RationalPolynomial c = exact_quotient(fp, a0);
  RationalPolynomial d = subtract(c, derivative(b));
  while (degree(b) > 0) {
    RationalPolynomial a = gcd(b, d);
    out.push_back(a);
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = subtract(c, derivative(b));
  }
  return out;
}

std::vector<RationalPolynomial> sturm_chain(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> chain;
  RationalPolynomial a = p;
  trim(a);
  if (a.empty()) return chain;
  RationalPolynomial b = derivative(a);
  chain.push_back(a);
  while (!b.empty()) {
    chain.push_back(b);
    RationalPolynomial r = divmod(a, b).second;
    for (auto& coef : r) coef = -coef;
    a = std::move(b);
    b = std::move(r);
  }
  return chain;
}

std::size_t count_positive_roots(const RationalPolynomial& p) {
  if (degree(p) <= 0) return 0;
  if (sign_at_zero(p) == 0) throw Error(ErrorCode::InvalidArgument, "root at zero in Sturm count");
  const auto chain = sturm_chain(p);
  const std::size_t at_zero = variations(chain, sign_at_zero);
  const std::size_t at_inf = variations(chain, sign_at_infinity);
  return at_zero - at_inf;
}

}  // namespace gword::poly
