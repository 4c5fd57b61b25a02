#include "entmax/roots.hpp"

#include <utility>

#include "entmax/errors.hpp"

namespace entmax {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

template <class T>
Polynomial Polynomial::from(const CoeffSeq<T>& seq) {
  std::vector<Rational> c;
  c.reserve(seq.size());
  for (const auto& x : seq.coeffs()) {
    if constexpr (std::is_same_v<T, Rational>) {
      c.push_back(x);
    } else {
      c.emplace_back(x);
    }
  }
  return Polynomial(std::move(c));
}

template Polynomial Polynomial::from(const CoeffSeq<double>&);
template Polynomial Polynomial::from(const CoeffSeq<Rational>&);

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::sign_normalized() const {
  if (is_zero()) return {};
  Rational scale = lead();
  if (scale.sign() < 0) scale = -scale;
  std::vector<Rational> c = c_;
  for (auto& x : c) x /= scale;
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p) {
  std::vector<Rational> c = p.c_;
  for (auto& x : c) x = -x;
  return Polynomial(std::move(c));
}

DivMod divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw DomainError("polynomial division by zero");
  if (num.is_zero() || num.degree() < den.degree()) return {Polynomial(), num};

  std::vector<Rational> rem = num.coeffs();
  std::vector<Rational> quot(num.degree() - den.degree() + 1);
  const std::size_t dd = den.degree();
  for (std::size_t i = quot.size(); i-- > 0;) {
    const Rational factor = rem[i + dd] / den.lead();
    quot[i] = factor;
    if (factor.is_zero()) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i + j] -= factor * den.coeffs()[j];
  }
  rem.resize(dd);
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder.sign_normalized();
    a = std::move(b);
    b = std::move(r);
  }
  // Monic representative.
  const Polynomial g = a.sign_normalized();
  return g.is_zero() || g.lead().sign() > 0 ? g : -g;
}

std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.sign_normalized());
  Polynomial d = p.derivative().sign_normalized();
  if (d.is_zero()) return chain;
  chain.push_back(std::move(d));
  while (true) {
    // Positive rescaling keeps the sign pattern that Sturm's theorem counts.
    Polynomial r = (-divmod(chain[chain.size() - 2], chain.back()).remainder).sign_normalized();
    if (r.is_zero()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

namespace {

std::size_t sign_variations(const std::vector<int>& signs) {
  std::size_t changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Polynomial require_nonzero(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("the zero polynomial has no well-defined zeros");
  return p;
}

}  // namespace

std::size_t count_distinct_real_roots(const Polynomial& p) {
  require_nonzero(p);
  const auto chain = sturm_chain(p);
  std::vector<int> at_neg_inf;
  std::vector<int> at_pos_inf;
  for (const auto& q : chain) {
    const int lead = q.lead().sign();
    at_pos_inf.push_back(lead);
    at_neg_inf.push_back(q.degree() % 2 == 0 ? lead : -lead);
  }
  return sign_variations(at_neg_inf) - sign_variations(at_pos_inf);
}

bool real_rooted(const Polynomial& p) {
  require_nonzero(p);
  if (p.degree() == 0) return true;
  // Distinct zeros of p are the zeros of its square-free part p / gcd(p, p').
  const Polynomial g = gcd(p, p.derivative());
  const Polynomial square_free = divmod(p, g).quotient;
  return count_distinct_real_roots(square_free) == square_free.degree();
}

bool real_rooted(const CoeffSeq<double>& seq) { return real_rooted(Polynomial::from(seq)); }
bool real_rooted(const CoeffSeq<Rational>& seq) { return real_rooted(Polynomial::from(seq)); }

bool hurwitz_stable(const Polynomial& p) {
  require_nonzero(p);
  const std::size_t d = p.degree();
  if (d == 0) return true;

  const Polynomial q = p.lead().sign() < 0 ? -p : p;
  // Rows of the Routh table; row 0 holds a_d, a_{d-2}, ..., row 1 a_{d-1}, ...
  const std::size_t width = d / 2 + 1;
  std::vector<Rational> upper(width + 1, Rational(0));
  std::vector<Rational> lower(width + 1, Rational(0));
  for (std::size_t i = 0; i < width; ++i) {
    if (2 * i <= d) upper[i] = q.at_or_zero(d - 2 * i);
    if (2 * i + 1 <= d) lower[i] = q.at_or_zero(d - 2 * i - 1);
  }
  if (upper[0].sign() <= 0) return false;
  for (std::size_t row = 1; row <= d; ++row) {
    if (lower[0].sign() <= 0) return false;
    std::vector<Rational> next(width + 1, Rational(0));
    for (std::size_t i = 0; i < width; ++i) {
      next[i] = (lower[0] * upper[i + 1] - upper[0] * lower[i + 1]) / lower[0];
    }
    upper = std::move(lower);
    lower = std::move(next);
  }
  return true;
}

bool hurwitz_stable(const CoeffSeq<double>& seq) { return hurwitz_stable(Polynomial::from(seq)); }
bool hurwitz_stable(const CoeffSeq<Rational>& seq) {
  return hurwitz_stable(Polynomial::from(seq));
}

}  // namespace entmax
