#pragma once

#include <cstddef>
#include <vector>

#include "entmax/distributions.hpp"
#include "entmax/rational.hpp"

namespace entmax {

/// Real polynomial with exact rational coefficients, c[0] + c[1] z + ...
/// Unlike CoeffSeq, coefficients may be negative. Leading zeros are trimmed,
/// so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  template <class T>
  static Polynomial from(const CoeffSeq<T>& seq);

  bool is_zero() const { return c_.empty(); }
  // Degree of a nonzero polynomial.
  std::size_t degree() const { return c_.size() - 1; }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational at_or_zero(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Polynomial derivative() const;
  // Multiplies by a positive constant so that the leading coefficient is +-1.
  Polynomial sign_normalized() const;

  friend Polynomial operator-(const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};
DivMod divmod(const Polynomial& num, const Polynomial& den);
// Monic greatest common divisor; zero when both inputs are zero.
Polynomial gcd(Polynomial a, Polynomial b);

// Sturm chain p, p', -rem(p, p'), ... ending at the last nonzero remainder.
std::vector<Polynomial> sturm_chain(const Polynomial& p);
// Number of distinct real zeros, from the sign variations of the Sturm chain
// at -inf and +inf.
std::size_t count_distinct_real_roots(const Polynomial& p);

bool real_rooted(const Polynomial& p);
bool real_rooted(const CoeffSeq<double>& seq);
bool real_rooted(const CoeffSeq<Rational>& seq);

// Strict Hurwitz stability (all zeros in the open left half-plane) by the
// Routh table. A vanishing pivot counts as unstable.
bool hurwitz_stable(const Polynomial& p);
bool hurwitz_stable(const CoeffSeq<double>& seq);
bool hurwitz_stable(const CoeffSeq<Rational>& seq);

}  // namespace entmax
