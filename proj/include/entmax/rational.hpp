#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace entmax {

/// Exact rational number backed by GMP.
///
/// Every finite IEEE double is a dyadic rational, so the conversion from
/// double is exact. Parsing accepts integers, fractions ("1/3"), and
/// decimal or scientific literals ("0.15", "9e-2"), all read exactly.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(double value);
  explicit Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
  }

  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return value_; }
  // Nearest double, ties to even.
  double to_double() const;
  std::string str() const { return value_.get_str(); }
  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

}  // namespace entmax
