#include "entmax/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "entmax/errors.hpp"

namespace entmax {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw DomainError("invalid rational literal '" + std::string(text) + "'");
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) bad_literal(whole);
  mpz_class z(std::string(s), 10);
  return negative ? mpz_class(-z) : z;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite value has no rational image");
  value_ = value;  // mpq_set_d is exact
}

double Rational::to_double() const {
  // get_d truncates toward zero; step one ulp outward when that is closer.
  const double toward_zero = value_.get_d();
  const mpq_class below(toward_zero);
  if (below == value_) return toward_zero;
  const double outward =
      std::nextafter(toward_zero, sgn(value_) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(outward)) return toward_zero;
  const mpq_class gap_in = abs(value_ - below);
  const mpq_class gap_out = abs(mpq_class(outward) - value_);
  const int c = cmp(gap_out, gap_in);
  if (c < 0) return outward;
  if (c > 0) return toward_zero;
  int exp_unused = 0;
  const double mantissa = std::frexp(toward_zero, &exp_unused) * 0x1.0p53;
  return std::fmod(mantissa, 2.0) == 0.0 ? toward_zero : outward;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) bad_literal(text);

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
    return Rational(mpq_class(num, den));
  }

  std::string_view mantissa = s;
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = s.substr(0, e);
    const mpz_class exp_z = parse_integer(s.substr(e + 1), text);
    if (!exp_z.fits_slong_p() || abs(exp_z) > 100000) bad_literal(text);
    exponent = exp_z.get_si();
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    const std::string_view int_part = mantissa.substr(0, dot);
    const std::string_view frac_part = mantissa.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_literal(text);
    if (!int_part.empty() && !all_digits(int_part)) bad_literal(text);
    if (!frac_part.empty() && !all_digits(frac_part)) bad_literal(text);
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) bad_literal(text);
    digits = std::string(mantissa);
  }

  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent >= 0 ? Rational(mpq_class(num * scale)) : Rational(mpq_class(num, scale));
}

}  // namespace entmax
