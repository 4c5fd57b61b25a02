#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "entmax/rational.hpp"

namespace entmax {

enum class Backend { kRational, kFloat };

template <class T>
constexpr Backend backend_of() {
  return std::is_same_v<T, Rational> ? Backend::kRational : Backend::kFloat;
}

std::string to_string(Backend backend);

// Tolerance on the total mass of a float PMF.
inline constexpr double kMassTolerance = 1e-12;
// Negative convolution dust above this is clamped to zero; below it is an error.
inline constexpr double kNegativeDust = -1e-15;

/// Nonnegative coefficient sequence, u_0 .. u_{len-1}, not necessarily
/// normalized. The declared order m may exceed len-1; the missing tail is
/// implicitly zero.
template <class T>
class CoeffSeq {
 public:
  CoeffSeq() = default;
  explicit CoeffSeq(std::vector<T> coeffs);
  CoeffSeq(std::vector<T> coeffs, std::size_t declared_order);

  std::span<const T> coeffs() const { return coeffs_; }
  const std::vector<T>& values() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  const T& operator[](std::size_t i) const { return coeffs_[i]; }
  // Entry i, or zero past the stored tail.
  T at_or_zero(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : T(0); }
  std::size_t declared_order() const { return declared_order_; }
  T sum() const;
  bool all_zero() const;

  friend bool operator==(const CoeffSeq&, const CoeffSeq&) = default;

 private:
  void validate() const;

  std::vector<T> coeffs_;
  std::size_t declared_order_ = 0;
};

/// Law of one summand on {0, ..., r}.
template <class T>
class FinitePmf {
 public:
  explicit FinitePmf(std::vector<T> probs);

  std::span<const T> probs() const { return seq_.coeffs(); }
  const CoeffSeq<T>& as_seq() const { return seq_; }
  std::size_t alphabet_size() const { return seq_.size(); }
  std::size_t max_symbol() const { return seq_.size() - 1; }
  const T& operator[](std::size_t i) const { return seq_[i]; }

  friend bool operator==(const FinitePmf&, const FinitePmf&) = default;

 private:
  CoeffSeq<T> seq_;
};

// Exact image of a float PMF. The entries are converted without rounding and
// then divided by their exact total so that the result sums to exactly one.
FinitePmf<Rational> to_exact(const FinitePmf<double>& pmf);
CoeffSeq<Rational> to_exact(const CoeffSeq<double>& seq);
CoeffSeq<double> to_float(const CoeffSeq<Rational>& seq);

/// Ordered list of n >= 1 independent summands sharing one alphabet.
template <class T>
class SumConfig {
 public:
  explicit SumConfig(std::vector<FinitePmf<T>> pmfs);

  std::size_t n() const { return pmfs_.size(); }
  // Largest symbol r (alphabet is {0..r}).
  std::size_t r() const { return pmfs_.front().max_symbol(); }
  const std::vector<FinitePmf<T>>& pmfs() const { return pmfs_; }
  const FinitePmf<T>& operator[](std::size_t i) const { return pmfs_[i]; }

 private:
  std::vector<FinitePmf<T>> pmfs_;
};

SumConfig<Rational> to_exact(const SumConfig<double>& config);

/// Bin(m, 1/2).
struct BinomialRef {
  std::size_t m = 0;

  template <class T>
  CoeffSeq<T> pmf() const;
};

template <>
CoeffSeq<double> BinomialRef::pmf<double>() const;
template <>
CoeffSeq<Rational> BinomialRef::pmf<Rational>() const;

template <class T>
CoeffSeq<T> convolve(const CoeffSeq<T>& p, const CoeffSeq<T>& q);
template <class T>
CoeffSeq<T> convolve(const FinitePmf<T>& p, const FinitePmf<T>& q) {
  return convolve(p.as_seq(), q.as_seq());
}

// Law of S_n = X_1 + ... + X_n; length n*r + 1.
template <class T>
CoeffSeq<T> sum_law(const SumConfig<T>& config);

// Entropy in bits of the normalized sequence; 0 log 0 := 0.
double shannon_entropy(const CoeffSeq<double>& seq);
double shannon_entropy(const CoeffSeq<Rational>& seq);
template <class T>
double shannon_entropy(const FinitePmf<T>& pmf) {
  return shannon_entropy(pmf.as_seq());
}
double shannon_entropy(std::span<const double> weights);

double binary_entropy(double p);

// H(B_m), by exact summation over k = 0..m.
double binomial_entropy(std::size_t m);

/// Sequence whose backend is only known at run time (parsed input).
using AnySeq = std::variant<CoeffSeq<double>, CoeffSeq<Rational>>;

Backend backend_of(const AnySeq& seq);
AnySeq convolve(const AnySeq& p, const AnySeq& q);
double shannon_entropy(const AnySeq& seq);

}  // namespace entmax
