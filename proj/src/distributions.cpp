#include "entmax/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "entmax/errors.hpp"

namespace entmax {

namespace {

bool is_negative(double x) { return x < 0.0 || std::isnan(x); }
bool is_negative(const Rational& x) { return x.sign() < 0; }

long double log2_choose(std::size_t m, std::size_t k) {
  const auto lm = static_cast<long double>(m);
  const auto lk = static_cast<long double>(k);
  return (std::lgamma(lm + 1.0L) - std::lgamma(lk + 1.0L) - std::lgamma(lm - lk + 1.0L)) /
         std::log(2.0L);
}

// -sum p log2 p of weights / total, accumulated in extended precision.
template <class Range, class ToLd>
double entropy_of(const Range& weights, long double total, ToLd to_ld) {
  long double h = 0.0L;
  for (const auto& w : weights) {
    const long double p = to_ld(w) / total;
    if (p > 0.0L) h -= p * std::log2(p);
  }
  return static_cast<double>(std::max(h, 0.0L));
}

}  // namespace

std::string to_string(Backend backend) {
  return backend == Backend::kRational ? "rational" : "float";
}

// ---- CoeffSeq --------------------------------------------------------------

template <class T>
CoeffSeq<T>::CoeffSeq(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
  declared_order_ = coeffs_.empty() ? 0 : coeffs_.size() - 1;
  validate();
}

template <class T>
CoeffSeq<T>::CoeffSeq(std::vector<T> coeffs, std::size_t declared_order)
    : coeffs_(std::move(coeffs)), declared_order_(declared_order) {
  validate();
}

template <class T>
void CoeffSeq<T>::validate() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (is_negative(coeffs_[i])) {
      std::ostringstream msg;
      msg << "coefficient " << i << " is negative (" << to_double(coeffs_[i]) << ")";
      throw DomainError(msg.str());
    }
  }
  if (!coeffs_.empty() && declared_order_ + 1 < coeffs_.size()) {
    throw DomainError("declared order " + std::to_string(declared_order_) +
                      " is smaller than the sequence degree " +
                      std::to_string(coeffs_.size() - 1));
  }
}

template <class T>
T CoeffSeq<T>::sum() const {
  T total(0);
  for (const auto& c : coeffs_) total += c;
  return total;
}

template <class T>
bool CoeffSeq<T>::all_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const T& c) { return c == T(0); });
}

// ---- FinitePmf / SumConfig -------------------------------------------------

template <class T>
FinitePmf<T>::FinitePmf(std::vector<T> probs) : seq_(std::move(probs)) {
  if (seq_.empty()) throw DomainError("a PMF needs at least one symbol");
  const T total = seq_.sum();
  if constexpr (std::is_same_v<T, Rational>) {
    if (total != Rational(1)) {
      throw DomainError("PMF entries sum to " + total.str() + ", not exactly 1");
    }
  } else {
    if (std::abs(total - 1.0) > kMassTolerance) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "PMF entries sum to " << total << ", not 1 within " << kMassTolerance;
      throw DomainError(msg.str());
    }
  }
}

template <class T>
SumConfig<T>::SumConfig(std::vector<FinitePmf<T>> pmfs) : pmfs_(std::move(pmfs)) {
  if (pmfs_.empty()) throw DomainError("a sum needs at least one summand");
  const std::size_t size = pmfs_.front().alphabet_size();
  for (std::size_t i = 1; i < pmfs_.size(); ++i) {
    if (pmfs_[i].alphabet_size() != size) {
      throw DomainError("summand " + std::to_string(i) + " has alphabet size " +
                        std::to_string(pmfs_[i].alphabet_size()) + ", expected " +
                        std::to_string(size));
    }
  }
}

FinitePmf<Rational> to_exact(const FinitePmf<double>& pmf) {
  std::vector<Rational> exact;
  exact.reserve(pmf.alphabet_size());
  Rational total(0);
  for (double p : pmf.probs()) {
    exact.emplace_back(p);
    total += exact.back();
  }
  for (auto& p : exact) p /= total;
  return FinitePmf<Rational>(std::move(exact));
}

CoeffSeq<Rational> to_exact(const CoeffSeq<double>& seq) {
  std::vector<Rational> exact;
  exact.reserve(seq.size());
  for (double c : seq.coeffs()) exact.emplace_back(c);
  return CoeffSeq<Rational>(std::move(exact), seq.declared_order());
}

CoeffSeq<double> to_float(const CoeffSeq<Rational>& seq) {
  std::vector<double> out;
  out.reserve(seq.size());
  for (const auto& c : seq.coeffs()) out.push_back(c.to_double());
  return CoeffSeq<double>(std::move(out), seq.declared_order());
}

SumConfig<Rational> to_exact(const SumConfig<double>& config) {
  std::vector<FinitePmf<Rational>> pmfs;
  pmfs.reserve(config.n());
  for (const auto& p : config.pmfs()) pmfs.push_back(to_exact(p));
  return SumConfig<Rational>(std::move(pmfs));
}

// ---- BinomialRef -----------------------------------------------------------

template <>
CoeffSeq<Rational> BinomialRef::pmf<Rational>() const {
  std::vector<Rational> out;
  out.reserve(m + 1);
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, m);
  mpz_class c = 1;
  for (std::size_t k = 0; k <= m; ++k) {
    out.emplace_back(mpq_class(c, denom));
    c = c * static_cast<unsigned long>(m - k) / static_cast<unsigned long>(k + 1);
  }
  return CoeffSeq<Rational>(std::move(out));
}

template <>
CoeffSeq<double> BinomialRef::pmf<double>() const {
  std::vector<double> out(m + 1);
  for (std::size_t k = 0; k <= m; ++k) {
    out[k] = static_cast<double>(std::exp2(log2_choose(m, k) - static_cast<long double>(m)));
  }
  return CoeffSeq<double>(std::move(out));
}

// ---- convolution and laws --------------------------------------------------

template <class T>
CoeffSeq<T> convolve(const CoeffSeq<T>& p, const CoeffSeq<T>& q) {
  if (p.empty() || q.empty()) throw DomainError("cannot convolve an empty sequence");
  std::vector<T> out(p.size() + q.size() - 1, T(0));
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == T(0)) continue;
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  if constexpr (std::is_same_v<T, double>) {
    for (auto& c : out) {
      if (c < 0.0) {
        if (c < kNegativeDust) throw DomainError("convolution produced a negative coefficient");
        c = 0.0;
      }
    }
  }
  return CoeffSeq<T>(std::move(out), p.declared_order() + q.declared_order());
}

template <class T>
CoeffSeq<T> sum_law(const SumConfig<T>& config) {
  CoeffSeq<T> law = config[0].as_seq();
  for (std::size_t i = 1; i < config.n(); ++i) law = convolve(law, config[i].as_seq());
  return law;
}

// ---- entropies -------------------------------------------------------------

double shannon_entropy(const CoeffSeq<double>& seq) {
  return shannon_entropy(seq.coeffs());
}

double shannon_entropy(const CoeffSeq<Rational>& seq) {
  const Rational total = seq.sum();
  if (total.is_zero()) throw DomainError("entropy of an all-zero sequence is undefined");
  std::vector<double> normalized;
  normalized.reserve(seq.size());
  for (const auto& c : seq.coeffs()) normalized.push_back((c / total).to_double());
  return entropy_of(normalized, 1.0L, [](double x) { return static_cast<long double>(x); });
}

double shannon_entropy(std::span<const double> weights) {
  long double total = 0.0L;
  for (double w : weights) {
    if (is_negative(w)) throw DomainError("entropy of a sequence with negative entries");
    total += w;
  }
  if (total <= 0.0L) throw DomainError("entropy of an all-zero sequence is undefined");
  return entropy_of(weights, total, [](double x) { return static_cast<long double>(x); });
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary entropy needs p in [0, 1]");
  const double pair[2] = {p, 1.0 - p};
  return shannon_entropy(std::span<const double>(pair));
}

double binomial_entropy(std::size_t m) {
  long double h = 0.0L;
  const auto lm = static_cast<long double>(m);
  for (std::size_t k = 0; k <= m; ++k) {
    const long double surprisal = lm - log2_choose(m, k);
    h += std::exp2(-surprisal) * surprisal;
  }
  return static_cast<double>(h);
}

// ---- run-time tagged -------------------------------------------------------

Backend backend_of(const AnySeq& seq) {
  return std::holds_alternative<CoeffSeq<Rational>>(seq) ? Backend::kRational : Backend::kFloat;
}

AnySeq convolve(const AnySeq& p, const AnySeq& q) {
  if (p.index() != q.index()) {
    throw ConfigurationError("cannot convolve a " + to_string(backend_of(p)) + " sequence with a " +
                             to_string(backend_of(q)) + " sequence");
  }
  return std::visit(
      [&q](const auto& lhs) -> AnySeq {
        using Seq = std::decay_t<decltype(lhs)>;
        return convolve(lhs, std::get<Seq>(q));
      },
      p);
}

double shannon_entropy(const AnySeq& seq) {
  return std::visit([](const auto& s) { return shannon_entropy(s); }, seq);
}

template class CoeffSeq<double>;
template class CoeffSeq<Rational>;
template class FinitePmf<double>;
template class FinitePmf<Rational>;
template class SumConfig<double>;
template class SumConfig<Rational>;
template CoeffSeq<double> convolve(const CoeffSeq<double>&, const CoeffSeq<double>&);
template CoeffSeq<Rational> convolve(const CoeffSeq<Rational>&, const CoeffSeq<Rational>&);
template CoeffSeq<double> sum_law(const SumConfig<double>&);
template CoeffSeq<Rational> sum_law(const SumConfig<Rational>&);

}  // namespace entmax
