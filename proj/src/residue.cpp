#include "entmax/residue.hpp"

#include <algorithm>
#include <cmath>

#include "entmax/errors.hpp"

namespace entmax {

namespace {

// lhs >= rhs, exactly for rationals and with relative slack for floats.
bool holds_ge(const Rational& lhs, const Rational& rhs) { return lhs >= rhs; }
bool holds_ge(double lhs, double rhs) {
  return lhs >= rhs - kInequalitySlack * std::max(std::abs(lhs), std::abs(rhs));
}

}  // namespace

template <class T>
CoeffSeq<T> ResidueSplit<T>::interleave() const {
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<T> out(total, T(0));
  for (std::size_t j = 0; j < parts.size(); ++j) {
    for (std::size_t k = 0; k < parts[j].size(); ++k) out[j + k * r_mod] = parts[j][k];
  }
  return CoeffSeq<T>(std::move(out));
}

template <class T>
ResidueSplit<T> residue_decompose(const CoeffSeq<T>& seq, std::size_t r_mod) {
  if (r_mod < 2) throw DomainError("residue decomposition needs r_mod >= 2");
  if (seq.empty()) throw DomainError("cannot decompose an empty sequence");

  ResidueSplit<T> split;
  split.r_mod = r_mod;
  split.parts.reserve(r_mod);
  split.part_masses.reserve(r_mod);
  for (std::size_t j = 0; j < r_mod; ++j) {
    std::vector<T> part;
    T mass(0);
    for (std::size_t i = j; i < seq.size(); i += r_mod) {
      part.push_back(seq[i]);
      mass += seq[i];
    }
    split.parts.emplace_back(std::move(part));
    split.part_masses.push_back(std::move(mass));
  }
  return split;
}

template <class T>
ResidueSplit<T> parity_split(const SumConfig<T>& config) {
  if (config.r() != 2) {
    throw DomainError("parity split needs a ternary alphabet, got size " +
                      std::to_string(config.r() + 1));
  }
  return residue_decompose(sum_law(config), 2);
}

template <class T>
bool is_log_concave(const CoeffSeq<T>& seq) {
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    if (!holds_ge(seq[k] * seq[k], seq[k - 1] * seq[k + 1])) return false;
  }
  return true;
}

template <class T>
std::vector<std::size_t> ulc_violations(const CoeffSeq<T>& seq, std::size_t m) {
  if (!seq.empty() && m + 1 < seq.size()) {
    throw DomainError("ULC order " + std::to_string(m) + " is below the sequence degree " +
                      std::to_string(seq.size() - 1));
  }
  std::vector<std::size_t> bad;
  for (std::size_t k = 1; k < m; ++k) {
    const T prev = seq.at_or_zero(k - 1);
    const T next = seq.at_or_zero(k + 1);
    const T mid = seq.at_or_zero(k);
    const T lhs = T(static_cast<long>(k * (m - k))) * mid * mid;
    const T rhs = T(static_cast<long>((k + 1) * (m - k + 1))) * prev * next;
    if (!holds_ge(lhs, rhs)) bad.push_back(k);
  }
  return bad;
}

template <class T>
ParityEntropyReport conditional_entropy_report(const SumConfig<T>& config) {
  const ResidueSplit<T> split = parity_split(config);
  const T total = split.part_masses[0] + split.part_masses[1];

  ParityEntropyReport report;
  report.w = to_double(split.part_masses[0] / total);
  report.bound_even = binomial_entropy(config.n());
  report.bound_odd = binomial_entropy(config.n() - 1);
  report.even_class_empty = split.part_masses[0] == T(0);
  report.odd_class_empty = split.part_masses[1] == T(0);
  if (!report.even_class_empty) report.h_even = shannon_entropy(split.parts[0]);
  if (!report.odd_class_empty) report.h_odd = shannon_entropy(split.parts[1]);
  return report;
}

#define ENTMAX_INSTANTIATE(T)                                                   \
  template struct ResidueSplit<T>;                                              \
  template ResidueSplit<T> residue_decompose(const CoeffSeq<T>&, std::size_t);  \
  template ResidueSplit<T> parity_split(const SumConfig<T>&);                   \
  template bool is_log_concave(const CoeffSeq<T>&);                             \
  template std::vector<std::size_t> ulc_violations(const CoeffSeq<T>&, std::size_t); \
  template ParityEntropyReport conditional_entropy_report(const SumConfig<T>&);

ENTMAX_INSTANTIATE(double)
ENTMAX_INSTANTIATE(Rational)
#undef ENTMAX_INSTANTIATE

}  // namespace entmax
