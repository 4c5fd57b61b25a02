#pragma once

#include <cstddef>
#include <vector>

#include "entmax/distributions.hpp"

namespace entmax {

// Relative slack used by float-backend inequality tests, in favour of "holds".
inline constexpr double kInequalitySlack = 1e-12;

/// P(z) = sum_j z^j P_j(z^r_mod). Part j collects the coefficients at indices
/// congruent to j mod r_mod; part_masses[j] is its total.
template <class T>
struct ResidueSplit {
  std::size_t r_mod = 0;
  std::vector<CoeffSeq<T>> parts;
  std::vector<T> part_masses;

  CoeffSeq<T> interleave() const;
};

template <class T>
ResidueSplit<T> residue_decompose(const CoeffSeq<T>& seq, std::size_t r_mod);

// Even/odd split of the law of a ternary sum: parts (e_0..e_n), (o_0..o_{n-1}).
template <class T>
ResidueSplit<T> parity_split(const SumConfig<T>& config);

template <class T>
bool is_log_concave(const CoeffSeq<T>& seq);

// Indices k in 1..m-1 where k(m-k)u_k^2 >= (k+1)(m-k+1)u_{k-1}u_{k+1} fails.
template <class T>
std::vector<std::size_t> ulc_violations(const CoeffSeq<T>& seq, std::size_t m);

template <class T>
bool is_ulc(const CoeffSeq<T>& seq, std::size_t m) {
  return ulc_violations(seq, m).empty();
}

template <class T>
bool is_ulc(const CoeffSeq<T>& seq) {
  return is_ulc(seq, seq.declared_order());
}

struct ParityEntropyReport {
  double w = 0.0;           // P(J = 0)
  double h_even = 0.0;      // H(K | J = 0)
  double h_odd = 0.0;       // H(K | J = 1)
  double bound_even = 0.0;  // H(B_n)
  double bound_odd = 0.0;   // H(B_{n-1})
  // A residue class of zero mass has no conditional law; its entropy is
  // reported as 0 and flagged here.
  bool even_class_empty = false;
  bool odd_class_empty = false;

  double conditional_entropy() const { return w * h_even + (1.0 - w) * h_odd; }
};

template <class T>
ParityEntropyReport conditional_entropy_report(const SumConfig<T>& config);

}  // namespace entmax
