#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "entmax/distributions.hpp"
#include "entmax/maximizer.hpp"

namespace entmax {

/// Outcome of one reproducible claim. `details` holds every compared
/// quantity (observed and expected side by side) and the tolerances used;
/// booleans are stored as 0/1.
struct CheckResult {
  std::string claim_id;
  bool passed = false;
  std::map<std::string, double> details;
};

inline constexpr double kBoundTolerance = 1e-9;
inline constexpr double kGapTolerance = 1e-4;
inline constexpr double kFloatCoeffTolerance = 1e-12;

// p(z) = 0.15 + 0.06 z + 0.70 z^2 + 0.09 z^3, cubed and split mod 3.
CheckResult reproduce_counterexample();

// Equality of the attaining configuration with the ternary bound, exact
// binomial parity parts, and an optimizer run that neither beats the bound
// nor falls short of it by more than kGapTolerance.
CheckResult check_theorem(std::size_t n, std::size_t starts, std::uint64_t seed,
                          const OptimizerOptions& options = {});

// Per-entry zeroing probability for the forced-zero half of the corpus.
inline constexpr double kForcedZeroProbability = 0.15;

struct ParityCorpusStats {
  std::size_t configs = 0;
  std::size_t ulc_even_violations = 0;  // (e_k) not ULC(n), exact arithmetic
  std::size_t ulc_odd_violations = 0;   // (o_k) not ULC(n-1)
  std::size_t entropy_even_violations = 0;  // H(K|J=0) > H(B_n) + 1e-9
  std::size_t entropy_odd_violations = 0;   // H(K|J=1) > H(B_{n-1}) + 1e-9
  std::size_t bound_violations = 0;         // H(S_n) > ternary_bound(n) + 1e-9
  double max_excess_even = -1.0;  // max of H(K|J=0) - H(B_n)
  double max_excess_odd = -1.0;
  double max_excess_total = -1.0;  // max of H(S_n) - ternary_bound(n)
};

/// Random ternary corpus: `trials` configurations for every n in 1..n_max.
/// Even trial indices draw plain Dirichlet(1) summands, odd ones the forced-
/// zero variant. Configuration (n, t) uses substream n * 2^32 + t of `seed`.
ParityCorpusStats parity_corpus(std::size_t trials, std::size_t n_max, std::uint64_t seed);

CheckResult check_parity_proposition(std::size_t trials, std::size_t n_max, std::uint64_t seed);

struct FigureData {
  CoeffSeq<Rational> exact;  // law of S_n, rational backend
  CoeffSeq<double> pmf;
  std::vector<std::size_t> residue_class;  // value mod 2: 0 even, 1 odd
};

// Law of S_n under the attaining configuration, tagged by parity.
FigureData figure_distribution(std::size_t n);

CheckResult check_figure(std::size_t n = 4);

struct VerifyOptions {
  std::size_t trials = 10000;
  std::size_t n_max = 8;
  std::size_t theorem_n_max = 8;
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  OptimizerOptions optimizer;
};

// "example-r3", "prop-parity", "fig-1", "thm-main-n1" .. "thm-main-n{theorem_n_max}".
std::vector<std::string> claim_ids(const VerifyOptions& options = {});

// Runs one claim by id; throws DomainError for an unknown id.
CheckResult run_claim(const std::string& claim_id, const VerifyOptions& options = {});

std::vector<CheckResult> run_all_claims(const VerifyOptions& options = {});

}  // namespace entmax
