#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "entmax/distributions.hpp"
#include "entmax/errors.hpp"

namespace entmax {

/// Closed-form maximum of H(S_n) for n summands on {0..r}: the proved value
/// for r = 2, the conjectured one for r >= 3, and H(B_n) for r = 1.
struct ClosedForm {
  std::size_t n = 0;
  std::size_t r = 0;
  double w0 = 1.0;  // mass of the endpoint residue class; 1 when r = 1
  double bound_bits = 0.0;
};

// w0 = 1 / (1 + (r-1) 2^{-H(B_n) + H(B_{n-1})}); needs r >= 2.
double optimal_weight(std::size_t n, std::size_t r);

// w0 H(B_n) + (1-w0)(H(B_{n-1}) + log2(r-1)) + h(w0); H(B_n) when r = 1.
double conjectured_max(std::size_t n, std::size_t r);

double ternary_bound(std::size_t n);

// Maximizer of g(w) = h(w) + w a + (1-w) b over [0, 1].
double concave_weight_opt(double a, double b);

ClosedForm closed_form(std::size_t n, std::size_t r);

// n-1 summands uniform on {0, 2} and one summand (w0/2, 1-w0, w0/2).
SumConfig<double> attaining_config(std::size_t n);

// Same construction with w0 replaced by the exact rational value of its
// double, so residue parts normalize to binomial laws without rounding.
SumConfig<Rational> attaining_config_exact(std::size_t n);

// Extension of the ternary construction to {0..r}: n-1 summands uniform on
// {0, r}; the last puts w0/2 on each endpoint and (1-w0)/(r-1) on each
// interior symbol. For r = 1 every summand is Bernoulli(1/2). Inferred by
// analogy with r = 2 and checked numerically against conjectured_max.
SumConfig<double> conjectured_attaining_config(std::size_t n, std::size_t r);

struct OptimizerOptions {
  std::size_t max_iterations = 2000;
  double tolerance_bits = 1e-12;
  // Entries below this are rounded to zero before the support-restricted polish.
  double polish_threshold = 1e-7;
  // Iteration cap for the derivative-free fallback.
  std::size_t fallback_iterations = 4000;
  // Worker threads for the starts; 0 picks the hardware concurrency.
  std::size_t threads = 1;
};

struct MaxReport {
  ClosedForm closed_form;
  double attaining_entropy = 0.0;
  double numeric_best = 0.0;
  SumConfig<double> numeric_config;
  double gap_bits = 0.0;  // closed_form.bound_bits - numeric_best
  std::size_t starts_used = 0;
  std::uint64_t seed = 0;
  std::size_t best_start = 0;
  // Starts that ended on the iteration cap (the fallback ran for those).
  std::size_t unconverged_starts = 0;
};

/// Multi-start local ascent of H(S_n) over products of n simplices.
///
/// Each start draws its summands from a symmetric Dirichlet(1) law using a
/// stream keyed by (seed, start index), so the report depends only on
/// (n, r, starts, seed) and never on thread scheduling. Ties keep the lowest
/// start index.
MaxReport numeric_maximize(std::size_t n, std::size_t r, std::size_t starts, std::uint64_t seed,
                           const OptimizerOptions& options = {});

class GridTooLarge : public DomainError {
 public:
  GridTooLarge(std::uint64_t points, std::uint64_t limit);
  std::uint64_t points() const { return points_; }

 private:
  std::uint64_t points_;
};

inline constexpr std::uint64_t kGridLimit = 100'000'000;

struct GridResult {
  double best_entropy = 0.0;
  SumConfig<double> best_config;
  std::uint64_t configs_evaluated = 0;
};

// Number of configurations brute_force_grid would evaluate. Summands are
// exchangeable, so these are multisets of simplex grid points. Saturates at
// UINT64_MAX.
std::uint64_t grid_config_count(std::size_t n, std::size_t r, double grid_step);

/// Exhaustive maximum of H(S_n) over configurations whose entries are
/// multiples of grid_step (which must divide 1). A lower bound on the true
/// maximum.
GridResult brute_force_grid(std::size_t n, std::size_t r, double grid_step,
                            std::uint64_t limit = kGridLimit);

}  // namespace entmax
