#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>

#include "entmax/maximizer.hpp"

namespace entmax {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_choose(std::uint64_t n, std::uint64_t k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c.fits_ulong_p() ? c.get_ui() : kSaturated;
}

std::size_t grid_divisions(double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 1.0)) {
    throw DomainError("grid step must lie in (0, 1]");
  }
  const double divisions = std::round(1.0 / grid_step);
  if (std::abs(divisions * grid_step - 1.0) > 1e-9 || divisions > 1e9) {
    throw DomainError("grid step " + std::to_string(grid_step) + " does not divide 1");
  }
  return static_cast<std::size_t>(divisions);
}

// All (r+1)-part compositions of `divisions`, scaled to probabilities.
std::vector<std::vector<double>> simplex_points(std::size_t r, std::size_t divisions) {
  std::vector<std::vector<double>> points;
  std::vector<std::size_t> counts(r + 1, 0);
  auto rec = [&](auto&& self, std::size_t slot, std::size_t left) -> void {
    if (slot == r) {
      counts[slot] = left;
      std::vector<double> p(r + 1);
      for (std::size_t x = 0; x <= r; ++x) {
        p[x] = static_cast<double>(counts[x]) / static_cast<double>(divisions);
      }
      points.push_back(std::move(p));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[slot] = c;
      self(self, slot + 1, left - c);
    }
  };
  rec(rec, 0, divisions);
  return points;
}

}  // namespace

GridTooLarge::GridTooLarge(std::uint64_t points, std::uint64_t limit)
    : DomainError("grid has " +
                  (points == kSaturated ? std::string("more than 1.8e19") : std::to_string(points)) +
                  " configurations, above the limit of " + std::to_string(limit)),
      points_(points) {}

std::uint64_t grid_config_count(std::size_t n, std::size_t r, double grid_step) {
  if (n < 1) throw DomainError("need at least one summand (n >= 1)");
  if (r < 1) throw DomainError("need r >= 1");
  const std::size_t divisions = grid_divisions(grid_step);
  const std::uint64_t per_summand = saturating_choose(divisions + r, r);
  if (per_summand == kSaturated) return kSaturated;
  return saturating_choose(per_summand + n - 1, n);
}

GridResult brute_force_grid(std::size_t n, std::size_t r, double grid_step, std::uint64_t limit) {
  const std::uint64_t count = grid_config_count(n, r, grid_step);
  if (count > limit) throw GridTooLarge(count, limit);

  const auto points = simplex_points(r, grid_divisions(grid_step));
  const std::size_t m = points.size();

  // Nondecreasing index tuples enumerate each multiset once. partial[i] is
  // the law of the first i summands, so advancing index i only recomputes
  // the tail of the stack.
  std::vector<std::size_t> idx(n, 0);
  std::vector<std::vector<double>> partial(n + 1);
  partial[0] = {1.0};
  auto rebuild_from = [&](std::size_t i) {
    for (std::size_t k = i; k < n; ++k) {
      const auto& a = partial[k];
      const auto& b = points[idx[k]];
      std::vector<double> out(a.size() + b.size() - 1, 0.0);
      for (std::size_t u = 0; u < a.size(); ++u) {
        if (a[u] == 0.0) continue;
        for (std::size_t v = 0; v < b.size(); ++v) out[u + v] += a[u] * b[v];
      }
      partial[k + 1] = std::move(out);
    }
  };

  double best = -1.0;
  std::vector<std::size_t> best_idx = idx;
  std::uint64_t evaluated = 0;
  rebuild_from(0);
  while (true) {
    long double h = 0.0L;
    for (double q : partial[n]) {
      if (q > 0.0) h -= static_cast<long double>(q) * std::log2(static_cast<long double>(q));
    }
    ++evaluated;
    if (static_cast<double>(h) > best) {
      best = static_cast<double>(h);
      best_idx = idx;
    }

    std::size_t pos = n;
    while (pos > 0 && idx[pos - 1] == m - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t k = pos; k < n; ++k) idx[k] = idx[pos - 1];
    rebuild_from(pos - 1);
  }

  std::vector<FinitePmf<double>> pmfs;
  for (std::size_t i : best_idx) pmfs.emplace_back(points[i]);
  SumConfig<double> config(std::move(pmfs));
  return GridResult{.best_entropy = shannon_entropy(sum_law(config)),
                    .best_config = std::move(config),
                    .configs_evaluated = evaluated};
}

}  // namespace entmax
