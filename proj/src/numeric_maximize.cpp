#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <thread>

#include "entmax/maximizer.hpp"
#include "entmax/sampling.hpp"

namespace entmax {

namespace {

using Vec = std::vector<double>;

// Armijo sufficient-increase constant.
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-16;
constexpr double kMaxStep = 1e6;

Vec convolve_raw(const Vec& a, const Vec& b) {
  Vec out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

double entropy_raw(const Vec& q) {
  long double h = 0.0L;
  for (double x : q) {
    if (x > 0.0) h -= static_cast<long double>(x) * std::log2(static_cast<long double>(x));
  }
  return static_cast<double>(h);
}

/// Unconstrained parameters of n summands. Each summand's law is the
/// exponential normalization of its logits over the active support;
/// inactive symbols carry probability exactly zero.
struct Logits {
  std::vector<Vec> theta;
  std::vector<std::vector<char>> active;

  std::vector<Vec> probs() const {
    std::vector<Vec> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t x = 0; x < theta[i].size(); ++x) {
        if (active[i][x]) top = std::max(top, theta[i][x]);
      }
      Vec p(theta[i].size(), 0.0);
      double total = 0.0;
      for (std::size_t x = 0; x < p.size(); ++x) {
        if (active[i][x]) total += (p[x] = std::exp(theta[i][x] - top));
      }
      for (auto& v : p) v /= total;
      out[i] = std::move(p);
    }
    return out;
  }
};

double objective(const std::vector<Vec>& probs) {
  Vec q = probs[0];
  for (std::size_t i = 1; i < probs.size(); ++i) q = convolve_raw(q, probs[i]);
  return entropy_raw(q);
}

double objective(const Logits& point) { return objective(point.probs()); }

// dH(S_n)/dp_i[x] by the chain rule through the product of generating
// polynomials: dq_s/dp_i[x] is the coefficient s-x of the product of all the
// other summands' polynomials.
std::vector<Vec> entropy_gradient(const std::vector<Vec>& probs) {
  const std::size_t n = probs.size();
  std::vector<Vec> prefix(n + 1);
  std::vector<Vec> suffix(n + 1);
  prefix[0] = Vec{1.0};
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = convolve_raw(prefix[i], probs[i]);
  suffix[n] = Vec{1.0};
  for (std::size_t i = n; i-- > 0;) suffix[i] = convolve_raw(probs[i], suffix[i + 1]);

  const Vec& q = prefix[n];
  Vec dq(q.size(), 0.0);
  for (std::size_t s = 0; s < q.size(); ++s) {
    // A zero-mass outcome only receives contributions from zero entries.
    if (q[s] > 0.0) dq[s] = -(std::log2(q[s]) + 1.0 / std::numbers::ln2);
  }

  std::vector<Vec> grad(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec others = convolve_raw(prefix[i], suffix[i + 1]);
    grad[i].assign(probs[i].size(), 0.0);
    for (std::size_t x = 0; x < probs[i].size(); ++x) {
      double g = 0.0;
      for (std::size_t t = 0; t < others.size(); ++t) g += others[t] * dq[t + x];
      grad[i][x] = g;
    }
  }
  return grad;
}

struct AscentResult {
  double value;
  bool converged;
};

// Entropic mirror ascent with backtracking: the logits move along the
// centred p-gradient, which is an ascent direction with slope sum p d^2.
AscentResult ascend(Logits& point, const OptimizerOptions& options) {
  double value = objective(point);
  double step = 1.0;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    const auto probs = point.probs();
    const auto grad = entropy_gradient(probs);

    std::vector<Vec> dir(grad.size());
    double slope = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      double mean = 0.0;
      for (std::size_t x = 0; x < grad[i].size(); ++x) {
        if (point.active[i][x]) mean += probs[i][x] * grad[i][x];
      }
      dir[i].assign(grad[i].size(), 0.0);
      for (std::size_t x = 0; x < grad[i].size(); ++x) {
        if (!point.active[i][x]) continue;
        dir[i][x] = grad[i][x] - mean;
        slope += probs[i][x] * dir[i][x] * dir[i][x];
      }
    }
    if (!(slope > 0.0) || !std::isfinite(slope)) return {value, std::isfinite(value)};

    double t = std::min(step * 2.0, kMaxStep);
    Logits trial = point;
    double trial_value = value;
    while (true) {
      for (std::size_t i = 0; i < dir.size(); ++i) {
        for (std::size_t x = 0; x < dir[i].size(); ++x) {
          trial.theta[i][x] = point.theta[i][x] + t * dir[i][x];
        }
      }
      trial_value = objective(trial);
      if (std::isfinite(trial_value) && trial_value >= value + kArmijo * t * slope) break;
      t *= 0.5;
      if (t < kMinStep) return {value, true};
    }
    const double improvement = trial_value - value;
    point = std::move(trial);
    value = trial_value;
    step = t;
    if (improvement < options.tolerance_bits) return {value, true};
  }
  return {value, false};
}

// Derivative-free fallback over the active logits (Nelder-Mead simplex).
double nelder_mead(Logits& point, const OptimizerOptions& options) {
  std::vector<std::pair<std::size_t, std::size_t>> coords;
  for (std::size_t i = 0; i < point.theta.size(); ++i) {
    for (std::size_t x = 0; x < point.theta[i].size(); ++x) {
      if (point.active[i][x]) coords.emplace_back(i, x);
    }
  }
  const std::size_t dim = coords.size();
  auto eval = [&](const Vec& v) {
    Logits p = point;
    for (std::size_t k = 0; k < dim; ++k) p.theta[coords[k].first][coords[k].second] = v[k];
    const double f = objective(p);
    return std::isfinite(f) ? -f : std::numeric_limits<double>::infinity();
  };

  Vec origin(dim);
  for (std::size_t k = 0; k < dim; ++k) origin[k] = point.theta[coords[k].first][coords[k].second];
  std::vector<Vec> simplex(dim + 1, origin);
  for (std::size_t k = 0; k < dim; ++k) simplex[k + 1][k] += 0.5;
  Vec cost(dim + 1);
  for (std::size_t k = 0; k <= dim; ++k) cost[k] = eval(simplex[k]);

  std::vector<std::size_t> order(dim + 1);
  for (std::size_t iter = 0; iter < options.fallback_iterations; ++iter) {
    for (std::size_t k = 0; k <= dim; ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cost[a] < cost[b] || (cost[a] == cost[b] && a < b);
    });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[dim - 1];
    if (cost[worst] - cost[best] < options.tolerance_bits) break;

    Vec centroid(dim, 0.0);
    for (std::size_t k = 0; k <= dim; ++k) {
      if (k == worst) continue;
      for (std::size_t c = 0; c < dim; ++c) centroid[c] += simplex[k][c] / static_cast<double>(dim);
    }
    auto along = [&](double coef) {
      Vec v(dim);
      for (std::size_t c = 0; c < dim; ++c) v[c] = centroid[c] + coef * (simplex[worst][c] - centroid[c]);
      return v;
    };

    Vec reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < cost[best]) {
      Vec expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        cost[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        cost[worst] = fr;
      }
    } else if (fr < cost[second]) {
      simplex[worst] = std::move(reflected);
      cost[worst] = fr;
    } else {
      Vec contracted = fr < cost[worst] ? along(-0.5) : along(0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, cost[worst])) {
        simplex[worst] = std::move(contracted);
        cost[worst] = fc;
      } else {
        for (std::size_t k = 0; k <= dim; ++k) {
          if (k == best) continue;
          for (std::size_t c = 0; c < dim; ++c) {
            simplex[k][c] = simplex[best][c] + 0.5 * (simplex[k][c] - simplex[best][c]);
          }
          cost[k] = eval(simplex[k]);
        }
      }
    }
  }

  const auto best_it = std::min_element(cost.begin(), cost.end());
  const Vec& best = simplex[static_cast<std::size_t>(best_it - cost.begin())];
  for (std::size_t k = 0; k < dim; ++k) point.theta[coords[k].first][coords[k].second] = best[k];
  return -*best_it;
}

Logits random_start(std::size_t n, std::size_t r, std::uint64_t seed, std::size_t start) {
  auto engine = substream(seed, start);
  Logits point;
  point.active.assign(n, std::vector<char>(r + 1, 1));
  for (std::size_t i = 0; i < n; ++i) {
    Vec p = dirichlet_pmf(r, engine);
    for (auto& v : p) v = std::log(std::max(v, std::numeric_limits<double>::min()));
    point.theta.push_back(std::move(p));
  }
  return point;
}

struct StartOutcome {
  double value;
  std::vector<Vec> probs;
  bool converged;
};

StartOutcome run_start(std::size_t n, std::size_t r, std::uint64_t seed, std::size_t start,
                       const OptimizerOptions& options) {
  Logits point = random_start(n, r, seed, start);
  AscentResult ascent = ascend(point, options);
  if (!ascent.converged) ascent.value = std::max(ascent.value, nelder_mead(point, options));

  StartOutcome outcome{objective(point), point.probs(), ascent.converged};

  // Boundary polish: drop near-zero symbols and re-optimize on what remains.
  Logits polished = point;
  bool changed = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x <= r; ++x) {
      if (polished.active[i][x] && outcome.probs[i][x] < options.polish_threshold) {
        polished.active[i][x] = 0;
        changed = true;
      }
    }
  }
  if (changed) {
    ascend(polished, options);
    const double value = objective(polished);
    if (value >= outcome.value) {
      outcome.value = value;
      outcome.probs = polished.probs();
    }
  }
  return outcome;
}

}  // namespace

MaxReport numeric_maximize(std::size_t n, std::size_t r, std::size_t starts, std::uint64_t seed,
                           const OptimizerOptions& options) {
  if (n < 1) throw DomainError("need at least one summand (n >= 1)");
  if (r < 1) throw DomainError("need r >= 1");
  if (starts < 1) throw DomainError("need at least one start");

  std::vector<std::optional<StartOutcome>> outcomes(starts);
  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp<std::size_t>(threads, 1, starts);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    try {
      for (std::size_t k = next++; k < starts && !failed; k = next++) {
        outcomes[k] = run_start(n, r, seed, k, options);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Reduce in start order so the winner never depends on scheduling.
  std::size_t best = 0;
  std::size_t unconverged = 0;
  for (std::size_t k = 0; k < starts; ++k) {
    if (!outcomes[k]->converged) ++unconverged;
    if (outcomes[k]->value > outcomes[best]->value) best = k;
  }

  std::vector<FinitePmf<double>> pmfs;
  for (auto& p : outcomes[best]->probs) pmfs.emplace_back(std::move(p));
  SumConfig<double> config(std::move(pmfs));

  const ClosedForm form = closed_form(n, r);
  const double numeric_best = shannon_entropy(sum_law(config));
  return MaxReport{
      .closed_form = form,
      .attaining_entropy = shannon_entropy(sum_law(conjectured_attaining_config(n, r))),
      .numeric_best = numeric_best,
      .numeric_config = std::move(config),
      .gap_bits = form.bound_bits - numeric_best,
      .starts_used = starts,
      .seed = seed,
      .best_start = best,
      .unconverged_starts = unconverged,
  };
}

}  // namespace entmax
