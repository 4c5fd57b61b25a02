#include <cmath>

#include "entmax/maximizer.hpp"

namespace entmax {

namespace {

void require_summands(std::size_t n) {
  if (n < 1) throw DomainError("need at least one summand (n >= 1)");
}

}  // namespace

double concave_weight_opt(double a, double b) {
  return 1.0 / (1.0 + std::exp2(b - a));
}

double optimal_weight(std::size_t n, std::size_t r) {
  require_summands(n);
  if (r < 2) throw DomainError("the mixing weight is defined for r >= 2");
  const double gain = binomial_entropy(n) - binomial_entropy(n - 1);
  return 1.0 / (1.0 + static_cast<double>(r - 1) * std::exp2(-gain));
}

double conjectured_max(std::size_t n, std::size_t r) {
  require_summands(n);
  if (r == 0) throw DomainError("alphabet {0} carries no entropy; need r >= 1");
  if (r == 1) return binomial_entropy(n);
  const double w0 = optimal_weight(n, r);
  return w0 * binomial_entropy(n) +
         (1.0 - w0) * (binomial_entropy(n - 1) + std::log2(static_cast<double>(r - 1))) +
         binary_entropy(w0);
}

double ternary_bound(std::size_t n) { return conjectured_max(n, 2); }

ClosedForm closed_form(std::size_t n, std::size_t r) {
  ClosedForm form;
  form.n = n;
  form.r = r;
  form.bound_bits = conjectured_max(n, r);
  form.w0 = r == 1 ? 1.0 : optimal_weight(n, r);
  return form;
}

SumConfig<double> conjectured_attaining_config(std::size_t n, std::size_t r) {
  require_summands(n);
  if (r == 0) throw DomainError("need r >= 1");
  if (r == 1) {
    return SumConfig<double>(std::vector<FinitePmf<double>>(n, FinitePmf<double>({0.5, 0.5})));
  }
  std::vector<double> endpoints(r + 1, 0.0);
  endpoints.front() = endpoints.back() = 0.5;
  std::vector<FinitePmf<double>> pmfs(n - 1, FinitePmf<double>(endpoints));

  const double w0 = optimal_weight(n, r);
  std::vector<double> mixed(r + 1, (1.0 - w0) / static_cast<double>(r - 1));
  mixed.front() = mixed.back() = w0 / 2.0;
  pmfs.emplace_back(std::move(mixed));
  return SumConfig<double>(std::move(pmfs));
}

SumConfig<double> attaining_config(std::size_t n) { return conjectured_attaining_config(n, 2); }

SumConfig<Rational> attaining_config_exact(std::size_t n) {
  require_summands(n);
  const Rational half(1, 2);
  std::vector<FinitePmf<Rational>> pmfs(n - 1, FinitePmf<Rational>({half, Rational(0), half}));
  const Rational w0(optimal_weight(n, 2));
  pmfs.emplace_back(std::vector<Rational>{w0 * half, Rational(1) - w0, w0 * half});
  return SumConfig<Rational>(std::move(pmfs));
}

}  // namespace entmax
