#include "entmax/sampling.hpp"

#include <cmath>

namespace entmax {

namespace {

double unit_open(std::mt19937_64& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return std::mt19937_64(seq);
}

std::vector<double> dirichlet_pmf(std::size_t r, std::mt19937_64& engine) {
  std::vector<double> p(r + 1);
  double total = 0.0;
  for (auto& v : p) total += (v = -std::log(unit_open(engine)));
  if (total <= 0.0) {
    // Every draw was exactly 1; happens with probability ~2^-53 per entry.
    p.assign(r + 1, 1.0);
    total = static_cast<double>(r + 1);
  }
  for (auto& v : p) v /= total;
  return p;
}

std::vector<double> sparse_dirichlet_pmf(std::size_t r, double zero_probability,
                                         std::mt19937_64& engine) {
  while (true) {
    std::vector<double> p = dirichlet_pmf(r, engine);
    double total = 0.0;
    for (auto& v : p) {
      if (unit_open(engine) <= zero_probability) v = 0.0;
      total += v;
    }
    if (total <= 0.0) continue;
    for (auto& v : p) v /= total;
    return p;
  }
}

SumConfig<double> random_config(std::size_t n, std::size_t r, std::mt19937_64& engine,
                                double zero_probability) {
  std::vector<FinitePmf<double>> pmfs;
  pmfs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pmfs.emplace_back(zero_probability > 0.0 ? sparse_dirichlet_pmf(r, zero_probability, engine)
                                             : dirichlet_pmf(r, engine));
  }
  return SumConfig<double>(std::move(pmfs));
}

}  // namespace entmax
