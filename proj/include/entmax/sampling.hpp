#pragma once

#include <cstdint>
#include <random>

#include "entmax/distributions.hpp"

namespace entmax {

// Independent engine for substream `stream` of `seed`.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

// Symmetric Dirichlet(1) draw on {0..r}.
std::vector<double> dirichlet_pmf(std::size_t r, std::mt19937_64& engine);

// Dirichlet(1) draw whose entries are each zeroed with probability
// `zero_probability` and then renormalized. Redrawn if every entry vanishes.
std::vector<double> sparse_dirichlet_pmf(std::size_t r, double zero_probability,
                                         std::mt19937_64& engine);

/// Random configuration of n summands on {0..r}. With a positive
/// zero_probability every summand is a sparse draw.
SumConfig<double> random_config(std::size_t n, std::size_t r, std::mt19937_64& engine,
                                double zero_probability = 0.0);

}  // namespace entmax
