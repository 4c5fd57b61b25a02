#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "entmax/distributions.hpp"
#include "entmax/errors.hpp"
#include "entmax/sampling.hpp"

using namespace entmax;

namespace {

CoeffSeq<double> seq(std::vector<double> v) { return CoeffSeq<double>(std::move(v)); }

// Law of the sum by enumerating every outcome tuple; independent of convolve.
std::vector<double> enumerate_sum(const SumConfig<double>& config) {
  const std::size_t n = config.n();
  const std::size_t r = config.r();
  std::vector<double> law(n * r + 1, 0.0);
  std::vector<std::size_t> x(n, 0);
  while (true) {
    double p = 1.0;
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      p *= config[i][x[i]];
      s += x[i];
    }
    law[s] += p;
    std::size_t i = 0;
    while (i < n && x[i] == r) x[i++] = 0;
    if (i == n) break;
    ++x[i];
  }
  return law;
}

}  // namespace

TEST_CASE("convolve: identity and symmetric square") {
  CHECK(convolve(seq({1.0}), seq({0.5, 0.5})).values() == std::vector<double>{0.5, 0.5});
  CHECK(convolve(seq({0.5, 0, 0.5}), seq({0.5, 0, 0.5})).values() ==
        std::vector<double>{0.25, 0, 0.5, 0, 0.25});
}

TEST_CASE("convolve: length and mass multiply") {
  const auto p = seq({0.2, 0.3, 0.5});
  const auto q = seq({1.0, 2.0});
  const auto pq = convolve(p, q);
  CHECK(pq.size() == p.size() + q.size() - 1);
  CHECK(pq.sum() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(pq.declared_order() == 3);
}

TEST_CASE("convolve: rational cube of the r = 3 example polynomial") {
  const CoeffSeq<Rational> p({Rational::parse("0.15"), Rational::parse("0.06"),
                              Rational::parse("0.70"), Rational::parse("0.09")});
  const auto cube = convolve(convolve(p, p), p);
  REQUIRE(cube.size() == 10);
  CHECK(cube[0] == Rational::parse("0.003375"));
  CHECK(cube[9] == Rational::parse("0.000729"));
  CHECK(cube.sum() == Rational(1));
}

TEST_CASE("convolve: run-time backends must match") {
  const AnySeq f = seq({0.5, 0.5});
  const AnySeq r = CoeffSeq<Rational>({Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS_AS(convolve(f, r), ConfigurationError);
  CHECK(backend_of(convolve(r, r)) == Backend::kRational);
  CHECK(shannon_entropy(convolve(f, f)) == doctest::Approx(1.5));
}

TEST_CASE("sum_law examples") {
  const FinitePmf<double> even({0.5, 0.0, 0.5});
  CHECK(sum_law(SumConfig<double>({even, even})).values() ==
        std::vector<double>{0.25, 0, 0.5, 0, 0.25});

  const FinitePmf<double> p({0.2, 0.7, 0.1});
  CHECK(sum_law(SumConfig<double>({p})).values() == std::vector<double>(p.probs().begin(), p.probs().end()));
}

TEST_CASE("sum_law agrees with outcome enumeration") {
  auto engine = substream(11, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const std::size_t r = 1 + trial % 3;
    const auto config = random_config(n, r, engine, trial % 2 ? 0.3 : 0.0);
    const auto law = sum_law(config);
    const auto oracle = enumerate_sum(config);
    REQUIRE(law.size() == n * r + 1);
    CHECK(law.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t s = 0; s < law.size(); ++s) CHECK(std::abs(law[s] - oracle[s]) <= 1e-12);
  }
}

TEST_CASE("convolution is commutative and associative") {
  auto engine = substream(12, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = seq(dirichlet_pmf(1 + trial % 4, engine));
    const auto b = seq(dirichlet_pmf(2, engine));
    const auto c = seq(dirichlet_pmf(3, engine));
    const auto ab = convolve(a, b);
    const auto ba = convolve(b, a);
    const auto left = convolve(ab, c);
    const auto right = convolve(a, convolve(b, c));
    for (std::size_t i = 0; i < ab.size(); ++i) CHECK(std::abs(ab[i] - ba[i]) <= 1e-12);
    for (std::size_t i = 0; i < left.size(); ++i) CHECK(std::abs(left[i] - right[i]) <= 1e-12);

    const auto ea = to_exact(a);
    const auto eb = to_exact(b);
    const auto ec = to_exact(c);
    CHECK(convolve(ea, eb) == convolve(eb, ea));
    CHECK(convolve(convolve(ea, eb), ec) == convolve(ea, convolve(eb, ec)));
  }
}

TEST_CASE("rational and float sum laws agree") {
  auto engine = substream(13, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto config = random_config(1 + trial % 6, 2, engine, 0.15);
    const auto f = sum_law(config);
    const auto e = sum_law(to_exact(config));
    CHECK(e.sum() == Rational(1));
    for (std::size_t s = 0; s < f.size(); ++s) CHECK(std::abs(f[s] - e[s].to_double()) <= 1e-12);
  }
}

TEST_CASE("type invariants") {
  CHECK_THROWS_AS(CoeffSeq<double>({0.5, -0.1}), DomainError);
  CHECK_THROWS_AS(CoeffSeq<double>({0.5, 0.5, 0.5}, 1), DomainError);
  CHECK(CoeffSeq<double>({0.5, 0.5}, 4).declared_order() == 4);
  CHECK_THROWS_AS(FinitePmf<double>({0.5, 0.4}), DomainError);
  CHECK_NOTHROW(FinitePmf<double>({0.5, 0.5 + 1e-13}));
  CHECK_THROWS_AS(FinitePmf<Rational>({Rational(1, 2), Rational(1, 3)}), DomainError);
  CHECK_THROWS_AS(FinitePmf<double>(std::vector<double>{}), DomainError);
  const FinitePmf<double> bit({0.5, 0.5});
  const FinitePmf<double> trit({0.5, 0.0, 0.5});
  CHECK_THROWS_AS(SumConfig<double>({bit, trit}), DomainError);
  CHECK_THROWS_AS(SumConfig<double>(std::vector<FinitePmf<double>>{}), DomainError);
}

TEST_CASE("to_exact renormalizes to exactly one") {
  const FinitePmf<double> p({0.1, 0.2, 0.7});
  const auto e = to_exact(p);
  CHECK(e.as_seq().sum() == Rational(1));
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e[i].to_double() - p[i]) <= 1e-16);
}

TEST_CASE("shannon_entropy examples") {
  CHECK(shannon_entropy(seq({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(shannon_entropy(seq({0.25, 0.5, 0.25})) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(std::abs(shannon_entropy(seq({1.0 / 3, 1.0 / 3, 1.0 / 3})) - 1.584962500721156) <= 1e-14);
  // Unnormalized input is normalized first; zeros contribute nothing.
  CHECK(shannon_entropy(seq({2.0, 0.0, 2.0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(shannon_entropy(seq({1.0})) == 0.0);
  const CoeffSeq<Rational> third({Rational(1), Rational(1), Rational(1)});
  CHECK(std::abs(shannon_entropy(third) - std::log2(3.0)) <= 1e-15);
  CHECK_THROWS_AS(shannon_entropy(seq({0.0, 0.0})), DomainError);
  CHECK_THROWS_AS(shannon_entropy(CoeffSeq<Rational>({Rational(0)})), DomainError);
}

TEST_CASE("shannon_entropy is permutation invariant and bounded") {
  auto engine = substream(14, 0);
  for (int trial = 0; trial < 200; ++trial) {
    auto p = sparse_dirichlet_pmf(1 + trial % 7, 0.3, engine);
    const double h = shannon_entropy(seq(p));
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(static_cast<double>(p.size())) + 1e-12);
    std::shuffle(p.begin(), p.end(), engine);
    CHECK(std::abs(shannon_entropy(seq(p)) - h) <= 1e-14);
  }
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  // 50-digit reference: -(1/3)log2(1/3) - (2/3)log2(2/3).
  CHECK(std::abs(binary_entropy(1.0 / 3.0) - 0.91829583405448951479) <= 1e-15);
  CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.5), DomainError);
  CHECK_THROWS_AS(binary_entropy(std::nan("")), DomainError);
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    CHECK(binary_entropy(p) == shannon_entropy(seq({p, 1.0 - p})));
    CHECK(std::abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-15);
  }
}

TEST_CASE("binomial_entropy") {
  CHECK(binomial_entropy(0) == 0.0);
  CHECK(binomial_entropy(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binomial_entropy(2) == doctest::Approx(1.5).epsilon(1e-15));
  // 50-digit references.
  CHECK(std::abs(binomial_entropy(3) - 1.8112781244591328639) <= 1e-14);
  CHECK(std::abs(binomial_entropy(10) - 2.7064289632273311758) <= 1e-14);
  for (std::size_t m : {0u, 1u, 5u, 17u, 60u, 200u}) {
    CAPTURE(m);
    CHECK(std::abs(binomial_entropy(m) - shannon_entropy(BinomialRef{m}.pmf<double>())) <= 1e-12);
    CHECK(std::abs(binomial_entropy(m) - shannon_entropy(BinomialRef{m}.pmf<Rational>())) <= 1e-12);
  }
}

TEST_CASE("BinomialRef pmf") {
  const auto b4 = BinomialRef{4}.pmf<Rational>();
  const std::vector<Rational> expected = {Rational(1, 16), Rational(4, 16), Rational(6, 16),
                                          Rational(4, 16), Rational(1, 16)};
  CHECK(b4.values() == expected);
  const auto f = BinomialRef{4}.pmf<double>();
  for (std::size_t k = 0; k <= 4; ++k) CHECK(f[k] == doctest::Approx(expected[k].to_double()));
}
