#include <doctest.h>

#include <cmath>
#include <random>

#include "entmax/errors.hpp"
#include "entmax/maximizer.hpp"
#include "entmax/residue.hpp"
#include "entmax/roots.hpp"
#include "entmax/sampling.hpp"

using namespace entmax;

namespace {

CoeffSeq<double> seq(std::vector<double> v) { return CoeffSeq<double>(std::move(v)); }
CoeffSeq<Rational> rseq(std::vector<Rational> v) { return CoeffSeq<Rational>(std::move(v)); }

CoeffSeq<Rational> parse_seq(std::initializer_list<const char*> literals) {
  std::vector<Rational> c;
  for (const char* s : literals) c.push_back(Rational::parse(s));
  return CoeffSeq<Rational>(std::move(c));
}

const std::vector<double> kP0 = {0.003375, 0.044091, 0.369325, 0.000729};

}  // namespace

TEST_CASE("residue_decompose examples") {
  const auto split = residue_decompose(seq({1, 1, 1, 1}), 2);
  REQUIRE(split.parts.size() == 2);
  CHECK(split.parts[0].values() == std::vector<double>{1, 1});
  CHECK(split.parts[1].values() == std::vector<double>{1, 1});
  CHECK(split.part_masses == std::vector<double>{2, 2});

  const auto p = parse_seq({"0.15", "0.06", "0.70", "0.09"});
  const auto cube = residue_decompose(convolve(convolve(p, p), p), 3);
  CHECK(cube.parts[0] == parse_seq({"0.003375", "0.044091", "0.369325", "0.000729"}));
  CHECK(cube.parts[1] == parse_seq({"0.00405", "0.23292", "0.133758"}));
  CHECK(cube.parts[2] == parse_seq({"0.04887", "0.145872", "0.01701"}));
  CHECK(cube.part_masses[0] + cube.part_masses[1] + cube.part_masses[2] == Rational(1));

  for (std::size_t n = 1; n <= 6; ++n) {
    const FinitePmf<Rational> even({Rational(1, 2), Rational(0), Rational(1, 2)});
    const auto law = sum_law(SumConfig<Rational>(std::vector<FinitePmf<Rational>>(n, even)));
    const auto s = residue_decompose(law, 2);
    CHECK(s.parts[0] == BinomialRef{n}.pmf<Rational>());
    CHECK(s.parts[1].all_zero());
    CHECK(s.parts[1].size() == n);
  }
}

TEST_CASE("residue_decompose rejects bad input") {
  CHECK_THROWS_AS(residue_decompose(seq({1, 2}), 1), DomainError);
  CHECK_THROWS_AS(residue_decompose(seq({1, 2}), 0), DomainError);
  CHECK_THROWS_AS(residue_decompose(CoeffSeq<double>(), 2), DomainError);
}

TEST_CASE("interleaving the parts reconstructs the sequence") {
  std::mt19937_64 engine(21);
  std::uniform_int_distribution<int> len(1, 20);
  std::uniform_int_distribution<int> mod(2, 6);
  std::uniform_int_distribution<long> num(0, 50);
  for (int trial = 0; trial < 300; ++trial) {
    const int size = len(engine);
    std::vector<Rational> c;
    std::vector<double> f;
    for (int i = 0; i < size; ++i) {
      c.emplace_back(num(engine), 7);
      f.push_back(c.back().to_double());
    }
    const auto r_mod = static_cast<std::size_t>(mod(engine));
    const auto exact = rseq(c);
    CHECK(residue_decompose(exact, r_mod).interleave() == exact);
    CHECK(residue_decompose(seq(f), r_mod).interleave() == seq(f));
  }
}

TEST_CASE("part orders for a degree n*r law") {
  auto engine = substream(22, 0);
  for (std::size_t r = 2; r <= 4; ++r) {
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto split = residue_decompose(sum_law(random_config(n, r, engine)), r);
      CHECK(split.parts[0].declared_order() == n);
      for (std::size_t j = 1; j < r; ++j) CHECK(split.parts[j].declared_order() == n - 1);
      double total = 0.0;
      for (double m : split.part_masses) total += m;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("parity_split examples") {
  const FinitePmf<Rational> abc({Rational(1, 5), Rational(3, 10), Rational(1, 2)});
  const auto one = parity_split(SumConfig<Rational>({abc}));
  CHECK(one.parts[0].values() == std::vector<Rational>{Rational(1, 5), Rational(1, 2)});
  CHECK(one.parts[1].values() == std::vector<Rational>{Rational(3, 10)});

  // Oracle: enumerate the nine outcomes of two uniform ternary summands.
  std::vector<Rational> law(5, Rational(0));
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) law[x + y] += Rational(1, 9);
  }
  const FinitePmf<Rational> third({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  const auto two = parity_split(SumConfig<Rational>({third, third}));
  CHECK(two.parts[0].values() == std::vector<Rational>{law[0], law[2], law[4]});
  CHECK(two.parts[1].values() == std::vector<Rational>{law[1], law[3]});
  CHECK(two.parts[0].values() == std::vector<Rational>{Rational(1, 9), Rational(3, 9), Rational(1, 9)});
  CHECK(two.parts[1].values() == std::vector<Rational>{Rational(2, 9), Rational(2, 9)});

  const auto fig = parity_split(attaining_config_exact(4));
  const Rational even_mass = fig.part_masses[0];
  const Rational odd_mass = fig.part_masses[1];
  const auto b4 = BinomialRef{4}.pmf<Rational>();
  const auto b3 = BinomialRef{3}.pmf<Rational>();
  for (std::size_t k = 0; k <= 4; ++k) CHECK(fig.parts[0][k] == even_mass * b4[k]);
  for (std::size_t k = 0; k <= 3; ++k) CHECK(fig.parts[1][k] == odd_mass * b3[k]);

  const FinitePmf<double> bit({0.5, 0.5});
  CHECK_THROWS_AS(parity_split(SumConfig<double>({bit})), DomainError);
}

TEST_CASE("is_log_concave") {
  CHECK(is_log_concave(seq({1, 2, 1})));
  CHECK_FALSE(is_log_concave(seq({1, 0, 1})));
  // u1^2 = 1.944e-3 >= u0 u2 = 1.246e-3 and u2^2 = 0.1364 >= u1 u3 = 3.21e-5.
  CHECK(kP0[1] * kP0[1] >= kP0[0] * kP0[2]);
  CHECK(kP0[2] * kP0[2] >= kP0[1] * kP0[3]);
  CHECK(is_log_concave(seq(kP0)));
  CHECK(is_log_concave(seq({})));
  CHECK(is_log_concave(seq({3})));
  CHECK(is_log_concave(rseq({Rational(1), Rational(2), Rational(4)})));
  CHECK_FALSE(is_log_concave(rseq({Rational(1), Rational(2), Rational(4) + Rational(1, 1000000)})));
}

TEST_CASE("is_ulc examples") {
  CHECK(is_ulc(seq({1, 4, 6, 4, 1}), 4));
  CHECK(is_ulc(rseq({Rational(1), Rational(4), Rational(6), Rational(4), Rational(1)}), 4));
  CHECK_FALSE(is_ulc(seq(kP0), 3));
  CHECK(ulc_violations(seq(kP0), 3) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(is_ulc(seq({1, 2, 1}), 1), DomainError);
  // Implicit trailing zeros: (1, 1) as ULC(3) means (1, 1, 0, 0).
  CHECK(is_ulc(seq({1, 3}), 3));
  CHECK_FALSE(is_ulc(seq({1, 0, 1}), 2));
  // Orders 0 and 1 have no interior inequality.
  CHECK(is_ulc(seq({5}), 0));
  CHECK(is_ulc(seq({1, 9}), 1));
  // Zero entries need no special case in the product form.
  CHECK(is_ulc(seq({0, 0, 1}), 2));
  CHECK(is_ulc(seq({0, 0, 0}), 2));
}

TEST_CASE("float ULC slack accepts rounded equality cases") {
  for (std::size_t m = 1; m <= 60; ++m) {
    CAPTURE(m);
    CHECK(is_ulc(BinomialRef{m}.pmf<double>(), m));
    CHECK(is_ulc(BinomialRef{m}.pmf<Rational>(), m));
  }
}

TEST_CASE("parity parts of random ternary sums are ULC (exact)") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t t = 0; t < 250; ++t) {
      auto engine = substream(23, n * 1000 + t);
      const auto config = to_exact(random_config(n, 2, engine, t % 2 ? 0.15 : 0.0));
      const auto split = parity_split(config);
      CHECK(is_ulc(split.parts[0], n));
      CHECK(is_ulc(split.parts[1], n - 1));
    }
  }
  // All-uniform ternary, n = 3.
  const FinitePmf<Rational> third({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  const auto split = parity_split(SumConfig<Rational>({third, third, third}));
  CHECK(is_ulc(split.parts[0], 3));
  CHECK(is_ulc(split.parts[1], 2));
}

TEST_CASE("Yu: ULC sequences have entropy at most H(B_m)") {
  // Products of (a + b z) with a, b > 0 are real-rooted with nonnegative
  // coefficients, hence ULC of order m by construction.
  std::mt19937_64 engine(24);
  std::uniform_real_distribution<double> coef(0.01, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 1 + trial % 12;
    CoeffSeq<double> u = seq({1.0});
    for (std::size_t i = 0; i < m; ++i) u = convolve(u, seq({coef(engine), coef(engine)}));
    REQUIRE(is_ulc(u, m));
    CHECK(shannon_entropy(u) <= binomial_entropy(m) + 1e-9);
  }
}

TEST_CASE("Newton: real-rooted nonnegative sequences are ULC") {
  std::mt19937_64 engine(25);
  std::uniform_int_distribution<long> coef(0, 6);
  std::size_t real_rooted_count = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t len = 2 + trial % 5;
    std::vector<Rational> c;
    for (std::size_t i = 0; i < len; ++i) c.emplace_back(coef(engine));
    c.back() += Rational(1);
    const auto u = rseq(c);
    if (real_rooted(u)) {
      ++real_rooted_count;
      CHECK(is_ulc(u, len - 1));
    }
  }
  CHECK(real_rooted_count > 300);
}

TEST_CASE("ULC implies log-concave for positive sequences") {
  std::mt19937_64 engine(26);
  std::uniform_real_distribution<double> coef(0.05, 1.0);
  std::size_t ulc_count = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t len = 3 + trial % 4;
    std::vector<double> c(len);
    for (auto& x : c) x = coef(engine);
    std::sort(c.begin(), c.end());
    if (trial % 2) std::reverse(c.begin(), c.end());
    const auto u = seq(c);
    if (is_ulc(u, len - 1)) {
      ++ulc_count;
      CHECK(is_log_concave(u));
    }
  }
  CHECK(ulc_count > 100);
}

TEST_CASE("conditional_entropy_report examples") {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto report = conditional_entropy_report(attaining_config(n));
    CHECK(std::abs(report.h_even - binomial_entropy(n)) <= 1e-12);
    CHECK(std::abs(report.h_odd - binomial_entropy(n - 1)) <= 1e-12);
    CHECK(std::abs(report.w - optimal_weight(n, 2)) <= 1e-15);
  }

  const FinitePmf<double> no_middle({0.3, 0.0, 0.7});
  const auto even_only = conditional_entropy_report(SumConfig<double>({no_middle, no_middle}));
  CHECK(even_only.w == 1.0);
  CHECK(even_only.h_odd == 0.0);
  CHECK(even_only.odd_class_empty);
  CHECK_FALSE(even_only.even_class_empty);

  const FinitePmf<Rational> third({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  const auto two = conditional_entropy_report(SumConfig<Rational>({third, third}));
  CHECK(std::abs(two.w - 5.0 / 9.0) <= 1e-15);
  CHECK(std::abs(two.h_even - shannon_entropy(seq({1.0 / 5, 3.0 / 5, 1.0 / 5}))) <= 1e-15);
  // 50-digit reference for H(1/5, 3/5, 1/5).
  CHECK(std::abs(two.h_even - 1.3709505944546686742) <= 1e-14);
  CHECK(two.h_odd == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(two.bound_even == 1.5);
  CHECK(two.bound_odd == 1.0);
}

TEST_CASE("conditional entropies stay below the binomial bounds") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (std::size_t t = 0; t < 500; ++t) {
      auto engine = substream(27, n * 1000 + t);
      const auto report = conditional_entropy_report(random_config(n, 2, engine, t % 2 ? 0.15 : 0.0));
      CHECK(report.w >= 0.0);
      CHECK(report.w <= 1.0);
      CHECK(report.h_even <= report.bound_even + 1e-9);
      CHECK(report.h_odd <= report.bound_odd + 1e-9);
    }
  }
}
