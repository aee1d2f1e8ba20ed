#include <cmath>
#include <cstdint>
#include <map>

#include "doctest.h"
#include "rwcmp/errors.hpp"
#include "rwcmp/rng.hpp"
#include "rwcmp/walks.hpp"
#include "support/stat_util.hpp"

using namespace rwcmp;
using walks::Engine;
using walks::WalkSpec;

TEST_CASE("zero-step walks return their start unchanged") {
  RngStream rng(7, 0);
  const WalkSpec spec(5, 0);
  for (const auto engine : {Engine::Stepwise, Engine::FastEndpoint}) {
    const auto r = walks::walk(spec, rng, engine);
    CHECK(r.endpoint == 5);
    CHECK(r.displacement == 0);
  }
}

TEST_CASE("single step is a fair ±1 coin") {
  RngStream rng(11, 1);
  constexpr std::int64_t kTrials = 100000;
  std::int64_t up = 0;
  for (std::int64_t t = 0; t < kTrials; ++t) {
    const auto r = walks::walk_stepwise(WalkSpec(0, 1), rng);
    REQUIRE((r.endpoint == 1 || r.endpoint == -1));
    if (r.endpoint == 1) ++up;
  }
  const double p = static_cast<double>(up) / kTrials;
  CHECK(std::abs(p - 0.5) <= 3.0 * testutil::freq_stderr(0.5, kTrials));
}

TEST_CASE("four-step return probability matches path enumeration") {
  // All 2^4 = 16 equally likely sign sequences: 6 have two up-steps, so
  // P(endpoint = 0) = 6/16.
  int returns = 0;
  for (int mask = 0; mask < 16; ++mask) {
    int pos = 0;
    for (int i = 0; i < 4; ++i) pos += (mask >> i) & 1 ? 1 : -1;
    if (pos == 0) ++returns;
  }
  REQUIRE(returns == 6);

  RngStream rng(13, 2);
  constexpr std::int64_t kTrials = 100000;
  std::int64_t hits = 0;
  for (std::int64_t t = 0; t < kTrials; ++t)
    if (walks::walk_stepwise(WalkSpec(0, 4), rng).endpoint == 0) ++hits;
  const double expected = 6.0 / 16.0;
  CHECK(std::abs(static_cast<double>(hits) / kTrials - expected) <=
        4.0 * testutil::freq_stderr(expected, kTrials));
}

TEST_CASE("fast two-step endpoints match the exact law (chi-square)") {
  RngStream rng(17, 3);
  constexpr std::int64_t kSamples = 100000;
  std::map<std::int64_t, std::int64_t> observed;
  for (std::int64_t t = 0; t < kSamples; ++t)
    ++observed[walks::walk_endpoint_fast(WalkSpec(0, 2), rng).endpoint];
  const auto gof =
      testutil::chi_square_gof(observed, testutil::walk_endpoint_pmf(0, 2), kSamples);
  INFO("chi2 = ", gof.statistic, " critical = ", gof.critical);
  CHECK(gof.pass());
}

TEST_CASE("both engines match the exact endpoint law for small m") {
  constexpr std::int64_t kSamples = 100000;
  for (const std::int64_t m : {std::int64_t{2}, std::int64_t{10}, std::int64_t{100}}) {
    const auto pmf = testutil::walk_endpoint_pmf(0, m);
    for (const auto engine : {Engine::Stepwise, Engine::FastEndpoint}) {
      RngStream rng(19 + static_cast<std::uint64_t>(m), engine == Engine::Stepwise ? 0 : 1);
      std::map<std::int64_t, std::int64_t> observed;
      for (std::int64_t t = 0; t < kSamples; ++t)
        ++observed[walks::walk(WalkSpec(0, m), rng, engine).endpoint];
      const auto gof = testutil::chi_square_gof(observed, pmf, kSamples);
      INFO("m = ", m, " engine = ", engine == Engine::Stepwise ? "stepwise" : "fast",
           " chi2 = ", gof.statistic, " critical = ", gof.critical);
      CHECK(gof.pass());
    }
  }
}

TEST_CASE("long fast walk keeps parity and range invariants") {
  RngStream rng(23, 4);
  const auto r = walks::walk_endpoint_fast(WalkSpec(10, 1000000), rng);
  CHECK(std::abs(r.displacement) <= 1000000);
  CHECK(r.displacement % 2 == 0);  // even step count -> even displacement
  CHECK(r.endpoint == 10 + r.displacement);
}

TEST_CASE("parity and range hold across engines and step counts") {
  RngStream rng(29, 5);
  for (const std::int64_t m : {std::int64_t{1}, std::int64_t{7}, std::int64_t{64},
                               std::int64_t{65}, std::int64_t{1000}}) {
    for (const auto engine : {Engine::Stepwise, Engine::FastEndpoint}) {
      for (int rep = 0; rep < 200; ++rep) {
        const auto r = walks::walk(WalkSpec(-3, m), rng, engine);
        CHECK(std::abs(r.displacement) <= m);
        CHECK(((r.displacement % 2 + 2) % 2) == (m % 2));
        CHECK(r.endpoint == -3 + r.displacement);
      }
    }
  }
}

TEST_CASE("stepwise walk consumes exactly one coin per step") {
  RngStream rng(31, 6);
  const auto before = rng.flips();
  walks::walk_stepwise(WalkSpec(0, 137), rng);
  CHECK(rng.flips() - before == 137);
}

TEST_CASE("walks are deterministic given (seed, stream)") {
  RngStream rng1(42, 9), rng2(42, 9);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = walks::walk_stepwise(WalkSpec(5, 101), rng1);
    const auto b = walks::walk_stepwise(WalkSpec(5, 101), rng2);
    CHECK(a.endpoint == b.endpoint);
  }
  // distinct streams diverge
  RngStream rng3(42, 10);
  int same = 0;
  RngStream rng4(42, 9);
  for (int rep = 0; rep < 50; ++rep) {
    if (walks::walk_stepwise(WalkSpec(5, 101), rng3).endpoint ==
        walks::walk_stepwise(WalkSpec(5, 101), rng4).endpoint)
      ++same;
  }
  CHECK(same < 50);
}

TEST_CASE("mean squared displacement is about m") {
  constexpr std::int64_t kTrials = 100000;
  for (const std::int64_t m : {std::int64_t{100}, std::int64_t{10000}}) {
    RngStream rng(37, static_cast<std::uint64_t>(m));
    double sum_sq = 0.0;
    for (std::int64_t t = 0; t < kTrials; ++t) {
      const auto d =
          static_cast<double>(walks::walk_endpoint_fast(WalkSpec(0, m), rng).displacement);
      sum_sq += d * d;
    }
    const double ratio = sum_sq / kTrials / static_cast<double>(m);
    INFO("m = ", m, " E(disp^2)/m = ", ratio);
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
  }
}

TEST_CASE("empirical upper tail stays under exp(-m^(2a-1)/2) plus noise") {
  constexpr std::int64_t m = 10000;
  constexpr std::int64_t kTrials = 1000000;
  for (const double alpha : {0.55, 0.6, 0.75}) {
    RngStream rng(41, static_cast<std::uint64_t>(alpha * 1000));
    const double threshold = std::pow(static_cast<double>(m), alpha);
    std::int64_t exceed = 0;
    for (std::int64_t t = 0; t < kTrials; ++t)
      if (static_cast<double>(walks::walk_endpoint_fast(WalkSpec(0, m), rng).displacement) >
          threshold)
        ++exceed;
    const double p_hat = static_cast<double>(exceed) / kTrials;
    const double bound = std::exp(-0.5 * std::pow(static_cast<double>(m), 2 * alpha - 1));
    INFO("alpha = ", alpha, " p_hat = ", p_hat, " bound = ", bound);
    CHECK(p_hat <= bound + 3.0 * testutil::freq_stderr(bound, kTrials));
  }
}

TEST_CASE("lazy difference walk: zero steps returns the gap") {
  RngStream rng(43, 0);
  CHECK(walks::lazy_difference_walk(0, 7, rng) == 7);
}

TEST_CASE("lazy difference walk: single-step law is 1/2, 1/4, 1/4") {
  RngStream rng(47, 1);
  constexpr std::int64_t kTrials = 100000;
  std::int64_t stay = 0, up = 0, down = 0;
  for (std::int64_t t = 0; t < kTrials; ++t) {
    const auto y = walks::lazy_difference_walk(1, 0, rng);
    REQUIRE((y == 0 || y == 2 || y == -2));
    if (y == 0)
      ++stay;
    else if (y == 2)
      ++up;
    else
      ++down;
  }
  CHECK(std::abs(stay / double(kTrials) - 0.5) <= 4.0 * testutil::freq_stderr(0.5, kTrials));
  CHECK(std::abs(up / double(kTrials) - 0.25) <= 4.0 * testutil::freq_stderr(0.25, kTrials));
  CHECK(std::abs(down / double(kTrials) - 0.25) <= 4.0 * testutil::freq_stderr(0.25, kTrials));
}

TEST_CASE("lazy difference walk: mean squared displacement is about 2m") {
  constexpr std::int64_t kTrials = 100000;
  for (const std::int64_t m : {std::int64_t{100}, std::int64_t{10000}}) {
    RngStream rng(53, static_cast<std::uint64_t>(m));
    double sum_sq = 0.0;
    for (std::int64_t t = 0; t < kTrials; ++t) {
      const auto y = static_cast<double>(walks::lazy_difference_walk(m, 0, rng));
      sum_sq += y * y;
    }
    const double ratio = sum_sq / kTrials / (2.0 * static_cast<double>(m));
    INFO("m = ", m, " E(Y^2)/(2m) = ", ratio);
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
  }
}

TEST_CASE("lazy difference walk: parity and range of the change") {
  RngStream rng(59, 2);
  for (const std::int64_t m : {std::int64_t{1}, std::int64_t{9}, std::int64_t{100}}) {
    for (int rep = 0; rep < 500; ++rep) {
      const auto y = walks::lazy_difference_walk(m, 3, rng);
      CHECK((y - 3) % 2 == 0);
      CHECK(std::abs(y - 3) <= 2 * m);
    }
  }
}

TEST_CASE("equality mass P(Y_m = 0) decays like 1/sqrt(m)") {
  // Exact value is C(2m, m)/4^m ~ 1/sqrt(pi m): p_hat * sqrt(m) should sit
  // near 1/sqrt(pi) = 0.5642 and the raw mass must decrease with m.
  constexpr std::int64_t kTrials = 100000;
  double prev = 1.0;
  for (const std::int64_t m :
       {std::int64_t{100}, std::int64_t{1000}, std::int64_t{10000}}) {
    RngStream rng(61, static_cast<std::uint64_t>(m));
    std::int64_t zeros = 0;
    for (std::int64_t t = 0; t < kTrials; ++t)
      if (walks::lazy_difference_walk(m, 0, rng) == 0) ++zeros;
    const double p_hat = static_cast<double>(zeros) / kTrials;
    INFO("m = ", m, " p_hat = ", p_hat);
    CHECK(p_hat < prev);
    const double scaled = p_hat * std::sqrt(static_cast<double>(m));
    CHECK(scaled > 0.50);
    CHECK(scaled < 0.62);
    prev = p_hat;
  }
}

TEST_CASE("walk parameter validation") {
  CHECK_THROWS_AS(WalkSpec(0, -1), InvalidInput);
  CHECK_THROWS_AS(WalkSpec((std::int64_t{1} << 62), 1), InvalidInput);
  CHECK_THROWS_AS(WalkSpec(-(std::int64_t{1} << 62), 1), InvalidInput);
  CHECK_NOTHROW(WalkSpec(1, 160000));
}

TEST_CASE("exact binomial sampler stays within range and hits both tails") {
  RngStream rng(67, 0);
  std::int64_t lo = 100, hi = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const auto k = walks::binomial_half(100, rng);
    REQUIRE(k >= 0);
    REQUIRE(k <= 100);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  CHECK(lo < 45);
  CHECK(hi > 55);
}
