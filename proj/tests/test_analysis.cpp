#include "doctest.h"

#include <cmath>
#include <cstddef>

#include "cavsim/analysis.hpp"
#include "test_helpers.hpp"

using namespace cavsim;

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kPJoint = 0.063277254860745757;
constexpr double kFidelity = 0.98771667856868539;
constexpr double kCosSqrt2Theta2 = 0.0788545425829483;
constexpr double kBestTheta2 = 1.1107207345395915;  // pi / (2 sqrt(2))

ChannelParams even_channel() {
  return {cplx(0.7071067811865476, 0.0), cplx(0.7071067811865476, 0.0)};
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("closed-form fidelity at pinned angles") {
  CHECK(std::abs(fidelity_formula(kDefaultTheta2) - kFidelity) < 1e-15);
  CHECK(std::abs(fidelity_formula(kPi / 2.0) - 0.73159722294381879) < 1e-15);
  CHECK(std::abs(fidelity_formula(kBestTheta2) - 1.0) < 1e-12);
  CHECK(fidelity_formula(0.0) == 0.0);
  CHECK(fidelity_formula(kPi) < 1e-30);  // sin of rounded pi is ~1.2e-16, squared
}

TEST_CASE("sweep over a full period") {
  const auto rows = sweep(0.0, kTwoPi, 9, even_channel());
  REQUIRE(rows.size() == 9);

  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(rows[i].theta2 ==
          doctest::Approx(kTwoPi * static_cast<double>(i) / 8.0).epsilon(1e-15));
    CHECK(std::abs(rows[i].cos_sqrt2_theta2 -
                   std::cos(1.4142135623730951 * rows[i].theta2)) < 1e-15);
  }
  CHECK(rows.front().theta2 == 0.0);
  CHECK(rows.back().theta2 == kTwoPi);

  SUBCASE("dead detection branches at the quarter turns") {
    CHECK_FALSE(rows[2].fidelity_sim.has_value());  // theta2 = pi/2
    CHECK_FALSE(rows[6].fidelity_sim.has_value());  // theta2 = 3*pi/2
    // the joint probability is still the true (astronomically small) product
    CHECK(rows[2].p_joint > 0.0);
    CHECK(rows[2].p_joint < 1e-30);
    CHECK(rows[6].p_joint < 1e-30);
  }

  SUBCASE("the canonical operating point is on the grid") {
    const SweepRow& r = rows[7];  // theta2 = 7*pi/4
    CHECK(std::abs(r.cos_sqrt2_theta2 - kCosSqrt2Theta2) < 1e-15);
    CHECK(std::abs(r.fidelity_formula - kFidelity) < 1e-14);
    REQUIRE(r.fidelity_sim.has_value());
    CHECK(std::abs(*r.fidelity_sim - kFidelity) < 1e-13);
    CHECK(std::abs(r.p_joint - kPJoint) < 1e-14);
  }

  SUBCASE("simulation agrees with the closed form on every live row") {
    for (const auto& r : rows) {
      if (!r.fidelity_sim.has_value()) continue;
      CHECK(std::abs(*r.fidelity_sim - r.fidelity_formula) <= 1e-9);
    }
  }
}

TEST_CASE("sweep endpoints and validation") {
  const auto two = sweep(1.0, 2.0, 2, even_channel());
  REQUIRE(two.size() == 2);
  CHECK(two[0].theta2 == 1.0);
  CHECK(two[1].theta2 == 2.0);

  CHECK_THROWS_AS(sweep(0.0, 1.0, 1, even_channel()), InvalidRange);
  CHECK_THROWS_AS(sweep(0.0, 1.0, 0, even_channel()), InvalidRange);
  CHECK_THROWS_AS(sweep(2.0, 1.0, 4, even_channel()), InvalidRange);
  CHECK_THROWS_AS(sweep(std::nan(""), 1.0, 4, even_channel()), InvalidRange);
  CHECK_THROWS_AS(sweep(0.0, std::nan(""), 4, even_channel()), InvalidRange);
}

TEST_CASE("fidelity has the same closed form for lopsided channels") {
  SplitRng rng(424242);
  for (int rep = 0; rep < 4; ++rep) {
    const ChannelParams ch = random_channel(rng);
    const auto rows = sweep(0.3, 5.9, 7, ch);
    for (const auto& r : rows) {
      if (!r.fidelity_sim.has_value()) continue;
      CHECK(std::abs(*r.fidelity_sim - r.fidelity_formula) <= 1e-9);
    }
  }
}

TEST_CASE("optimizer finds the unit-fidelity angle") {
  const OptimizeResult res = optimize_theta2(1.0, 1.2, even_channel());
  CHECK(std::abs(res.theta2_star - kBestTheta2) <= 1e-6);
  CHECK(res.fidelity_star >= 1.0 - 1e-9);
}

TEST_CASE("optimizer finds the interior maximum of a later lobe") {
  // cos(sqrt(2) theta2) vanishes again at 5*pi/(2 sqrt(2)).
  const OptimizeResult res = optimize_theta2(5.4, 5.7, even_channel());
  CHECK(std::abs(res.theta2_star - 5.5536036726979575) <= 1e-6);
  CHECK(res.fidelity_star >= 1.0 - 1e-9);
}

TEST_CASE("optimizer validation and dead windows") {
  CHECK_THROWS_AS(optimize_theta2(1.2, 1.0, even_channel()), InvalidRange);
  CHECK_THROWS_AS(optimize_theta2(std::nan(""), 1.0, even_channel()), InvalidRange);
  // a hair-width window pinned to cos(theta2) = 0: no point is attainable
  CHECK_THROWS_AS(
      optimize_theta2(kPi / 2.0 - 1e-12, kPi / 2.0 + 1e-12, even_channel()),
      ZeroProbabilityBranch);
}

TEST_CASE("monte carlo bookkeeping") {
  ProtocolConfig cfg;
  cfg.seed = 0;

  const MonteCarloStats a = monte_carlo(cfg, 20000);
  const MonteCarloStats b = monte_carlo(cfg, 20000);

  SUBCASE("bitwise deterministic") {
    CHECK(a.trials == b.trials);
    CHECK(a.successes == b.successes);
    CHECK(a.success_rate == b.success_rate);
    CHECK(a.std_error == b.std_error);
    CHECK(a.fidelity_of_successes == b.fidelity_of_successes);
    CHECK(a.failures_gg == b.failures_gg);
    CHECK(a.failures_ge == b.failures_ge);
    CHECK(a.failures_eg == b.failures_eg);
  }

  SUBCASE("counts partition the trials") {
    CHECK(a.trials == 20000);
    CHECK(a.successes + a.failures_gg + a.failures_ge + a.failures_eg == a.trials);
    CHECK(a.success_rate ==
          static_cast<double>(a.successes) / static_cast<double>(a.trials));
    const double expected_se =
        std::sqrt(a.success_rate * (1.0 - a.success_rate) / 20000.0);
    CHECK(a.std_error == doctest::Approx(expected_se).epsilon(1e-12));
  }

  SUBCASE("rate brackets the exact joint probability") {
    CHECK(std::abs(a.success_rate - kPJoint) <= 4.0 * a.std_error);
  }

  SUBCASE("successful trials all share the deterministic fidelity") {
    REQUIRE(a.fidelity_of_successes.has_value());
    CHECK(*a.fidelity_of_successes == run_postselected(cfg).fidelity);
  }
}

TEST_CASE("monte carlo tallies are chunking-independent") {
  ProtocolConfig cfg;
  cfg.seed = 99;
  const std::size_t n = 50;
  const MonteCarloStats stats = monte_carlo(cfg, n);

  std::size_t successes = 0, gg = 0, ge = 0, eg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    SplitRng rng = SplitRng::for_trial(cfg.seed, i);
    const TrialOutcome t = run_sampled(cfg, rng);
    if (t.success) {
      ++successes;
    } else if (t.first == Outcome::G && t.second == Outcome::G) {
      ++gg;
    } else if (t.first == Outcome::G) {
      ++ge;
    } else {
      ++eg;
    }
  }
  CHECK(stats.successes == successes);
  CHECK(stats.failures_gg == gg);
  CHECK(stats.failures_ge == ge);
  CHECK(stats.failures_eg == eg);
}

TEST_CASE("monte carlo rejects an empty run") {
  ProtocolConfig cfg;
  CHECK_THROWS_AS(monte_carlo(cfg, 0), InvalidRange);
}

TEST_CASE("success rates concentrate around the exact value across seeds") {
  // 1000 independent tallies of 400 trials each; at four standard deviations
  // essentially all of them must bracket the exact probability.
  const double se = std::sqrt(kPJoint * (1.0 - kPJoint) / 400.0);
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    ProtocolConfig cfg;
    cfg.seed = seed;
    const MonteCarloStats stats = monte_carlo(cfg, 400);
    if (std::abs(stats.success_rate - kPJoint) <= 4.0 * se) ++within;
  }
  CHECK(within >= 999);
}

TEST_CASE("pulse timing budget") {
  const double g = 2.0 * kPi * 5.0e4;  // rad/s

  SUBCASE("durations at the canonical angles") {
    const TimingBudget t = timing_budget(g, kDefaultTheta1, kDefaultTheta2, 0.0, 1e-2);
    CHECK(std::abs(t.t_pulse_theta1 - 2.5e-6) < 1e-20);
    CHECK(std::abs(t.t_pulse_theta2 - 1.75e-5) < 1e-19);
    CHECK(std::abs(t.total_time - 4.0e-5) < 1e-19);
    CHECK(t.g == g);
    CHECK(t.decoherence_bound == 1e-2);
    CHECK(t.within_bound);
  }

  SUBCASE("transit time is part of the total") {
    const TimingBudget t = timing_budget(g, kDefaultTheta1, kDefaultTheta2, 1e-3, 2e-3);
    CHECK(std::abs(t.total_time - (1e-3 + 4.0e-5)) < 1e-18);
    CHECK(t.within_bound);
  }

  SUBCASE("a tight bound fails") {
    const TimingBudget t = timing_budget(g, kDefaultTheta1, kDefaultTheta2, 0.0, 1e-6);
    CHECK_FALSE(t.within_bound);
  }

  SUBCASE("validation") {
    CHECK_THROWS_AS(timing_budget(0.0, 1.0, 1.0, 0.0, 1.0), NonPositiveCoupling);
    CHECK_THROWS_AS(timing_budget(-5.0, 1.0, 1.0, 0.0, 1.0), NonPositiveCoupling);
    CHECK_THROWS_AS(timing_budget(g, -0.1, 1.0, 0.0, 1.0), InvalidRange);
    CHECK_THROWS_AS(timing_budget(g, 1.0, -1.0, 0.0, 1.0), InvalidRange);
    CHECK_THROWS_AS(timing_budget(g, 1.0, 1.0, -1e-9, 1.0), InvalidRange);
    CHECK_THROWS_AS(timing_budget(g, 1.0, 1.0, 0.0, std::nan("")), InvalidRange);
  }
}

}  // TEST_SUITE
