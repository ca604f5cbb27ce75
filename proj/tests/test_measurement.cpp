#include "doctest.h"

#include <cmath>

#include "cavsim/measurement.hpp"
#include "test_helpers.hpp"

using namespace cavsim;

TEST_SUITE("measurement") {

TEST_CASE("born probabilities on a hand-built superposition") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  StateVector s = zero_state(space);
  s.amps[space->index_of({0, 0})] = cplx(0.8, 0.0);
  s.amps[space->index_of({1, 1})] = cplx(0.0, 0.6);
  const auto probs = outcome_probabilities(s, 1);
  CHECK(probs.p_g == doctest::Approx(0.64));
  CHECK(probs.p_e == doctest::Approx(0.36));
  CHECK(probs.p_g + probs.p_e == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("probabilities sum to one on random states") {
  SplitRng rng(8);
  const auto space = make_space(
      {Subsystem::mode("m", 4), Subsystem::atom("a"), Subsystem::atom("b")});
  for (int rep = 0; rep < 50; ++rep) {
    const StateVector s = testutil::random_state(space, rng);
    for (const std::size_t atom : {1u, 2u}) {
      const auto probs = outcome_probabilities(s, atom);
      CHECK(std::abs(probs.p_g + probs.p_e - 1.0) <= 1e-12);
      CHECK(probs.p_g >= 0.0);
      CHECK(probs.p_e >= 0.0);
    }
  }
}

TEST_CASE("projection collapses, normalizes, and is idempotent") {
  SplitRng rng(9);
  const auto space = make_space({Subsystem::mode("m", 4), Subsystem::atom("q")});
  const StateVector s = testutil::random_state(space, rng);

  const Projection proj = project(s, 1, Outcome::E);
  CHECK(norm(proj.collapsed) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(proj.probability == doctest::Approx(outcome_probabilities(s, 1).p_e));

  // no |g> amplitude survives
  detail::for_each_run(*space, {{1, 0}}, [&](std::size_t offset, std::size_t len) {
    for (std::size_t k = 0; k < len; ++k) {
      CHECK(std::abs(proj.collapsed.amps[offset + k]) == 0.0);
    }
  });

  const Projection again = project(proj.collapsed, 1, Outcome::E);
  CHECK(again.probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(testutil::max_amp_diff(again.collapsed, proj.collapsed) < 1e-13);
}

TEST_CASE("impossible branches and bad inputs are rejected") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  const StateVector g_only = ket_state(space, {1, 0});
  CHECK_THROWS_AS(project(g_only, 1, Outcome::E), ZeroProbabilityBranch);

  StateVector big = g_only;
  big.amps[0] = cplx(1.0, 0.0);  // norm sqrt(2)
  CHECK_THROWS_AS(outcome_probabilities(big, 1), NotNormalized);

  CHECK_THROWS_AS(outcome_probabilities(g_only, 3), IndexError);
  CHECK_THROWS_AS(outcome_probabilities(g_only, 0), InvalidSubsystem);  // a mode
}

TEST_CASE("sampling matches the projected branches and is reproducible") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  StateVector s = zero_state(space);
  s.amps[space->index_of({0, 0})] = cplx(0.8, 0.0);
  s.amps[space->index_of({1, 1})] = cplx(0.0, 0.6);

  SplitRng rng_a(2718);
  SplitRng rng_b(2718);
  for (int rep = 0; rep < 20; ++rep) {
    auto [rec_a, state_a] = sample(s, 1, rng_a);
    auto [rec_b, state_b] = sample(s, 1, rng_b);
    CHECK(rec_a.outcome == rec_b.outcome);
    CHECK(rec_a.probability == rec_b.probability);
    CHECK(testutil::max_amp_diff(state_a, state_b) == 0.0);

    const Projection ref = project(s, 1, rec_a.outcome);
    CHECK(rec_a.probability == doctest::Approx(ref.probability));
    CHECK(testutil::max_amp_diff(state_a, ref.collapsed) < 1e-15);
    CHECK(rec_a.atom == 1);
  }
}

TEST_CASE("sampled frequencies track the born rule") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  StateVector s = zero_state(space);
  s.amps[space->index_of({0, 0})] = cplx(0.8, 0.0);
  s.amps[space->index_of({1, 1})] = cplx(0.0, 0.6);

  const std::size_t n = 100000;
  SplitRng rng(123);
  std::size_t excited = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto [record, collapsed] = sample(s, 1, rng);
    (void)collapsed;
    if (record.outcome == Outcome::E) ++excited;
  }
  const double rate = static_cast<double>(excited) / static_cast<double>(n);
  const double sigma = std::sqrt(0.36 * 0.64 / static_cast<double>(n));
  CHECK(std::abs(rate - 0.36) < 3.0 * sigma);
}

TEST_CASE("derived trial streams are decorrelated and in range") {
  SplitRng a = SplitRng::for_trial(42, 0);
  SplitRng b = SplitRng::for_trial(42, 1);
  SplitRng a2 = SplitRng::for_trial(42, 0);
  CHECK(a.next_u64() != b.next_u64());
  CHECK(SplitRng::for_trial(42, 0).next_u64() == a2.next_u64());
  SplitRng r(0);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

}  // TEST_SUITE
