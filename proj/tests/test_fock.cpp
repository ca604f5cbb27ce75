#include "doctest.h"

#include <cmath>
#include <complex>
#include <set>

#include "cavsim/fock.hpp"
#include "test_helpers.hpp"

using namespace cavsim;

TEST_SUITE("fock") {

TEST_CASE("make_space validation") {
  CHECK_THROWS_AS(make_space({}), InvalidSubsystem);
  CHECK_THROWS_AS(make_space({Subsystem::mode("m", 2)}), InvalidSubsystem);
  CHECK_THROWS_AS(make_space({Subsystem::mode("m", 0)}), InvalidSubsystem);
  CHECK_THROWS_AS(make_space({Subsystem{SubsystemKind::Atom, 3, "bad"}}),
                  InvalidSubsystem);
  CHECK(make_space({Subsystem::mode("m", 3)})->dim() == 3);
  CHECK(make_space({Subsystem::atom("q")})->dim() == 2);
}

TEST_CASE("strides and indexing are mixed-radix, first subsystem most significant") {
  const auto space = make_space(
      {Subsystem::mode("m0", 4), Subsystem::mode("m1", 4), Subsystem::atom("q")});
  CHECK(space->dim() == 32);
  CHECK(space->stride(0) == 8);
  CHECK(space->stride(1) == 2);
  CHECK(space->stride(2) == 1);
  CHECK(space->index_of({2, 1, 0}) == 18);
  CHECK(space->index_of({0, 0, 1}) == 1);
  CHECK(basis_index(*space, {3, 3, 1}) == 31);

  for (std::size_t i = 0; i < space->dim(); ++i) {
    CHECK(space->index_of(space->ket_at(i)) == i);
  }
  CHECK(basis_ket(*space, 18) == BasisKet{2, 1, 0});
}

TEST_CASE("protocol-shaped space flat layout") {
  const auto space = make_space(
      {Subsystem::mode("A", 4), Subsystem::mode("B", 4), Subsystem::mode("C", 4),
       Subsystem::mode("D", 4), Subsystem::atom("atom1"), Subsystem::atom("atom2")});
  CHECK(space->dim() == 1024);
  CHECK(space->stride(0) == 256);
  CHECK(space->stride(5) == 1);
  CHECK(space->index_of({0, 0, 1, 0, 1, 1}) == 16 + 2 + 1);
  CHECK(space->digit(19, 2) == 1);
  CHECK(space->digit(19, 4) == 1);
  CHECK(space->digit(19, 0) == 0);
}

TEST_CASE("index errors") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  CHECK_THROWS_AS(space->index_of({0}), OutOfRange);
  CHECK_THROWS_AS(space->index_of({3, 0}), OutOfRange);
  CHECK_THROWS_AS(space->index_of({-1, 0}), OutOfRange);
  CHECK_THROWS_AS(space->index_of({0, 2}), OutOfRange);
  CHECK_THROWS_AS(space->ket_at(6), OutOfRange);
  CHECK_THROWS_AS(space->stride(2), IndexError);
}

TEST_CASE("state algebra") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  const StateVector g0 = ket_state(space, {0, 0});
  const StateVector e0 = ket_state(space, {0, 1});

  CHECK(norm(g0) == doctest::Approx(1.0));
  CHECK(std::abs(inner(g0, e0)) < 1e-15);

  const StateVector sup = add_scaled(g0, cplx(0.0, 1.0), e0);  // |g0> + i|e0>
  CHECK(norm(sup) == doctest::Approx(std::sqrt(2.0)));
  // conjugate-linear first slot: <sup|e0> = conj(i) = -i
  CHECK(std::abs(inner(sup, e0) - cplx(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(inner(e0, sup) - cplx(0.0, 1.0)) < 1e-15);

  const StateVector unit = normalize(sup);
  CHECK(norm(unit) == doctest::Approx(1.0));

  CHECK_THROWS_AS(normalize(zero_state(space)), ZeroNorm);

  const auto other = make_space({Subsystem::mode("x", 3), Subsystem::atom("q")});
  CHECK_THROWS_AS(inner(g0, ket_state(other, {0, 0})), SpaceMismatch);

  // same structure, different shared_ptr: still the same space
  const auto clone = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  CHECK(std::abs(inner(g0, ket_state(clone, {0, 0})) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("fidelity requires unit norm and squares the overlap") {
  const auto space = make_space({Subsystem::mode("m", 3), Subsystem::atom("q")});
  const StateVector a = ket_state(space, {0, 0});
  const StateVector b = normalize(add_scaled(a, cplx(1.0, 0.0), ket_state(space, {1, 0})));
  CHECK(fidelity(a, b) == doctest::Approx(0.5));
  CHECK(fidelity(a, a) == doctest::Approx(1.0));

  StateVector twice = a;
  twice.amps[0] *= 2.0;
  CHECK_THROWS_AS(fidelity(a, twice), NotNormalized);
}

TEST_CASE("global phase fixing") {
  SplitRng rng(7);
  const auto space = make_space({Subsystem::mode("m", 4), Subsystem::atom("q")});
  const StateVector s = testutil::random_state(space, rng);
  StateVector rotated = s;
  const cplx phase = std::polar(1.0, 2.1314);
  for (auto& amp : rotated.amps) amp *= phase;

  const StateVector fa = fix_global_phase(s);
  const StateVector fb = fix_global_phase(rotated);
  CHECK(testutil::max_amp_diff(fa, fb) < 1e-14);
  CHECK(fa.amps[0].imag() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(fa.amps[0].real() > 0.0);

  CHECK_THROWS_AS(fix_global_phase(zero_state(space)), ZeroNorm);
}

TEST_CASE("for_each_run enumerates exactly the constrained slice") {
  const auto space = make_space(
      {Subsystem::mode("m", 3), Subsystem::atom("a"), Subsystem::atom("b")});
  for (std::size_t pos = 0; pos < 3; ++pos) {
    for (int d = 0; d < space->subsystem(pos).levels; ++d) {
      std::set<std::size_t> seen;
      detail::for_each_run(*space, {{pos, d}},
                           [&](std::size_t offset, std::size_t len) {
                             for (std::size_t k = 0; k < len; ++k) {
                               CHECK(seen.insert(offset + k).second);
                             }
                           });
      std::set<std::size_t> expected;
      for (std::size_t i = 0; i < space->dim(); ++i) {
        if (space->digit(i, pos) == d) expected.insert(i);
      }
      CHECK(seen == expected);
    }
  }

  // two constraints at once
  std::set<std::size_t> seen;
  detail::for_each_run(*space, {{0, 2}, {2, 1}},
                       [&](std::size_t offset, std::size_t len) {
                         for (std::size_t k = 0; k < len; ++k) seen.insert(offset + k);
                       });
  std::set<std::size_t> expected;
  for (std::size_t i = 0; i < space->dim(); ++i) {
    if (space->digit(i, 0) == 2 && space->digit(i, 2) == 1) expected.insert(i);
  }
  CHECK(seen == expected);
}

}  // TEST_SUITE
