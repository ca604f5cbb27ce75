#include "cavsim/measurement.hpp"

#include <cmath>

#include "cavsim/kernels.hpp"

namespace cavsim {

namespace {

void check_atom(const HilbertSpace& space, std::size_t atom) {
  if (atom >= space.subsystem_count()) {
    throw IndexError("measured subsystem position out of range");
  }
  if (space.subsystem(atom).kind != SubsystemKind::Atom) {
    throw InvalidSubsystem("measured subsystem is not an atom");
  }
}

double level_weight(const StateVector& state, std::size_t atom, int level) {
  double w = 0.0;
  detail::for_each_run(*state.space, {{atom, level}},
                       [&](std::size_t offset, std::size_t len) {
                         w += kernels::norm_sq(state.amps.data() + offset, len);
                       });
  return w;
}

}  // namespace

OutcomeProbabilities outcome_probabilities(const StateVector& state,
                                           std::size_t atom) {
  check_atom(*state.space, atom);
  const double w_g = level_weight(state, atom, 0);
  const double w_e = level_weight(state, atom, 1);
  const double total = w_g + w_e;
  if (std::abs(std::sqrt(total) - 1.0) > 1e-9) {
    throw NotNormalized("measurement on a non-normalized state");
  }
  return {w_g / total, w_e / total};
}

Projection project(const StateVector& state, std::size_t atom, Outcome outcome) {
  const OutcomeProbabilities probs = outcome_probabilities(state, atom);
  const int keep = outcome == Outcome::E ? 1 : 0;
  const double p = outcome == Outcome::E ? probs.p_e : probs.p_g;
  if (p < 1e-15) {
    throw ZeroProbabilityBranch("selected outcome has (numerically) zero weight");
  }
  StateVector out = zero_state(state.space);
  detail::for_each_run(*state.space, {{atom, keep}},
                       [&](std::size_t offset, std::size_t len) {
                         for (std::size_t k = 0; k < len; ++k) {
                           out.amps[offset + k] = state.amps[offset + k];
                         }
                       });
  return {normalize(out), p};
}

std::pair<MeasurementRecord, StateVector> sample(const StateVector& state,
                                                 std::size_t atom, SplitRng& rng) {
  const OutcomeProbabilities probs = outcome_probabilities(state, atom);
  const double u = rng.next_double();
  const Outcome outcome = u < probs.p_e ? Outcome::E : Outcome::G;
  Projection proj = project(state, atom, outcome);
  return {MeasurementRecord{atom, outcome, proj.probability},
          std::move(proj.collapsed)};
}

}  // namespace cavsim
