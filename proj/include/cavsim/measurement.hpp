#pragma once

// Projective measurement of a single atom in the {|g>, |e>} basis.

#include <cstddef>
#include <utility>

#include "cavsim/fock.hpp"
#include "cavsim/rng.hpp"

namespace cavsim {

enum class Outcome { G, E };

struct MeasurementRecord {
  std::size_t atom;
  Outcome outcome;
  double probability;  // of the recorded outcome, given the pre-measurement state
};

struct OutcomeProbabilities {
  double p_g;
  double p_e;
};

// Born probabilities for measuring the atom at position `atom`.  The state
// must be normalized within 1e-9 (NotNormalized); the two values are
// renormalized to sum to exactly 1.  IndexError / InvalidSubsystem for a
// position that is absent or not an atom.
OutcomeProbabilities outcome_probabilities(const StateVector& state,
                                           std::size_t atom);

struct Projection {
  StateVector collapsed;  // normalized post-measurement state
  double probability;     // weight of the selected branch
};

// Collapse onto the given outcome.  Throws ZeroProbabilityBranch if the
// branch weight is below 1e-15.
Projection project(const StateVector& state, std::size_t atom, Outcome outcome);

// Draw one outcome (u < p_e picks E) and collapse onto it.
std::pair<MeasurementRecord, StateVector> sample(const StateVector& state,
                                                 std::size_t atom, SplitRng& rng);

}  // namespace cavsim
