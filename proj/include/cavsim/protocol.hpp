#pragma once

// The measurement-driven state transfer between two bimodal cavities.
//
// One photon is shared between modes C and D (one mode of each cavity) as
// alpha|1>_C|0>_D + beta|0>_C|1>_D.  An excited atom crosses the first
// cavity interacting with A (theta1) then C (theta2), gets detected; a second
// excited atom crosses the other cavity interacting with B (theta1) then D
// (theta2), gets detected.  Keeping only the runs where both atoms come out
// excited leaves modes A and B holding alpha|1>_A|0>_B + beta|0>_A|1>_B up
// to truncation of the rotation angles, with no interferometric Bell
// measurement anywhere.
//
// Subsystem order everywhere: [A, B, C, D, atom1, atom2].

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cavsim/fock.hpp"
#include "cavsim/measurement.hpp"
#include "cavsim/rng.hpp"

namespace cavsim {

inline constexpr std::size_t kModeA = 0;
inline constexpr std::size_t kModeB = 1;
inline constexpr std::size_t kModeC = 2;
inline constexpr std::size_t kModeD = 3;
inline constexpr std::size_t kAtom1 = 4;
inline constexpr std::size_t kAtom2 = 5;

inline constexpr double kDefaultTheta1 = 0.7853981633974483;  // pi/4
inline constexpr double kDefaultTheta2 = 5.497787143782138;   // 7*pi/4

struct ChannelParams {
  cplx alpha;
  cplx beta;
};

struct ProtocolConfig {
  ChannelParams channel{cplx(0.7071067811865476, 0.0),
                        cplx(0.7071067811865476, 0.0)};
  double theta1 = kDefaultTheta1;
  double theta2 = kDefaultTheta2;
  int mode_levels = 4;
  double leak_tol = 1e-12;
  std::uint64_t seed = 0;
};

// [A, B, C, D, atom1, atom2] with the default (or given) mode truncation.
SpacePtr protocol_space(int mode_levels = 4);

// alpha |0,0,1,0> + beta |0,0,0,1> on the modes; atoms parked at |g> until
// the run injects them excited.  NotNormalized unless |alpha|^2 + |beta|^2
// is 1 within 1e-9.
StateVector channel_state(const ChannelParams& params, const SpacePtr& space);

// alpha |1,0,0,0> + beta |0,1,0,0>: what a perfect transfer leaves on modes
// A, B (C = D = 0, atoms at the same |g> placeholder).
StateVector target_state(const ChannelParams& params, const SpacePtr& space);

struct ProtocolResult {
  // In order: after_A, joint_with_C2, after_C, collapse_e1, after_B,
  // after_D, collapse_e2.  Collapse snapshots are stored normalized.
  std::vector<std::pair<std::string, StateVector>> snapshots;
  double p_e1 = 0.0;           // first atom detected excited
  double p_e2_given_e1 = 0.0;  // second atom excited, conditioned on the first
  double p_joint = 0.0;        // product of the two
  double fidelity = 0.0;       // |<target|final>|^2 on the post-selected branch
};

const StateVector& snapshot(const ProtocolResult& result, std::string_view label);

// Full deterministic run post-selected on both atoms exiting excited.
// Throws ZeroProbabilityBranch if either post-selected branch carries
// (numerically) no weight at this theta2.
ProtocolResult run_postselected(const ProtocolConfig& config);

// The seven analytically known intermediate states, entered as hard-coded
// amplitude tables (never via jc_apply) so the simulator has an independent
// cross-check at every step.
enum class ProtocolStep {
  AfterPulseA,      // "after_A"
  JointWithChannel, // "joint_with_C2"
  AfterPulseC,      // "after_C"
  CollapseAtom1,    // "collapse_e1"
  AfterPulseB,      // "after_B"
  AfterPulseD,      // "after_D"
  CollapseAtom2,    // "collapse_e2"
};

std::string_view step_label(ProtocolStep step);

// The AfterPulse* tables are unnormalized (for theta1 = pi/4 they reduce to
// the bare products of doublet cosines and sines with the common beam-splitter
// 1/2 removed); the Collapse* tables are normalized.  Compare with
// fix_global_phase + normalize.
StateVector closed_form_state(ProtocolStep step, const ProtocolConfig& config);

struct TrialOutcome {
  bool success = false;
  Outcome first = Outcome::G;
  Outcome second = Outcome::G;
  double path_probability = 0.0;  // product of the drawn outcome probabilities
  // Set on success; the post-selected branch is deterministic, so every
  // successful trial shares one result.
  std::shared_ptr<const ProtocolResult> result;
};

// The per-trial sampler.  All unitary evolution is deterministic given the
// config, so it is computed once here and each trial only draws the two
// measurement outcomes.  trial() consumes exactly two uniform deviates.
class SampledProtocol {
 public:
  explicit SampledProtocol(const ProtocolConfig& config);

  TrialOutcome trial(SplitRng& rng) const;

  // p_e1 * p_e2|e1; zero when the post-selected path is dead.
  double success_probability() const { return success_prob_; }
  // Null when the post-selected path is dead at this theta2.
  std::shared_ptr<const ProtocolResult> postselected() const { return success_; }

 private:
  struct Branch {
    bool reachable = false;
    OutcomeProbabilities m2{0.0, 0.0};
  };

  OutcomeProbabilities m1_{0.0, 0.0};
  Branch after_g1_;
  Branch after_e1_;
  std::shared_ptr<const ProtocolResult> success_;
  double success_prob_ = 0.0;
};

// One stochastic pass: measurement outcomes drawn from rng, unitary parts
// exact.  Equivalent to SampledProtocol(config).trial(rng).
TrialOutcome run_sampled(const ProtocolConfig& config, SplitRng& rng);

// Haar-ish random normalized (alpha, beta) pair, for property tests and the
// built-in self-checks.
ChannelParams random_channel(SplitRng& rng);

}  // namespace cavsim
