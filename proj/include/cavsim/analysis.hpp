#pragma once

// Parameter sweeps, optimization, Monte Carlo statistics and the pulse
// timing budget on top of the protocol runner.

#include <cstddef>
#include <optional>
#include <vector>

#include "cavsim/protocol.hpp"

namespace cavsim {

// Post-selected transfer fidelity at theta1 = pi/4 as a closed form:
//   F(theta2) = sin^2(theta2) / (cos^2(sqrt(2) theta2) + sin^2(theta2)).
// Independent of (alpha, beta).  DegenerateAngle if the denominator is
// numerically zero (it never is for real theta2; the guard documents the
// domain).
double fidelity_formula(double theta2);

struct SweepRow {
  double theta2 = 0.0;
  double cos_sqrt2_theta2 = 0.0;
  double fidelity_formula = 0.0;
  // Empty when the post-selected branch carries no weight at this angle
  // (an atom can exit |g> with certainty, e.g. cos(theta2) = 0).
  std::optional<double> fidelity_sim;
  double p_joint = 0.0;
};

// Uniform inclusive grid of `steps` >= 2 points over [theta2_min, theta2_max]
// (InvalidRange otherwise), one protocol run per point.
std::vector<SweepRow> sweep(double theta2_min, double theta2_max,
                            std::size_t steps, const ChannelParams& params);

struct OptimizeResult {
  double theta2_star = 0.0;
  double fidelity_star = 0.0;
};

// Maximizes the simulated post-selected fidelity over [lo, hi]: coarse grid,
// then golden-section refinement to |interval| < 1e-9.
OptimizeResult optimize_theta2(double lo, double hi, const ChannelParams& params);

struct MonteCarloStats {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double std_error = 0.0;  // sqrt(rate * (1 - rate) / trials)
  // Every successful trial collapses to the same post-selected state, so
  // this is a single number; empty when no trial succeeded.
  std::optional<double> fidelity_of_successes;
  std::size_t failures_gg = 0;
  std::size_t failures_ge = 0;
  std::size_t failures_eg = 0;
};

// `trials` independent sampled runs; trial i draws from the stream derived
// from (config.seed, i), so the tally is reproducible and independent of
// any chunking or ordering of the trials.
MonteCarloStats monte_carlo(const ProtocolConfig& config, std::size_t trials);

struct TimingBudget {
  double g = 0.0;               // vacuum coupling, rad/s
  double t_pulse_theta1 = 0.0;  // duration of one theta1 pulse
  double t_pulse_theta2 = 0.0;  // duration of one theta2 pulse
  double transit_time = 0.0;
  double total_time = 0.0;      // 2*t1 + 2*t2 + transit
  double decoherence_bound = 0.0;
  bool within_bound = false;    // total_time < decoherence_bound
};

// Wall-clock cost of the four pulses for a physical coupling g.
// NonPositiveCoupling if g <= 0; InvalidRange for negative angles/times.
TimingBudget timing_budget(double g, double theta1, double theta2,
                           double transit_time, double decoherence_bound);

}  // namespace cavsim
