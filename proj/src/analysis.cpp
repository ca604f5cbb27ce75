#include "cavsim/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace cavsim {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

bool finite(double x) { return std::isfinite(x); }

// Simulated post-selected fidelity, or nothing when the branch is dead.
std::optional<double> sim_fidelity(double theta2, const ChannelParams& params) {
  ProtocolConfig cfg;
  cfg.channel = params;
  cfg.theta2 = theta2;
  SampledProtocol sp(cfg);
  if (!sp.postselected()) return std::nullopt;
  return sp.postselected()->fidelity;
}

}  // namespace

double fidelity_formula(double theta2) {
  const double c2 = std::cos(kSqrt2 * theta2);
  const double s = std::sin(theta2);
  const double denom = c2 * c2 + s * s;
  if (denom <= 1e-15) {
    throw DegenerateAngle("fidelity formula denominator vanished");
  }
  return s * s / denom;
}

std::vector<SweepRow> sweep(double theta2_min, double theta2_max,
                            std::size_t steps, const ChannelParams& params) {
  if (!finite(theta2_min) || !finite(theta2_max) || theta2_max < theta2_min ||
      steps < 2) {
    throw InvalidRange("sweep needs a finite range and at least 2 steps");
  }
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  const double span = theta2_max - theta2_min;
  for (std::size_t i = 0; i < steps; ++i) {
    const double theta2 =
        theta2_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    SweepRow row;
    row.theta2 = theta2;
    row.cos_sqrt2_theta2 = std::cos(kSqrt2 * theta2);
    row.fidelity_formula = fidelity_formula(theta2);

    ProtocolConfig cfg;
    cfg.channel = params;
    cfg.theta2 = theta2;
    SampledProtocol sp(cfg);
    row.p_joint = sp.success_probability();
    if (sp.postselected()) row.fidelity_sim = sp.postselected()->fidelity;
    rows.push_back(row);
  }
  return rows;
}

OptimizeResult optimize_theta2(double lo, double hi, const ChannelParams& params) {
  if (!finite(lo) || !finite(hi) || hi < lo) {
    throw InvalidRange("optimization interval must be finite with hi >= lo");
  }

  // Dead angles rank below every attainable fidelity.
  auto f = [&](double theta2) {
    return sim_fidelity(theta2, params).value_or(-1.0);
  };

  const std::size_t grid = 1024;
  double best_theta = lo;
  double best_f = f(lo);
  for (std::size_t i = 1; i < grid; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double v = f(t);
    if (v > best_f) {
      best_f = v;
      best_theta = t;
    }
  }
  if (best_f < 0.0) {
    throw ZeroProbabilityBranch("no attainable post-selected branch in the interval");
  }

  // Golden-section refinement around the best grid point.
  const double h = (hi - lo) / static_cast<double>(grid - 1);
  double a = std::max(lo, best_theta - h);
  double b = std::min(hi, best_theta + h);
  const double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > 1e-9) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = f(mid);
  if (fm > best_f) {
    best_f = fm;
    best_theta = mid;
  }
  return {best_theta, best_f};
}

MonteCarloStats monte_carlo(const ProtocolConfig& config, std::size_t trials) {
  if (trials == 0) throw InvalidRange("monte_carlo needs at least one trial");
  const SampledProtocol sp(config);
  MonteCarloStats stats;
  stats.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    SplitRng rng = SplitRng::for_trial(config.seed, i);
    const TrialOutcome t = sp.trial(rng);
    if (t.success) {
      ++stats.successes;
    } else if (t.first == Outcome::G && t.second == Outcome::G) {
      ++stats.failures_gg;
    } else if (t.first == Outcome::G) {
      ++stats.failures_ge;
    } else {
      ++stats.failures_eg;
    }
  }
  stats.success_rate =
      static_cast<double>(stats.successes) / static_cast<double>(trials);
  stats.std_error = std::sqrt(stats.success_rate * (1.0 - stats.success_rate) /
                              static_cast<double>(trials));
  if (stats.successes > 0) {
    stats.fidelity_of_successes = sp.postselected()->fidelity;
  }
  return stats;
}

TimingBudget timing_budget(double g, double theta1, double theta2,
                           double transit_time, double decoherence_bound) {
  if (!finite(g) || g <= 0.0) {
    throw NonPositiveCoupling("coupling must be a positive rate");
  }
  if (!finite(theta1) || !finite(theta2) || !finite(transit_time) ||
      !finite(decoherence_bound) || theta1 < 0.0 || theta2 < 0.0 ||
      transit_time < 0.0 || decoherence_bound < 0.0) {
    throw InvalidRange("angles and times must be finite and non-negative");
  }
  TimingBudget b;
  b.g = g;
  b.t_pulse_theta1 = theta1 / g;
  b.t_pulse_theta2 = theta2 / g;
  b.transit_time = transit_time;
  b.total_time = 2.0 * b.t_pulse_theta1 + 2.0 * b.t_pulse_theta2 + transit_time;
  b.decoherence_bound = decoherence_bound;
  b.within_bound = b.total_time < decoherence_bound;
  return b;
}

}  // namespace cavsim
