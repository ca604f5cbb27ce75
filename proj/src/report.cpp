#include "cavsim/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace cavsim {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kQuotedFidelity = 0.97;
constexpr double kQuotedSuccess = 0.25;

using ordered_json = nlohmann::ordered_json;

double checked(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw SimError(std::string("non-finite value for ") + what);
  }
  return v;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json config_json(const ProtocolConfig& config) {
  ordered_json j = ordered_json::object();
  j["alpha_re"] = checked(config.channel.alpha.real(), "alpha_re");
  j["alpha_im"] = checked(config.channel.alpha.imag(), "alpha_im");
  j["beta_re"] = checked(config.channel.beta.real(), "beta_re");
  j["beta_im"] = checked(config.channel.beta.imag(), "beta_im");
  j["theta1"] = checked(config.theta1, "theta1");
  j["theta2"] = checked(config.theta2, "theta2");
  j["mode_levels"] = config.mode_levels;
  j["leak_tol"] = checked(config.leak_tol, "leak_tol");
  j["seed"] = config.seed;
  return j;
}

}  // namespace

RunReport make_run_report(const ProtocolConfig& config) {
  const ProtocolResult result = run_postselected(config);
  RunReport report;
  report.config = config;
  report.p_e1 = result.p_e1;
  report.p_e2_given_e1 = result.p_e2_given_e1;
  report.p_joint = result.p_joint;
  report.fidelity_sim = result.fidelity;
  report.fidelity_formula = fidelity_formula(config.theta2);
  report.cos_sqrt2_theta2 = std::cos(kSqrt2 * config.theta2);

  // At the canonical operating point the computed numbers sit measurably
  // away from the values usually quoted for this protocol; say so rather
  // than leaving the reader to reconcile them.
  if (std::abs(config.theta2 - kDefaultTheta2) < 1e-12) {
    report.discrepancy_notes.push_back(
        "post-selected fidelity computes to " + fmt(report.fidelity_sim) +
        " at theta2 = 7*pi/4, above the commonly quoted 0.97 (gap " +
        fmt(report.fidelity_sim - kQuotedFidelity) +
        "); the quoted figure treats cos(sqrt(2)*theta2) = " +
        fmt(report.cos_sqrt2_theta2) + " as exactly zero");
    report.discrepancy_notes.push_back(
        "joint e,e detection probability computes to " + fmt(report.p_joint) +
        ", below the commonly quoted success rate 0.25 (gap " +
        fmt(kQuotedSuccess - report.p_joint) +
        "); the quoted figure counts retaining one of four equally likely "
        "detector patterns, not the simulated pattern probability");
  }
  return report;
}

std::string run_report_json(const RunReport& report) {
  ordered_json j = ordered_json::object();
  j["config"] = config_json(report.config);
  j["p_e1"] = checked(report.p_e1, "p_e1");
  j["p_e2_given_e1"] = checked(report.p_e2_given_e1, "p_e2_given_e1");
  j["p_joint"] = checked(report.p_joint, "p_joint");
  j["fidelity_sim"] = checked(report.fidelity_sim, "fidelity_sim");
  j["fidelity_formula"] = checked(report.fidelity_formula, "fidelity_formula");
  j["cos_sqrt2_theta2"] = checked(report.cos_sqrt2_theta2, "cos_sqrt2_theta2");
  j["discrepancy_notes"] = report.discrepancy_notes;
  return j.dump(2);
}

std::string run_report_text(const RunReport& report) {
  std::string out;
  out += "alpha            = " + fmt(report.config.channel.alpha.real()) + " + " +
         fmt(report.config.channel.alpha.imag()) + "i\n";
  out += "beta             = " + fmt(report.config.channel.beta.real()) + " + " +
         fmt(report.config.channel.beta.imag()) + "i\n";
  out += "theta1           = " + fmt(report.config.theta1) + "\n";
  out += "theta2           = " + fmt(report.config.theta2) + "\n";
  out += "mode_levels      = " + std::to_string(report.config.mode_levels) + "\n";
  out += "p_e1             = " + fmt(report.p_e1) + "\n";
  out += "p_e2_given_e1    = " + fmt(report.p_e2_given_e1) + "\n";
  out += "p_joint          = " + fmt(report.p_joint) + "\n";
  out += "fidelity_sim     = " + fmt(report.fidelity_sim) + "\n";
  out += "fidelity_formula = " + fmt(report.fidelity_formula) + "\n";
  out += "cos_sqrt2_theta2 = " + fmt(report.cos_sqrt2_theta2) + "\n";
  for (const std::string& note : report.discrepancy_notes) {
    out += "note: " + note + "\n";
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "theta2,cos_sqrt2_theta2,fidelity_formula,fidelity_sim,p_joint\n";
  for (const SweepRow& row : rows) {
    out += fmt(row.theta2) + "," + fmt(row.cos_sqrt2_theta2) + "," +
           fmt(row.fidelity_formula) + ",";
    out += row.fidelity_sim ? fmt(*row.fidelity_sim) : std::string("NA");
    out += "," + fmt(row.p_joint) + "\n";
  }
  return out;
}

std::string monte_carlo_json(const ProtocolConfig& config,
                             const MonteCarloStats& stats) {
  ordered_json j = ordered_json::object();
  j["config"] = config_json(config);
  j["trials"] = stats.trials;
  j["successes"] = stats.successes;
  j["success_rate"] = checked(stats.success_rate, "success_rate");
  j["stderr"] = checked(stats.std_error, "stderr");
  if (stats.fidelity_of_successes) {
    j["fidelity_of_successes"] = checked(*stats.fidelity_of_successes,
                                         "fidelity_of_successes");
  } else {
    j["fidelity_of_successes"] = nullptr;
  }
  j["failures"] = ordered_json::object();
  j["failures"]["gg"] = stats.failures_gg;
  j["failures"]["ge"] = stats.failures_ge;
  j["failures"]["eg"] = stats.failures_eg;
  return j.dump(2);
}

std::string optimize_json(double lo, double hi, const OptimizeResult& result) {
  ordered_json j = ordered_json::object();
  j["theta2_min"] = checked(lo, "theta2_min");
  j["theta2_max"] = checked(hi, "theta2_max");
  j["theta2_star"] = checked(result.theta2_star, "theta2_star");
  j["fidelity_star"] = checked(result.fidelity_star, "fidelity_star");
  return j.dump(2);
}

std::string timing_json(const TimingBudget& budget) {
  ordered_json j = ordered_json::object();
  j["g"] = checked(budget.g, "g");
  j["t_pulse_theta1"] = checked(budget.t_pulse_theta1, "t_pulse_theta1");
  j["t_pulse_theta2"] = checked(budget.t_pulse_theta2, "t_pulse_theta2");
  j["transit_time"] = checked(budget.transit_time, "transit_time");
  j["total_time"] = checked(budget.total_time, "total_time");
  j["decoherence_bound"] = checked(budget.decoherence_bound, "decoherence_bound");
  j["within_bound"] = budget.within_bound;
  return j.dump(2);
}

}  // namespace cavsim
