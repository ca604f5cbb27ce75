#pragma once

// Machine-readable output: a run report plus deterministic serializers.
// All emitters are pure functions of their inputs (insertion-ordered keys,
// shortest round-trip float printing), so repeated invocations produce
// byte-identical bytes -- which the tests assert.

#include <string>
#include <vector>

#include "cavsim/analysis.hpp"
#include "cavsim/protocol.hpp"

namespace cavsim {

struct RunReport {
  ProtocolConfig config;
  double p_e1 = 0.0;
  double p_e2_given_e1 = 0.0;
  double p_joint = 0.0;
  double fidelity_sim = 0.0;
  double fidelity_formula = 0.0;
  double cos_sqrt2_theta2 = 0.0;
  // Always present (possibly empty): notes flagging where the computed
  // numbers differ from the commonly quoted reference values for this
  // protocol at theta2 = 7*pi/4.
  std::vector<std::string> discrepancy_notes;
};

// Runs the protocol and fills in every field, including the notes.
RunReport make_run_report(const ProtocolConfig& config);

std::string run_report_json(const RunReport& report);
std::string run_report_text(const RunReport& report);

// Header "theta2,cos_sqrt2_theta2,fidelity_formula,fidelity_sim,p_joint";
// dead-branch rows print NA in the fidelity_sim column.
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string monte_carlo_json(const ProtocolConfig& config, const MonteCarloStats& stats);
std::string optimize_json(double lo, double hi, const OptimizeResult& result);
std::string timing_json(const TimingBudget& budget);

}  // namespace cavsim
