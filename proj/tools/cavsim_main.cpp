// Command-line front end: deterministic protocol runs, sweeps, Monte Carlo
// tallies, fidelity optimization, pulse timing and a built-in self check.
// Exit codes: 0 success, 1 simulation/check failure, 2 bad arguments.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cavsim/analysis.hpp"
#include "cavsim/dynamics.hpp"
#include "cavsim/protocol.hpp"
#include "cavsim/report.hpp"

namespace {

constexpr double kPi = 3.141592653589793;

struct ChannelFlags {
  double alpha_re = 0.7071067811865476;
  double alpha_im = 0.0;
  double beta_re = 0.7071067811865476;
  double beta_im = 0.0;
  bool renormalize = false;
};

void add_channel_options(CLI::App* cmd, ChannelFlags* flags) {
  cmd->add_option("--alpha-re", flags->alpha_re, "Re(alpha) of the shared photon")
      ->capture_default_str();
  cmd->add_option("--alpha-im", flags->alpha_im, "Im(alpha)")->capture_default_str();
  cmd->add_option("--beta-re", flags->beta_re, "Re(beta)")->capture_default_str();
  cmd->add_option("--beta-im", flags->beta_im, "Im(beta)")->capture_default_str();
  cmd->add_flag("--renormalize", flags->renormalize,
                "rescale (alpha, beta) to unit norm instead of rejecting");
}

// Returns false (-> exit 2) when the pair is not normalized and
// renormalization was not requested.
bool resolve_channel(const ChannelFlags& flags, cavsim::ChannelParams* out) {
  const std::complex<double> alpha(flags.alpha_re, flags.alpha_im);
  const std::complex<double> beta(flags.beta_re, flags.beta_im);
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (std::abs(n - 1.0) > 1e-9) {
    if (!flags.renormalize) {
      std::cerr << "error: |alpha|^2 + |beta|^2 = " << n * n
                << " is not 1; pass --renormalize to rescale\n";
      return false;
    }
    if (n <= 1e-15) {
      std::cerr << "error: alpha and beta are both zero\n";
      return false;
    }
    out->alpha = alpha / n;
    out->beta = beta / n;
    return true;
  }
  out->alpha = alpha;
  out->beta = beta;
  return true;
}

cavsim::StateVector random_state(const cavsim::SpacePtr& space, cavsim::SplitRng& rng) {
  cavsim::StateVector s = cavsim::zero_state(space);
  for (auto& amp : s.amps) {
    amp = cavsim::cplx(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
  }
  return cavsim::normalize(s);
}

// --- self checks -----------------------------------------------------------

bool check_snapshots(std::size_t draws) {
  cavsim::SplitRng rng(12345);
  double worst = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    cavsim::ProtocolConfig cfg;
    cfg.channel = cavsim::random_channel(rng);
    cfg.theta2 = 2.0 * kPi * rng.next_double();
    cavsim::ProtocolResult result;
    try {
      result = cavsim::run_postselected(cfg);
    } catch (const cavsim::ZeroProbabilityBranch&) {
      continue;  // dead post-selected branch at this angle; nothing to compare
    }
    for (const auto step :
         {cavsim::ProtocolStep::AfterPulseA, cavsim::ProtocolStep::JointWithChannel,
          cavsim::ProtocolStep::AfterPulseC, cavsim::ProtocolStep::CollapseAtom1,
          cavsim::ProtocolStep::AfterPulseB, cavsim::ProtocolStep::AfterPulseD,
          cavsim::ProtocolStep::CollapseAtom2}) {
      const cavsim::StateVector sim = cavsim::fix_global_phase(
          cavsim::snapshot(result, cavsim::step_label(step)));
      const cavsim::StateVector analytic = cavsim::fix_global_phase(
          cavsim::normalize(cavsim::closed_form_state(step, cfg)));
      for (std::size_t i = 0; i < sim.amps.size(); ++i) {
        worst = std::max(worst, std::abs(sim.amps[i] - analytic.amps[i]));
      }
    }
  }
  const bool ok = worst <= 1e-10;
  std::printf("%s closed-form snapshots: max amplitude deviation %.3g over %zu draws\n",
              ok ? "PASS" : "FAIL", worst, draws);
  return ok;
}

bool check_propagator_oracle() {
  using cavsim::Subsystem;
  cavsim::SplitRng rng(777);
  double worst_state = 0.0;
  double worst_unitary = 0.0;
  const std::vector<std::vector<Subsystem>> spaces = {
      {Subsystem::mode("m", 4), Subsystem::atom("q")},
      {Subsystem::mode("m", 3), Subsystem::atom("q"), Subsystem::atom("idle")},
      {Subsystem::mode("m", 4), Subsystem::mode("idle", 3), Subsystem::atom("q")},
  };
  for (const auto& subsystems : spaces) {
    const cavsim::SpacePtr space = cavsim::make_space(subsystems);
    std::size_t atom_pos = 0;
    for (std::size_t p = 0; p < space->subsystem_count(); ++p) {
      if (space->subsystem(p).kind == cavsim::SubsystemKind::Atom) {
        atom_pos = p;
        break;
      }
    }
    const cavsim::DenseMatrix h = cavsim::jc_hamiltonian(*space, atom_pos, 0);
    for (int rep = 0; rep < 4; ++rep) {
      const double theta = 4.0 * kPi * (rng.next_double() - 0.5);
      const cavsim::DenseMatrix u = cavsim::propagator_expm(h, theta);
      const cavsim::StateVector psi = random_state(space, rng);
      const cavsim::StateVector fast =
          cavsim::jc_apply(psi, {atom_pos, 0, theta}, 1.0);
      const cavsim::StateVector slow = cavsim::apply_matrix(u, psi);
      for (std::size_t i = 0; i < fast.amps.size(); ++i) {
        worst_state = std::max(worst_state, std::abs(fast.amps[i] - slow.amps[i]));
      }
      // U^dagger U should be the identity to close to machine precision.
      const std::size_t n = u.dim();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          cavsim::cplx acc(0.0, 0.0);
          for (std::size_t k = 0; k < n; ++k) {
            acc += std::conj(u.at(k, i)) * u.at(k, j);
          }
          if (i == j) acc -= 1.0;
          worst_unitary = std::max(worst_unitary, std::abs(acc));
        }
      }
    }
  }
  const bool ok = worst_state <= 1e-10 && worst_unitary <= 1e-12;
  std::printf(
      "%s propagator oracle: max state deviation %.3g, max unitarity defect %.3g\n",
      ok ? "PASS" : "FAIL", worst_state, worst_unitary);
  return ok;
}

bool check_fidelity_identity() {
  cavsim::ChannelParams params{cavsim::cplx(0.7071067811865476, 0.0),
                               cavsim::cplx(0.7071067811865476, 0.0)};
  const auto rows = cavsim::sweep(0.0, 2.0 * kPi, 50, params);
  double worst = 0.0;
  std::size_t live = 0;
  for (const auto& row : rows) {
    if (!row.fidelity_sim) continue;
    ++live;
    worst = std::max(worst, std::abs(*row.fidelity_sim - row.fidelity_formula));
  }
  const bool ok = worst <= 1e-10 && live > 0;
  std::printf("%s fidelity identity: max |simulated - closed form| %.3g over %zu angles\n",
              ok ? "PASS" : "FAIL", worst, live);
  return ok;
}

int run_check() {
  bool ok = true;
  ok &= check_snapshots(25);
  ok &= check_propagator_oracle();
  ok &= check_fidelity_identity();
  std::printf("%s\n", ok ? "all checks passed" : "CHECKS FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"state transfer between two bimodal cavities, post-selected on "
               "both transit atoms exiting excited"};
  app.require_subcommand(1);

  // run ----------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "one deterministic post-selected run");
  ChannelFlags run_channel;
  double run_theta1 = kPi / 4.0;
  double run_theta2 = 7.0 * kPi / 4.0;
  int run_levels = 4;
  std::uint64_t run_seed = 0;
  std::string run_format = "json";
  add_channel_options(run_cmd, &run_channel);
  run_cmd->add_option("--theta1", run_theta1, "first-pulse angle g*t")
      ->capture_default_str();
  run_cmd->add_option("--theta2", run_theta2, "second-pulse angle g*t'")
      ->capture_default_str();
  run_cmd->add_option("--levels", run_levels, "photon levels kept per mode")
      ->capture_default_str();
  run_cmd->add_option("--seed", run_seed, "base seed (echoed into the report)")
      ->capture_default_str();
  run_cmd->add_option("--format", run_format, "json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // sweep --------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "grid of theta2 values, CSV output");
  ChannelFlags sweep_channel;
  double sweep_min = 0.0;
  double sweep_max = 2.0 * kPi;
  std::size_t sweep_steps = 33;
  std::string sweep_csv_path;
  add_channel_options(sweep_cmd, &sweep_channel);
  sweep_cmd->add_option("--min", sweep_min, "low end of theta2")->capture_default_str();
  sweep_cmd->add_option("--max", sweep_max, "high end of theta2")->capture_default_str();
  sweep_cmd->add_option("--steps", sweep_steps, "grid points (inclusive)")
      ->capture_default_str();
  sweep_cmd->add_option("--csv", sweep_csv_path, "also write the CSV to this file");

  // montecarlo ----------------------------------------------------------
  auto* mc_cmd = app.add_subcommand("montecarlo", "sampled trials with derived seeds");
  ChannelFlags mc_channel;
  double mc_theta1 = kPi / 4.0;
  double mc_theta2 = 7.0 * kPi / 4.0;
  std::size_t mc_trials = 100000;
  std::uint64_t mc_seed = 0;
  add_channel_options(mc_cmd, &mc_channel);
  mc_cmd->add_option("--theta1", mc_theta1, "first-pulse angle")->capture_default_str();
  mc_cmd->add_option("--theta2", mc_theta2, "second-pulse angle")->capture_default_str();
  mc_cmd->add_option("--trials", mc_trials, "number of trials")->capture_default_str();
  mc_cmd->add_option("--seed", mc_seed, "base seed; trial i uses (seed, i)")
      ->capture_default_str();

  // optimize ------------------------------------------------------------
  auto* opt_cmd = app.add_subcommand("optimize", "maximize fidelity over a theta2 range");
  ChannelFlags opt_channel;
  double opt_min = 0.0;
  double opt_max = 0.0;
  add_channel_options(opt_cmd, &opt_channel);
  opt_cmd->add_option("--min", opt_min, "low end of theta2")->required();
  opt_cmd->add_option("--max", opt_max, "high end of theta2")->required();

  // timing --------------------------------------------------------------
  auto* timing_cmd = app.add_subcommand("timing", "pulse durations for a physical coupling");
  double timing_g = 0.0;
  double timing_theta1 = kPi / 4.0;
  double timing_theta2 = 7.0 * kPi / 4.0;
  double timing_transit = 0.0;
  double timing_bound = 1e-2;
  timing_cmd->add_option("--g", timing_g, "vacuum coupling rate (rad/s)")->required();
  timing_cmd->add_option("--theta1", timing_theta1, "first-pulse angle")
      ->capture_default_str();
  timing_cmd->add_option("--theta2", timing_theta2, "second-pulse angle")
      ->capture_default_str();
  timing_cmd->add_option("--transit", timing_transit, "dead time between cavities (s)")
      ->capture_default_str();
  timing_cmd->add_option("--bound", timing_bound, "decoherence budget (s)")
      ->capture_default_str();

  // check ---------------------------------------------------------------
  app.add_subcommand("check", "run the built-in cross checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run_cmd->parsed()) {
      cavsim::ProtocolConfig config;
      if (!resolve_channel(run_channel, &config.channel)) return 2;
      if (run_levels < 3) {
        std::cerr << "error: --levels must be at least 3\n";
        return 2;
      }
      config.theta1 = run_theta1;
      config.theta2 = run_theta2;
      config.mode_levels = run_levels;
      config.seed = run_seed;
      const cavsim::RunReport report = cavsim::make_run_report(config);
      std::cout << (run_format == "text" ? cavsim::run_report_text(report)
                                         : cavsim::run_report_json(report) + "\n");
      return 0;
    }
    if (sweep_cmd->parsed()) {
      cavsim::ChannelParams params;
      if (!resolve_channel(sweep_channel, &params)) return 2;
      const auto rows = cavsim::sweep(sweep_min, sweep_max, sweep_steps, params);
      const std::string csv = cavsim::sweep_csv(rows);
      if (!sweep_csv_path.empty()) {
        std::ofstream out(sweep_csv_path, std::ios::binary);
        if (!out) {
          std::cerr << "error: cannot write " << sweep_csv_path << "\n";
          return 2;
        }
        out << csv;
      }
      std::cout << csv;
      return 0;
    }
    if (mc_cmd->parsed()) {
      cavsim::ProtocolConfig config;
      if (!resolve_channel(mc_channel, &config.channel)) return 2;
      config.theta1 = mc_theta1;
      config.theta2 = mc_theta2;
      config.seed = mc_seed;
      const cavsim::MonteCarloStats stats = cavsim::monte_carlo(config, mc_trials);
      std::cout << cavsim::monte_carlo_json(config, stats) << "\n";
      return 0;
    }
    if (opt_cmd->parsed()) {
      cavsim::ChannelParams params;
      if (!resolve_channel(opt_channel, &params)) return 2;
      const cavsim::OptimizeResult result =
          cavsim::optimize_theta2(opt_min, opt_max, params);
      std::cout << cavsim::optimize_json(opt_min, opt_max, result) << "\n";
      return 0;
    }
    if (timing_cmd->parsed()) {
      const cavsim::TimingBudget budget = cavsim::timing_budget(
          timing_g, timing_theta1, timing_theta2, timing_transit, timing_bound);
      std::cout << cavsim::timing_json(budget) << "\n";
      return 0;
    }
    return run_check();
  } catch (const cavsim::InvalidRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cavsim::NonPositiveCoupling& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cavsim::SimError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
