#include "cavsim/protocol.hpp"

#include <cmath>
#include <initializer_list>

#include "cavsim/dynamics.hpp"

namespace cavsim {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_channel(const ChannelParams& p) {
  const double n2 = p.alpha.real() * p.alpha.real() + p.alpha.imag() * p.alpha.imag() +
                    p.beta.real() * p.beta.real() + p.beta.imag() * p.beta.imag();
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) {
    throw NotNormalized("channel amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
  }
}

// Relabels the atom's |g> component to |e>.  Only used on states where the
// atom is a |g> spectator, so this is the unitary "insert the atom excited".
StateVector inject_excited(const StateVector& state, std::size_t atom) {
  StateVector out = zero_state(state.space);
  const std::size_t stride = state.space->stride(atom);
  detail::for_each_run(*state.space, {{atom, 0}},
                       [&](std::size_t offset, std::size_t len) {
                         for (std::size_t k = 0; k < len; ++k) {
                           out.amps[offset + k + stride] = state.amps[offset + k];
                         }
                       });
  return out;
}

StateVector target_excited(const ChannelParams& params, const SpacePtr& space) {
  StateVector t = target_state(params, space);
  t = inject_excited(t, kAtom1);
  return inject_excited(t, kAtom2);
}

}  // namespace

SpacePtr protocol_space(int mode_levels) {
  return make_space({Subsystem::mode("A", mode_levels), Subsystem::mode("B", mode_levels),
                     Subsystem::mode("C", mode_levels), Subsystem::mode("D", mode_levels),
                     Subsystem::atom("atom1"), Subsystem::atom("atom2")});
}

StateVector channel_state(const ChannelParams& params, const SpacePtr& space) {
  check_channel(params);
  StateVector s = zero_state(space);
  s.amps[space->index_of({0, 0, 1, 0, 0, 0})] = params.alpha;
  s.amps[space->index_of({0, 0, 0, 1, 0, 0})] = params.beta;
  return s;
}

StateVector target_state(const ChannelParams& params, const SpacePtr& space) {
  check_channel(params);
  StateVector s = zero_state(space);
  s.amps[space->index_of({1, 0, 0, 0, 0, 0})] = params.alpha;
  s.amps[space->index_of({0, 1, 0, 0, 0, 0})] = params.beta;
  return s;
}

std::string_view step_label(ProtocolStep step) {
  switch (step) {
    case ProtocolStep::AfterPulseA: return "after_A";
    case ProtocolStep::JointWithChannel: return "joint_with_C2";
    case ProtocolStep::AfterPulseC: return "after_C";
    case ProtocolStep::CollapseAtom1: return "collapse_e1";
    case ProtocolStep::AfterPulseB: return "after_B";
    case ProtocolStep::AfterPulseD: return "after_D";
    case ProtocolStep::CollapseAtom2: return "collapse_e2";
  }
  return "?";
}

SampledProtocol::SampledProtocol(const ProtocolConfig& config) {
  check_channel(config.channel);
  const SpacePtr space = protocol_space(config.mode_levels);

  StateVector state = channel_state(config.channel, space);
  state = inject_excited(state, kAtom1);
  state = inject_excited(state, kAtom2);

  const StateVector after_a =
      jc_apply(state, {kAtom1, kModeA, config.theta1}, config.leak_tol);
  const StateVector after_c =
      jc_apply(after_a, {kAtom1, kModeC, config.theta2}, config.leak_tol);
  m1_ = outcome_probabilities(after_c, kAtom1);

  for (const Outcome o1 : {Outcome::G, Outcome::E}) {
    const double p1 = o1 == Outcome::E ? m1_.p_e : m1_.p_g;
    Branch& branch = o1 == Outcome::E ? after_e1_ : after_g1_;
    if (p1 < 1e-15) continue;  // unreachable; trial() re-raises if ever drawn

    const Projection proj1 = project(after_c, kAtom1, o1);
    const StateVector after_b =
        jc_apply(proj1.collapsed, {kAtom2, kModeB, config.theta1}, config.leak_tol);
    const StateVector after_d =
        jc_apply(after_b, {kAtom2, kModeD, config.theta2}, config.leak_tol);
    branch.m2 = outcome_probabilities(after_d, kAtom2);
    branch.reachable = true;

    if (o1 == Outcome::E) {
      success_prob_ = m1_.p_e * branch.m2.p_e;
      if (branch.m2.p_e >= 1e-15) {
        const Projection proj2 = project(after_d, kAtom2, Outcome::E);
        auto result = std::make_shared<ProtocolResult>();
        result->snapshots.emplace_back("after_A", after_a);
        result->snapshots.emplace_back("joint_with_C2", after_a);
        result->snapshots.emplace_back("after_C", after_c);
        result->snapshots.emplace_back("collapse_e1", proj1.collapsed);
        result->snapshots.emplace_back("after_B", after_b);
        result->snapshots.emplace_back("after_D", after_d);
        result->snapshots.emplace_back("collapse_e2", proj2.collapsed);
        result->p_e1 = m1_.p_e;
        result->p_e2_given_e1 = branch.m2.p_e;
        result->p_joint = result->p_e1 * result->p_e2_given_e1;
        result->fidelity =
            fidelity(target_excited(config.channel, space), proj2.collapsed);
        success_ = std::move(result);
      }
    }
  }
}

TrialOutcome SampledProtocol::trial(SplitRng& rng) const {
  TrialOutcome t;
  const double u1 = rng.next_double();
  t.first = u1 < m1_.p_e ? Outcome::E : Outcome::G;
  const double p1 = t.first == Outcome::E ? m1_.p_e : m1_.p_g;
  const Branch& branch = t.first == Outcome::E ? after_e1_ : after_g1_;
  if (!branch.reachable) {
    throw ZeroProbabilityBranch("drew a first outcome with (numerically) zero weight");
  }
  const double u2 = rng.next_double();
  t.second = u2 < branch.m2.p_e ? Outcome::E : Outcome::G;
  const double p2 = t.second == Outcome::E ? branch.m2.p_e : branch.m2.p_g;
  t.path_probability = p1 * p2;
  t.success = t.first == Outcome::E && t.second == Outcome::E;
  if (t.success) {
    if (!success_) {
      throw ZeroProbabilityBranch("drew a second outcome with (numerically) zero weight");
    }
    t.result = success_;
  }
  return t;
}

ProtocolResult run_postselected(const ProtocolConfig& config) {
  SampledProtocol sp(config);
  if (!sp.postselected()) {
    throw ZeroProbabilityBranch("post-selected path has (numerically) zero weight");
  }
  return *sp.postselected();
}

TrialOutcome run_sampled(const ProtocolConfig& config, SplitRng& rng) {
  return SampledProtocol(config).trial(rng);
}

const StateVector& snapshot(const ProtocolResult& result, std::string_view label) {
  for (const auto& [name, state] : result.snapshots) {
    if (name == label) return state;
  }
  throw IndexError("no snapshot named '" + std::string(label) + "'");
}

// Everything below is the independent analytic path: the same seven states,
// written down as explicit amplitude tables obtained by following each
// doublet rotation through by hand.  Notation inside the tables:
//   ct, st = cos/sin(theta1)        -- the theta1 beam-splitter pulses on A, B
//   c,  s  = cos/sin(theta2)        -- singly-occupied doublet at the theta2 pulses
//   c2, s2 = cos/sin(sqrt(2) theta2)-- doubly-occupied doublet at the theta2 pulses
// Kets are {n_A, n_B, n_C, n_D, atom1, atom2}.
StateVector closed_form_state(ProtocolStep step, const ProtocolConfig& config) {
  check_channel(config.channel);
  const SpacePtr space = protocol_space(config.mode_levels);

  const cplx a = config.channel.alpha;
  const cplx b = config.channel.beta;
  const double ct = std::cos(config.theta1);
  const double st = std::sin(config.theta1);
  const double c = std::cos(config.theta2);
  const double s = std::sin(config.theta2);
  const double c2 = std::cos(kSqrt2 * config.theta2);
  const double s2 = std::sin(kSqrt2 * config.theta2);
  const cplx mi(0.0, -1.0);

  StateVector out = zero_state(space);
  auto put = [&](cplx coeff, std::initializer_list<int> ket) {
    out.amps[space->index_of(BasisKet(ket))] = coeff;
  };

  switch (step) {
    case ProtocolStep::AfterPulseA:
    case ProtocolStep::JointWithChannel:
      // First atom split across cavity 1's idle mode; the shared photon and
      // the second atom ride along untouched.
      put(a * ct, {0, 0, 1, 0, 1, 1});
      put(b * ct, {0, 0, 0, 1, 1, 1});
      put(mi * a * st, {1, 0, 1, 0, 0, 1});
      put(mi * b * st, {1, 0, 0, 1, 0, 1});
      break;

    case ProtocolStep::AfterPulseC:
      put(a * ct * c2, {0, 0, 1, 0, 1, 1});
      put(mi * a * ct * s2, {0, 0, 2, 0, 0, 1});
      put(mi * a * st * c, {1, 0, 1, 0, 0, 1});
      put(-a * st * s, {1, 0, 0, 0, 1, 1});
      put(b * ct * c, {0, 0, 0, 1, 1, 1});
      put(mi * b * ct * s, {0, 0, 1, 1, 0, 1});
      put(mi * b * st, {1, 0, 0, 1, 0, 1});
      break;

    case ProtocolStep::CollapseAtom1:
      put(a * ct * c2, {0, 0, 1, 0, 1, 1});
      put(-a * st * s, {1, 0, 0, 0, 1, 1});
      put(b * ct * c, {0, 0, 0, 1, 1, 1});
      break;

    case ProtocolStep::AfterPulseB:
      put(2.0 * a * ct * ct * c2, {0, 0, 1, 0, 1, 1});
      put(mi * 2.0 * a * ct * st * c2, {0, 1, 1, 0, 1, 0});
      put(-2.0 * a * ct * st * s, {1, 0, 0, 0, 1, 1});
      put(cplx(0.0, 2.0) * a * st * st * s, {1, 1, 0, 0, 1, 0});
      put(2.0 * b * ct * ct * c, {0, 0, 0, 1, 1, 1});
      put(mi * 2.0 * b * ct * st * c, {0, 1, 0, 1, 1, 0});
      break;

    case ProtocolStep::AfterPulseD:
      put(2.0 * a * ct * ct * c2 * c, {0, 0, 1, 0, 1, 1});
      put(mi * 2.0 * a * ct * ct * c2 * s, {0, 0, 1, 1, 1, 0});
      put(mi * 2.0 * a * ct * st * c2, {0, 1, 1, 0, 1, 0});
      put(-2.0 * a * ct * st * s * c, {1, 0, 0, 0, 1, 1});
      put(cplx(0.0, 2.0) * a * ct * st * s * s, {1, 0, 0, 1, 1, 0});
      put(cplx(0.0, 2.0) * a * st * st * s, {1, 1, 0, 0, 1, 0});
      put(2.0 * b * ct * ct * c * c2, {0, 0, 0, 1, 1, 1});
      put(mi * 2.0 * b * ct * ct * c * s2, {0, 0, 0, 2, 1, 0});
      put(mi * 2.0 * b * ct * st * c * c, {0, 1, 0, 1, 1, 0});
      put(-2.0 * b * ct * st * c * s, {0, 1, 0, 0, 1, 1});
      break;

    case ProtocolStep::CollapseAtom2:
      put(a * ct * ct * c2 * c, {0, 0, 1, 0, 1, 1});
      put(-a * ct * st * s * c, {1, 0, 0, 0, 1, 1});
      put(b * ct * ct * c * c2, {0, 0, 0, 1, 1, 1});
      put(-b * ct * st * c * s, {0, 1, 0, 0, 1, 1});
      break;
  }

  if (step == ProtocolStep::CollapseAtom1 || step == ProtocolStep::CollapseAtom2) {
    out = normalize(out);
  }
  return out;
}

ChannelParams random_channel(SplitRng& rng) {
  while (true) {
    const cplx alpha(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    const cplx beta(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (n < 0.1) continue;  // keep away from the degenerate origin
    return {alpha / n, beta / n};
  }
}

}  // namespace cavsim
