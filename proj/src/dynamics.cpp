#include "cavsim/dynamics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "cavsim/kernels.hpp"

namespace cavsim {

namespace {

void check_pulse_targets(const HilbertSpace& space, std::size_t atom,
                         std::size_t mode) {
  if (atom >= space.subsystem_count() || mode >= space.subsystem_count()) {
    throw IndexError("pulse subsystem position out of range");
  }
  if (atom == mode) throw IndexError("pulse atom and mode must differ");
  if (space.subsystem(atom).kind != SubsystemKind::Atom) {
    throw InvalidSubsystem("pulse 'atom' position is not an atom");
  }
  if (space.subsystem(mode).kind != SubsystemKind::Mode) {
    throw InvalidSubsystem("pulse 'mode' position is not a mode");
  }
}

}  // namespace

StateVector jc_apply(const StateVector& state, const JCPulse& pulse,
                     double leak_tol) {
  const HilbertSpace& space = *state.space;
  check_pulse_targets(space, pulse.atom, pulse.mode);

  const int levels = space.subsystem(pulse.mode).levels;
  const std::size_t atom_stride = space.stride(pulse.atom);
  const std::size_t mode_stride = space.stride(pulse.mode);

  // Leakage guard: the doublet {|e,top>, |g,top+1>} does not exist in the
  // truncated space, so any population on |e,top> would evolve incorrectly.
  double leak = 0.0;
  detail::for_each_run(
      space, {{pulse.atom, 1}, {pulse.mode, levels - 1}},
      [&](std::size_t offset, std::size_t len) {
        leak += kernels::norm_sq(state.amps.data() + offset, len);
      });
  if (leak > leak_tol) {
    throw TruncationLeakage("population " + std::to_string(leak) +
                            " on the top mode level with the atom excited");
  }

  StateVector out = state;

  // One doublet per occupation n: indices with atom = e, mode = n pair with
  // index + delta where delta moves the atom e->g and the mode n->n+1.
  const std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(mode_stride) -
                               static_cast<std::ptrdiff_t>(atom_stride);
  std::vector<std::uint64_t> idx;
  for (int n = 0; n + 1 < levels; ++n) {
    idx.clear();
    detail::for_each_run(space, {{pulse.atom, 1}, {pulse.mode, n}},
                         [&](std::size_t offset, std::size_t len) {
                           for (std::size_t k = 0; k < len; ++k) {
                             idx.push_back(offset + k);
                           }
                         });
    const double angle = std::sqrt(static_cast<double>(n + 1)) * pulse.theta;
    kernels::rotate_doublets(out.amps.data(), idx.data(), idx.size(), delta,
                             std::cos(angle), std::sin(angle));
  }
  return out;
}

DenseMatrix jc_hamiltonian(const HilbertSpace& space, std::size_t atom,
                           std::size_t mode) {
  check_pulse_targets(space, atom, mode);
  const int levels = space.subsystem(mode).levels;
  const std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(space.stride(mode)) -
                               static_cast<std::ptrdiff_t>(space.stride(atom));
  DenseMatrix h(space.dim());
  for (int n = 0; n + 1 < levels; ++n) {
    const double coupling = std::sqrt(static_cast<double>(n + 1));
    detail::for_each_run(space, {{atom, 1}, {mode, n}},
                         [&](std::size_t offset, std::size_t len) {
                           for (std::size_t k = 0; k < len; ++k) {
                             const std::size_t i = offset + k;  // |e, n>
                             const std::size_t j = static_cast<std::size_t>(
                                 static_cast<std::ptrdiff_t>(i) + delta);  // |g, n+1>
                             h.at(i, j) = coupling;
                             h.at(j, i) = coupling;
                           }
                         });
  }
  return h;
}

DenseMatrix propagator_expm(const DenseMatrix& h, double theta, double tol) {
  const std::size_t n = h.dim();

  double herm_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      herm_err = std::max(herm_err, std::abs(h.at(i, j) - std::conj(h.at(j, i))));
    }
  }
  if (herm_err > 1e-12) {
    throw NotHermitian("matrix is not Hermitian (deviation " +
                       std::to_string(herm_err) + ")");
  }

  // A = -i*theta*h, then scale A by 2^-s until ||A||_inf <= 1/2.
  DenseMatrix a(n);
  for (std::size_t i = 0; i < n * n; ++i) {
    a.data()[i] = cplx(0.0, -theta) * h.data()[i];
  }
  double norm_inf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a.at(i, j));
    norm_inf = std::max(norm_inf, row);
  }
  int squarings = 0;
  double scaled = norm_inf;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const double factor = std::ldexp(1.0, -squarings);
  for (std::size_t i = 0; i < n * n; ++i) a.data()[i] *= factor;

  // Taylor series: U = I + A + A^2/2! + ...  With ||A|| <= 1/2 the terms
  // shrink superexponentially; 200 is far beyond anything reachable.
  DenseMatrix u = DenseMatrix::identity(n);
  DenseMatrix term = DenseMatrix::identity(n);
  DenseMatrix next(n);
  bool converged = false;
  for (int k = 1; k <= 200; ++k) {
    kernels::matmul(term.data(), a.data(), next.data(), n);
    const double inv_k = 1.0 / static_cast<double>(k);
    double term_norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        next.at(i, j) *= inv_k;
        row += std::abs(next.at(i, j));
      }
      term_norm = std::max(term_norm, row);
    }
    std::swap(term, next);
    for (std::size_t i = 0; i < n * n; ++i) u.data()[i] += term.data()[i];
    if (term_norm < tol / 10.0) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("matrix exponential series did not settle");

  for (int s = 0; s < squarings; ++s) {
    kernels::matmul(u.data(), u.data(), next.data(), n);
    std::swap(u, next);
  }
  return u;
}

StateVector apply_matrix(const DenseMatrix& m, const StateVector& state) {
  if (m.dim() != state.amps.size()) {
    throw SpaceMismatch("matrix dimension does not match the state");
  }
  StateVector out = zero_state(state.space);
  kernels::matvec(m.data(), state.amps.data(), out.amps.data(), m.dim());
  return out;
}

}  // namespace cavsim
