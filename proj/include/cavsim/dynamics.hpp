#pragma once

// Resonant atom-field interaction inside one cavity mode, in units where
// hbar = g = 1 and theta = g*t.  The coupling exchanges one quantum between
// the atom and the mode, so evolution closes on the doublets
// {|e,n>, |g,n+1>} and leaves |g,0> alone:
//
//   |e,n>   ->  cos(sqrt(n+1) theta) |e,n>   - i sin(sqrt(n+1) theta) |g,n+1>
//   |g,n+1> ->  cos(sqrt(n+1) theta) |g,n+1> - i sin(sqrt(n+1) theta) |e,n>
//
// jc_apply implements this directly.  jc_hamiltonian + propagator_expm build
// the same unitary the slow way (dense matrix exponential) and exist so the
// fast path has something independent to be checked against.

#include <cstddef>
#include <vector>

#include "cavsim/fock.hpp"

namespace cavsim {

struct JCPulse {
  std::size_t atom;   // subsystem position of the two-level atom
  std::size_t mode;   // subsystem position of the cavity mode
  double theta;       // accumulated Rabi angle g*t
};

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx(0.0, 0.0)) {}
  static DenseMatrix identity(std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = cplx(1.0, 0.0);
    return m;
  }

  std::size_t dim() const { return dim_; }
  cplx& at(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

 private:
  std::size_t dim_;
  std::vector<cplx> a_;
};

// Applies one pulse to the state.  Before touching anything it sums the
// population sitting on {atom excited, mode at its top level}; if that
// exceeds leak_tol the rotation would push amplitude past the truncation,
// and TruncationLeakage is thrown.  Throws IndexError for bad subsystem
// positions, InvalidSubsystem if they do not name an (atom, mode) pair.
StateVector jc_apply(const StateVector& state, const JCPulse& pulse,
                     double leak_tol = 1e-12);

// Dense coupling matrix on the full space: matrix elements of magnitude
// sqrt(n+1) connecting |e,n> with |g,n+1> (identity on all other
// subsystems), real symmetric.
DenseMatrix jc_hamiltonian(const HilbertSpace& space, std::size_t atom,
                           std::size_t mode);

// exp(-i*theta*h) by scaling-and-squaring on the Taylor series: h is checked
// Hermitian within 1e-12 (else NotHermitian), -i*theta*h is halved until its
// max-row-sum norm is <= 0.5, terms are summed until one falls below tol/10
// (NoConvergence if that never happens), then the result is squared back up.
DenseMatrix propagator_expm(const DenseMatrix& h, double theta,
                            double tol = 1e-12);

// y = m * state, same space.
StateVector apply_matrix(const DenseMatrix& m, const StateVector& state);

}  // namespace cavsim
