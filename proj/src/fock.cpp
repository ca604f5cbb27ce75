#include "cavsim/fock.hpp"

#include <cmath>
#include <string>

#include "cavsim/kernels.hpp"

namespace cavsim {

bool operator==(const Subsystem& a, const Subsystem& b) {
  return a.kind == b.kind && a.levels == b.levels && a.label == b.label;
}

namespace {

void validate_subsystems(const std::vector<Subsystem>& subsystems) {
  if (subsystems.empty()) {
    throw InvalidSubsystem("space needs at least one subsystem");
  }
  for (const auto& s : subsystems) {
    if (s.kind == SubsystemKind::Mode && s.levels < 3) {
      throw InvalidSubsystem("mode '" + s.label + "' needs >= 3 levels, got " +
                             std::to_string(s.levels));
    }
    if (s.kind == SubsystemKind::Atom && s.levels != 2) {
      throw InvalidSubsystem("atom '" + s.label + "' must have exactly 2 levels");
    }
  }
}

void check_same_space(const StateVector& a, const StateVector& b) {
  if (a.space == b.space) return;
  if (a.space && b.space && *a.space == *b.space) return;
  throw SpaceMismatch("states live on different spaces");
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<Subsystem> subsystems)
    : subsystems_(std::move(subsystems)) {
  validate_subsystems(subsystems_);
  // Row-major strides: last subsystem varies fastest.
  strides_.assign(subsystems_.size(), 1);
  for (std::size_t p = subsystems_.size(); p-- > 1;) {
    strides_[p - 1] = strides_[p] * static_cast<std::size_t>(subsystems_[p].levels);
  }
  dim_ = strides_[0] * static_cast<std::size_t>(subsystems_[0].levels);
}

const Subsystem& HilbertSpace::subsystem(std::size_t pos) const {
  if (pos >= subsystems_.size()) throw IndexError("subsystem position out of range");
  return subsystems_[pos];
}

std::size_t HilbertSpace::stride(std::size_t pos) const {
  if (pos >= strides_.size()) throw IndexError("subsystem position out of range");
  return strides_[pos];
}

std::size_t HilbertSpace::index_of(const BasisKet& ket) const {
  if (ket.size() != subsystems_.size()) {
    throw OutOfRange("ket has " + std::to_string(ket.size()) + " digits, space has " +
                     std::to_string(subsystems_.size()) + " subsystems");
  }
  std::size_t idx = 0;
  for (std::size_t p = 0; p < ket.size(); ++p) {
    if (ket[p] < 0 || ket[p] >= subsystems_[p].levels) {
      throw OutOfRange("digit " + std::to_string(ket[p]) + " out of range for '" +
                       subsystems_[p].label + "'");
    }
    idx += static_cast<std::size_t>(ket[p]) * strides_[p];
  }
  return idx;
}

BasisKet HilbertSpace::ket_at(std::size_t index) const {
  if (index >= dim_) throw OutOfRange("basis index out of range");
  BasisKet ket(subsystems_.size());
  for (std::size_t p = 0; p < subsystems_.size(); ++p) {
    ket[p] = static_cast<int>((index / strides_[p]) %
                              static_cast<std::size_t>(subsystems_[p].levels));
  }
  return ket;
}

int HilbertSpace::digit(std::size_t index, std::size_t pos) const {
  return static_cast<int>((index / stride(pos)) %
                          static_cast<std::size_t>(subsystem(pos).levels));
}

SpacePtr make_space(std::vector<Subsystem> subsystems) {
  return std::make_shared<const HilbertSpace>(std::move(subsystems));
}

StateVector zero_state(SpacePtr space) {
  StateVector s;
  s.amps.assign(space->dim(), cplx(0.0, 0.0));
  s.space = std::move(space);
  return s;
}

std::size_t basis_index(const HilbertSpace& space, const BasisKet& ket) {
  return space.index_of(ket);
}

BasisKet basis_ket(const HilbertSpace& space, std::size_t index) {
  return space.ket_at(index);
}

StateVector ket_state(SpacePtr space, const BasisKet& ket) {
  StateVector s = zero_state(std::move(space));
  s.amps[s.space->index_of(ket)] = cplx(1.0, 0.0);
  return s;
}

StateVector add_scaled(const StateVector& a, cplx c, const StateVector& b) {
  check_same_space(a, b);
  StateVector out = a;
  kernels::axpy(c, b.amps.data(), out.amps.data(), out.amps.size());
  return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
  check_same_space(a, b);
  return kernels::dot_conj(a.amps.data(), b.amps.data(), a.amps.size());
}

double norm(const StateVector& a) {
  return std::sqrt(kernels::norm_sq(a.amps.data(), a.amps.size()));
}

StateVector normalize(const StateVector& a) {
  const double n = norm(a);
  if (n <= 1e-15) throw ZeroNorm("cannot normalize a (numerically) zero vector");
  StateVector out = a;
  kernels::scale(cplx(1.0 / n, 0.0), out.amps.data(), out.amps.size());
  return out;
}

double fidelity(const StateVector& a, const StateVector& b) {
  check_same_space(a, b);
  if (std::abs(norm(a) - 1.0) > 1e-9 || std::abs(norm(b) - 1.0) > 1e-9) {
    throw NotNormalized("fidelity expects unit-norm states");
  }
  const cplx ov = inner(a, b);
  return ov.real() * ov.real() + ov.imag() * ov.imag();
}

StateVector fix_global_phase(const StateVector& a, double rel_eps) {
  double max_abs = 0.0;
  for (const cplx& v : a.amps) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) throw ZeroNorm("zero vector has no phase convention");
  const double cut = rel_eps * max_abs;
  for (const cplx& v : a.amps) {
    const double mag = std::abs(v);
    if (mag > cut) {
      StateVector out = a;
      kernels::scale(std::conj(v) / mag, out.amps.data(), out.amps.size());
      return out;
    }
  }
  throw ZeroNorm("zero vector has no phase convention");
}

}  // namespace cavsim
