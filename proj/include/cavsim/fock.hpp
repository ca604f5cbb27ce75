#pragma once

// Tensor products of truncated bosonic modes and two-level atoms, plus the
// state-vector operations everything else is built from.
//
// Basis convention: mixed-radix with the FIRST-listed subsystem most
// significant, so for [A, B, C, D, atom1, atom2] the flat index of a product
// ket reads left to right like a number written in digits.  Atom levels are
// 0 = |g>, 1 = |e>.  Mode digits are photon occupations 0..levels-1.

#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cavsim/errors.hpp"

namespace cavsim {

using cplx = std::complex<double>;

enum class SubsystemKind { Mode, Atom };

struct Subsystem {
  SubsystemKind kind;
  int levels;
  std::string label;

  // Modes keep at least 3 levels so a doubly-occupied cavity is still
  // representable and truncation leakage can be detected one level early.
  static Subsystem mode(std::string label, int levels = 4) {
    return {SubsystemKind::Mode, levels, std::move(label)};
  }
  static Subsystem atom(std::string label) {
    return {SubsystemKind::Atom, 2, std::move(label)};
  }
};

bool operator==(const Subsystem& a, const Subsystem& b);

// Occupation digits, one per subsystem, in declaration order.
using BasisKet = std::vector<int>;

class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<Subsystem> subsystems);

  std::size_t dim() const { return dim_; }
  std::size_t subsystem_count() const { return subsystems_.size(); }
  const Subsystem& subsystem(std::size_t pos) const;
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  // Flat-index stride of one unit of the digit at `pos`.
  std::size_t stride(std::size_t pos) const;

  std::size_t index_of(const BasisKet& ket) const;
  BasisKet ket_at(std::size_t index) const;
  int digit(std::size_t index, std::size_t pos) const;

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) {
    return a.subsystems_ == b.subsystems_;
  }

 private:
  std::vector<Subsystem> subsystems_;
  std::vector<std::size_t> strides_;
  std::size_t dim_;
};

using SpacePtr = std::shared_ptr<const HilbertSpace>;

// Validates the subsystem list: nonempty, modes with >= 3 levels, atoms with
// exactly 2.  Throws InvalidSubsystem otherwise.
SpacePtr make_space(std::vector<Subsystem> subsystems);

struct StateVector {
  SpacePtr space;
  std::vector<cplx> amps;
};

// All-zero amplitude vector over `space`.
StateVector zero_state(SpacePtr space);

std::size_t basis_index(const HilbertSpace& space, const BasisKet& ket);
BasisKet basis_ket(const HilbertSpace& space, std::size_t index);

// Unit computational basis state |ket>.
StateVector ket_state(SpacePtr space, const BasisKet& ket);

// a + c*b, spaces must match.
StateVector add_scaled(const StateVector& a, cplx c, const StateVector& b);

// <a|b>, conjugate-linear in the first argument.
cplx inner(const StateVector& a, const StateVector& b);

double norm(const StateVector& a);

// a / norm(a); throws ZeroNorm when norm(a) <= 1e-15.
StateVector normalize(const StateVector& a);

// |<a|b>|^2 for states normalized within 1e-9 (else NotNormalized).
double fidelity(const StateVector& a, const StateVector& b);

// Multiplies by the phase that makes the first amplitude with
// |amp| > rel_eps * max|amp| real and positive.  Used when comparing states
// defined only up to a global phase.  Throws ZeroNorm on the zero vector.
StateVector fix_global_phase(const StateVector& a, double rel_eps = 1e-13);

namespace detail {

// Calls fn(offset, len) for every maximal contiguous run of flat indices on
// which the listed (position, digit) constraints hold.  Runs are emitted in
// increasing offset order and together enumerate exactly the constrained
// slice of the basis.
template <typename Fn>
void for_each_run(const HilbertSpace& space,
                  const std::vector<std::pair<std::size_t, int>>& fixed,
                  Fn&& fn) {
  if (fixed.empty()) {
    fn(std::size_t{0}, space.dim());
    return;
  }
  std::size_t last = 0;
  for (const auto& [pos, digit] : fixed) {
    (void)digit;
    if (pos > last) last = pos;
  }
  const std::size_t run_len = space.stride(last);
  auto digit_at = [&](std::size_t pos) -> int {
    for (const auto& [p, d] : fixed) {
      if (p == pos) return d;
    }
    return -1;
  };
  // Odometer over the digits at positions 0..last (more significant than the
  // run length); pinned positions hold their digit, free ones roll over.
  auto rec = [&](auto&& self, std::size_t pos, std::size_t offset) -> void {
    if (pos > last) {
      fn(offset, run_len);
      return;
    }
    const int pinned = digit_at(pos);
    if (pinned >= 0) {
      self(self, pos + 1, offset + static_cast<std::size_t>(pinned) * space.stride(pos));
    } else {
      const int levels = space.subsystem(pos).levels;
      for (int d = 0; d < levels; ++d) {
        self(self, pos + 1, offset + static_cast<std::size_t>(d) * space.stride(pos));
      }
    }
  };
  rec(rec, 0, 0);
}

}  // namespace detail

}  // namespace cavsim
