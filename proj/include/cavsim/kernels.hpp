#pragma once

// Low-level array kernels the simulator spends its time in.  Every operation
// has a scalar reference implementation and, on x86-64 machines with AVX2+FMA,
// a vectorized variant.  The backend is picked once at startup from cpuid (or
// forced via set_backend / the CAVSIM_KERNELS environment variable) and the
// two are equivalence-tested against each other.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace cavsim::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool backend_available(Backend b);
// Throws std::invalid_argument if the requested backend is not available on
// this machine.
void set_backend(Backend b);
std::string_view backend_name(Backend b);

// y[i] += c * x[i]
void axpy(cplx c, const cplx* x, cplx* y, std::size_t n);

// x[i] *= c
void scale(cplx c, cplx* x, std::size_t n);

// sum_i conj(a[i]) * b[i]
cplx dot_conj(const cplx* a, const cplx* b, std::size_t n);

// sum_i |a[i]|^2
double norm_sq(const cplx* a, std::size_t n);

// Vacuum-Rabi doublet rotation.  For each k, with i = idx_e[k] and
// j = i + delta:
//   a[i] <- c*a[i] - i*s*a[j]
//   a[j] <- c*a[j] - i*s*a[i]
// The index pairs must be pairwise disjoint.
void rotate_doublets(cplx* a, const std::uint64_t* idx_e, std::size_t m,
                     std::ptrdiff_t delta, double c, double s);

// C = A * B for dense row-major n x n complex matrices (C must not alias A/B).
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);

// y = A * x (y must not alias x).
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);

}  // namespace cavsim::kernels
