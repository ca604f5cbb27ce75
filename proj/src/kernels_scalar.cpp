#include "kernels_impl.hpp"

// Reference implementations.  These are the semantics the vectorized backend
// is tested against, so keep them as plain as possible.

namespace cavsim::kernels::scalar {
namespace {

void axpy_(cplx c, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += c * x[i];
}

void scale_(cplx c, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= c;
}

cplx dot_conj_(const cplx* a, const cplx* b, std::size_t n) {
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    acc += cplx(a[i].real() * b[i].real() + a[i].imag() * b[i].imag(),
                a[i].real() * b[i].imag() - a[i].imag() * b[i].real());
  }
  return acc;
}

double norm_sq_(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

// a[i] <- c*a[i] - i*s*a[j] expands over real/imag parts to
//   re_i' = c*re_i + s*im_j,  im_i' = c*im_i - s*re_j
// and symmetrically for j.
void rotate_doublets_(cplx* a, const std::uint64_t* idx_e, std::size_t m,
                      std::ptrdiff_t delta, double c, double s) {
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = static_cast<std::size_t>(idx_e[k]);
    const std::size_t j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + delta);
    const double re_i = a[i].real(), im_i = a[i].imag();
    const double re_j = a[j].real(), im_j = a[j].imag();
    a[i] = cplx(c * re_i + s * im_j, c * im_i - s * re_j);
    a[j] = cplx(c * re_j + s * im_i, c * im_j - s * re_i);
  }
}

void matvec_(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    const cplx* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      re += row[j].real() * x[j].real() - row[j].imag() * x[j].imag();
      im += row[j].real() * x[j].imag() + row[j].imag() * x[j].real();
    }
    y[i] = cplx(re, im);
  }
}

// ikj order: C[i,:] accumulates A[i,k] * B[k,:], which keeps the inner loop
// contiguous in both B and C.
void matmul_(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n * n; ++i) c[i] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
      const cplx* brow = b + k * n;
      cplx* crow = c + i * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

}  // namespace

const KernelTable table = {axpy_,          scale_,  dot_conj_, norm_sq_,
                           rotate_doublets_, matmul_, matvec_};

}  // namespace cavsim::kernels::scalar
