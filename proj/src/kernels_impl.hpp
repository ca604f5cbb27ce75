#pragma once

// Internal: per-backend entry points wired up by kernels_dispatch.cpp.

#include "cavsim/kernels.hpp"

namespace cavsim::kernels {

struct KernelTable {
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
  void (*scale)(cplx, cplx*, std::size_t);
  cplx (*dot_conj)(const cplx*, const cplx*, std::size_t);
  double (*norm_sq)(const cplx*, std::size_t);
  void (*rotate_doublets)(cplx*, const std::uint64_t*, std::size_t,
                          std::ptrdiff_t, double, double);
  void (*matmul)(const cplx*, const cplx*, cplx*, std::size_t);
  void (*matvec)(const cplx*, const cplx*, cplx*, std::size_t);
};

namespace scalar {
extern const KernelTable table;
}

#if CAVSIM_HAVE_AVX2_TU
namespace avx2 {
extern const KernelTable table;
}
#endif

}  // namespace cavsim::kernels
