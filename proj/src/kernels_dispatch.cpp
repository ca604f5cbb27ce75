#include "kernels_impl.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cavsim::kernels {
namespace {

bool avx2_table_present() {
#if CAVSIM_HAVE_AVX2_TU
  return true;
#else
  return false;
#endif
}

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default() {
  if (const char* env = std::getenv("CAVSIM_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && backend_available(Backend::Avx2)) return Backend::Avx2;
    // Unknown or unavailable request: fall through to autodetection.
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

const KernelTable* table_for(Backend b) {
#if CAVSIM_HAVE_AVX2_TU
  if (b == Backend::Avx2) return &avx2::table;
#endif
  (void)b;
  return &scalar::table;
}

struct Dispatch {
  Backend backend;
  const KernelTable* table;
  Dispatch() : backend(pick_default()), table(table_for(backend)) {}
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

bool backend_available(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
      return avx2_table_present() && cpu_has_avx2_fma();
  }
  return false;
}

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw std::invalid_argument("kernel backend not available on this machine");
  }
  dispatch().backend = b;
  dispatch().table = table_for(b);
}

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
  }
  return "unknown";
}

void axpy(cplx c, const cplx* x, cplx* y, std::size_t n) {
  dispatch().table->axpy(c, x, y, n);
}

void scale(cplx c, cplx* x, std::size_t n) { dispatch().table->scale(c, x, n); }

cplx dot_conj(const cplx* a, const cplx* b, std::size_t n) {
  return dispatch().table->dot_conj(a, b, n);
}

double norm_sq(const cplx* a, std::size_t n) {
  return dispatch().table->norm_sq(a, n);
}

void rotate_doublets(cplx* a, const std::uint64_t* idx_e, std::size_t m,
                     std::ptrdiff_t delta, double c, double s) {
  dispatch().table->rotate_doublets(a, idx_e, m, delta, c, s);
}

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  dispatch().table->matmul(a, b, c, n);
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  dispatch().table->matvec(a, x, y, n);
}

}  // namespace cavsim::kernels
