#include "kernels_impl.hpp"

// AVX2+FMA variants.  Complex arrays are interleaved [re0 im0 re1 im1 ...],
// so one __m256d holds two complex values.  The recurring trick: for
// w = c*z with c = cr + i*ci,
//   w = cr*[re im] + [-ci ci]*[im re]
// which is two FMAs after a within-pair swap (permute 0b0101).

#include <immintrin.h>

namespace cavsim::kernels::avx2 {
namespace {

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_add_sd(s, _mm_unpackhi_pd(s, s));
  return _mm_cvtsd_f64(s);
}

void axpy_(cplx c, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d vcr = _mm256_set1_pd(c.real());
  const __m256d vci = _mm256_setr_pd(-c.imag(), c.imag(), -c.imag(), c.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vy = _mm256_loadu_pd(yd + 2 * i);
    vy = _mm256_fmadd_pd(vcr, vx, vy);
    vy = _mm256_fmadd_pd(vci, swap_pairs(vx), vy);
    _mm256_storeu_pd(yd + 2 * i, vy);
  }
  for (; i < n; ++i) y[i] += c * x[i];
}

void scale_(cplx c, cplx* x, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  const __m256d vcr = _mm256_set1_pd(c.real());
  const __m256d vci = _mm256_setr_pd(-c.imag(), c.imag(), -c.imag(), c.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xd + 2 * i);
    __m256d vt = _mm256_mul_pd(vcr, vx);
    vt = _mm256_fmadd_pd(vci, swap_pairs(vx), vt);
    _mm256_storeu_pd(xd + 2 * i, vt);
  }
  for (; i < n; ++i) x[i] *= c;
}

cplx dot_conj_(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  const __m256d vsign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(ad + 2 * i);
    __m256d vb = _mm256_loadu_pd(bd + 2 * i);
    // pairwise sums give ar*br + ai*bi (real part of conj(a)*b)
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    // and ar*bi - ai*br (imag part), via the sign-flipped within-pair swap
    acc_im = _mm256_fmadd_pd(_mm256_mul_pd(va, vsign), swap_pairs(vb), acc_im);
  }
  double re = hsum(acc_re), im = hsum(acc_im);
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return cplx(re, im);
}

double norm_sq_(const cplx* a, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(ad + 2 * i);
    __m256d v1 = _mm256_loadu_pd(ad + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return acc;
}

void rotate_scalar_tail(cplx* a, const std::uint64_t* idx_e, std::size_t m,
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

void rotate_doublets_(cplx* a, const std::uint64_t* idx_e, std::size_t m,
                      std::ptrdiff_t delta, double c, double s) {
  double* ad = reinterpret_cast<double*>(a);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256i vone = _mm256_set1_epi64x(1);
  const __m256i vdelta2 = _mm256_set1_epi64x(2 * static_cast<long long>(delta));
  std::size_t k = 0;
  alignas(32) double out[16];
  for (; k + 4 <= m; k += 4) {
    __m256i vidx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx_e + k));
    __m256i i_re = _mm256_slli_epi64(vidx, 1);
    __m256i i_im = _mm256_add_epi64(i_re, vone);
    __m256i j_re = _mm256_add_epi64(i_re, vdelta2);
    __m256i j_im = _mm256_add_epi64(j_re, vone);
    __m256d re_i = _mm256_i64gather_pd(ad, i_re, 8);
    __m256d im_i = _mm256_i64gather_pd(ad, i_im, 8);
    __m256d re_j = _mm256_i64gather_pd(ad, j_re, 8);
    __m256d im_j = _mm256_i64gather_pd(ad, j_im, 8);
    __m256d nre_i = _mm256_fmadd_pd(vc, re_i, _mm256_mul_pd(vs, im_j));
    __m256d nim_i = _mm256_fnmadd_pd(vs, re_j, _mm256_mul_pd(vc, im_i));
    __m256d nre_j = _mm256_fmadd_pd(vc, re_j, _mm256_mul_pd(vs, im_i));
    __m256d nim_j = _mm256_fnmadd_pd(vs, re_i, _mm256_mul_pd(vc, im_j));
    _mm256_store_pd(out + 0, nre_i);
    _mm256_store_pd(out + 4, nim_i);
    _mm256_store_pd(out + 8, nre_j);
    _mm256_store_pd(out + 12, nim_j);
    // AVX2 has gathers but no scatters; write the four pairs back by hand.
    for (int t = 0; t < 4; ++t) {
      const std::size_t i = static_cast<std::size_t>(idx_e[k + t]);
      const std::size_t j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + delta);
      a[i] = cplx(out[t], out[4 + t]);
      a[j] = cplx(out[8 + t], out[12 + t]);
    }
  }
  rotate_scalar_tail(a, idx_e + k, m - k, delta, c, s);
}

void matvec_(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const __m256d vsign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = reinterpret_cast<const double*>(a + i * n);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      __m256d vr = _mm256_loadu_pd(row + 2 * j);
      __m256d vx = _mm256_loadu_pd(xd + 2 * j);
      acc_re = _mm256_fmadd_pd(_mm256_mul_pd(vr, vsign), vx, acc_re);
      acc_im = _mm256_fmadd_pd(vr, swap_pairs(vx), acc_im);
    }
    double re = hsum(acc_re), im = hsum(acc_im);
    for (; j < n; ++j) {
      const cplx aij = a[i * n + j];
      re += aij.real() * x[j].real() - aij.imag() * x[j].imag();
      im += aij.real() * x[j].imag() + aij.imag() * x[j].real();
    }
    y[i] = cplx(re, im);
  }
}

void matmul_(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < 2 * n * n; ++i) cd[i] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a[i * n + k];
      if (aik.real() == 0.0 && aik.imag() == 0.0) continue;
      const double* brow = reinterpret_cast<const double*>(b + k * n);
      const __m256d var = _mm256_set1_pd(aik.real());
      const __m256d vai =
          _mm256_setr_pd(-aik.imag(), aik.imag(), -aik.imag(), aik.imag());
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        __m256d vb = _mm256_loadu_pd(brow + 2 * j);
        __m256d vc = _mm256_loadu_pd(crow + 2 * j);
        vc = _mm256_fmadd_pd(var, vb, vc);
        vc = _mm256_fmadd_pd(vai, swap_pairs(vb), vc);
        _mm256_storeu_pd(crow + 2 * j, vc);
      }
      for (; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
    }
  }
}

}  // namespace

const KernelTable table = {axpy_,          scale_,  dot_conj_, norm_sq_,
                           rotate_doublets_, matmul_, matvec_};

}  // namespace cavsim::kernels::avx2
