// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cstddef>

#include "qillum/simd/kernels.hpp"

namespace qillum::simd::avx2 {

namespace {

// Two complex doubles per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }

inline __m256d complex_mul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void hadamard_madd(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = out.size();
  double* o = reinterpret_cast<double*>(out.data());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = complex_mul(load2(a.data() + i), load2(b.data() + i));
    _mm256_storeu_pd(o + 2 * i, _mm256_add_pd(_mm256_loadu_pd(o + 2 * i), prod));
  }
  for (; i < n; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    out[i] += cplx(re, im);
  }
}

cplx dot_conj(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = a.size();
  // acc_same lanes: [ar*br, ai*bi, ...]; acc_cross lanes: [ar*bi, ai*br, ...]
  __m256d acc_same0 = _mm256_setzero_pd();
  __m256d acc_same1 = _mm256_setzero_pd();
  __m256d acc_cross0 = _mm256_setzero_pd();
  __m256d acc_cross1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = load2(a.data() + i);
    const __m256d y0 = load2(b.data() + i);
    const __m256d x1 = load2(a.data() + i + 2);
    const __m256d y1 = load2(b.data() + i + 2);
    acc_same0 = _mm256_fmadd_pd(x0, y0, acc_same0);
    acc_same1 = _mm256_fmadd_pd(x1, y1, acc_same1);
    acc_cross0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), acc_cross0);
    acc_cross1 = _mm256_fmadd_pd(x1, _mm256_permute_pd(y1, 0x5), acc_cross1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d x0 = load2(a.data() + i);
    const __m256d y0 = load2(b.data() + i);
    acc_same0 = _mm256_fmadd_pd(x0, y0, acc_same0);
    acc_cross0 = _mm256_fmadd_pd(x0, _mm256_permute_pd(y0, 0x5), acc_cross0);
  }
  const __m256d same = _mm256_add_pd(acc_same0, acc_same1);
  const __m256d cross = _mm256_add_pd(acc_cross0, acc_cross1);
  double re = hsum(same);
  // imag = sum(ar*bi) - sum(ai*br): flip the sign of the odd lanes.
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  double im = hsum(_mm256_mul_pd(cross, sign));
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace qillum::simd::avx2
