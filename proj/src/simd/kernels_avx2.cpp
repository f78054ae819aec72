// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only called after the
// dispatcher has confirmed CPU support.

#include <immintrin.h>

#include <cmath>

#include "greenbvp/simd.hpp"

namespace greenbvp::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x,
            double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = dot(a + r * cols, x, cols);
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

MinMax min_max(const double* v, std::size_t n) {
  // Vector pass finds the extreme values; a scalar pass recovers the first
  // index attaining each so ties resolve exactly like the reference.
  double vmin = v[0];
  double vmax = v[0];
  std::size_t i = 0;
  if (n >= 4) {
    __m256d lo = _mm256_loadu_pd(v);
    __m256d hi = lo;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(v + i);
      lo = _mm256_min_pd(lo, x);
      hi = _mm256_max_pd(hi, x);
    }
    alignas(32) double l[4];
    alignas(32) double h[4];
    _mm256_store_pd(l, lo);
    _mm256_store_pd(h, hi);
    for (int k = 0; k < 4; ++k) {
      vmin = std::fmin(vmin, l[k]);
      vmax = std::fmax(vmax, h[k]);
    }
  }
  for (; i < n; ++i) {
    vmin = std::fmin(vmin, v[i]);
    vmax = std::fmax(vmax, v[i]);
  }
  MinMax out{vmin, vmax, 0, 0};
  bool found_min = false;
  bool found_max = false;
  for (std::size_t k = 0; k < n && !(found_min && found_max); ++k) {
    if (!found_min && v[k] == vmin) {
      out.argmin = k;
      found_min = true;
    }
    if (!found_max && v[k] == vmax) {
      out.argmax = k;
      found_max = true;
    }
  }
  return out;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign, d));
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double m = std::fmax(std::fmax(buf[0], buf[1]), std::fmax(buf[2], buf[3]));
  for (; i < n; ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace greenbvp::simd::avx2
