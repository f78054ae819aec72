// Scalar reference kernels. These define the expected results for the
// vectorized variants.

#include <cmath>

#include "greenbvp/simd.hpp"

namespace greenbvp::simd::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x,
            double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    y[r] = dot(a + r * cols, x, cols);
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

MinMax min_max(const double* v, std::size_t n) {
  MinMax out{v[0], v[0], 0, 0};
  for (std::size_t i = 1; i < n; ++i) {
    if (v[i] < out.min) {
      out.min = v[i];
      out.argmin = i;
    }
    if (v[i] > out.max) {
      out.max = v[i];
      out.argmax = i;
    }
  }
  return out;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace greenbvp::simd::scalar
