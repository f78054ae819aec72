#pragma once

// Data-parallel inner loops used by quadrature, the discretized integral
// operator and mesh scans. Every routine has a scalar reference
// implementation; an AVX2/FMA variant is selected at runtime when the CPU
// supports it. Set GREENBVP_SIMD=scalar to force the reference path.

#include <cstddef>
#include <span>

namespace greenbvp::simd {

enum class Backend { scalar, avx2 };

const char* to_string(Backend b) noexcept;

// Backend currently used by the dispatching entry points.
Backend active_backend() noexcept;
bool backend_available(Backend b) noexcept;
// Returns false (and changes nothing) if `b` is unavailable on this CPU.
bool set_backend(Backend b) noexcept;

struct MinMax {
  double min;
  double max;
  std::size_t argmin;
  std::size_t argmax;
};

// Sum of a[i] * b[i]. Sizes must match.
double dot(std::span<const double> a, std::span<const double> b);

// y = A x for a row-major rows x cols matrix.
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// Extrema of a non-empty array. NaNs are not expected.
MinMax min_max(std::span<const double> v);

// Max of |a[i] - b[i]|.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

// Backend-specific entry points, exposed for equivalence testing.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x,
            double* y);
void axpy(double alpha, const double* x, double* y, std::size_t n);
MinMax min_max(const double* v, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x,
            double* y);
void axpy(double alpha, const double* x, double* y, std::size_t n);
MinMax min_max(const double* v, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);
}  // namespace avx2

}  // namespace greenbvp::simd
