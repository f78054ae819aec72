#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "greenbvp/simd.hpp"

namespace greenbvp::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(GREENBVP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("GREENBVP_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd: operand sizes differ");
}

}  // namespace

const char* to_string(Backend b) noexcept {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) noexcept {
  return b == Backend::scalar || cpu_has_avx2();
}

bool set_backend(Backend b) noexcept {
  if (!backend_available(b)) return false;
  current().store(b, std::memory_order_relaxed);
  return true;
}

#if defined(GREENBVP_HAVE_AVX2)
#define GREENBVP_DISPATCH(call) \
  (active_backend() == Backend::avx2 ? avx2::call : scalar::call)
#else
#define GREENBVP_DISPATCH(call) (scalar::call)
#endif

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return GREENBVP_DISPATCH(dot(a.data(), b.data(), a.size()));
}

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  require_same_size(a.size(), rows * cols);
  require_same_size(x.size(), cols);
  require_same_size(y.size(), rows);
  GREENBVP_DISPATCH(matvec(a.data(), rows, cols, x.data(), y.data()));
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size());
  GREENBVP_DISPATCH(axpy(alpha, x.data(), y.data(), x.size()));
}

MinMax min_max(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("simd::min_max: empty input");
  return GREENBVP_DISPATCH(min_max(v.data(), v.size()));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  if (a.empty()) return 0.0;
  return GREENBVP_DISPATCH(max_abs_diff(a.data(), b.data(), a.size()));
}

#undef GREENBVP_DISPATCH

}  // namespace greenbvp::simd
