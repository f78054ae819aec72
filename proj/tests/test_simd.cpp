#include <stdexcept>
#include <doctest.h>

#include <random>
#include <vector>

#include "greenbvp/parallel.hpp"
#include "greenbvp/simd.hpp"

using namespace greenbvp;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{4, 5, 6};
  CHECK(simd::scalar::dot(a.data(), b.data(), 3) == 32.0);
  const auto mm = simd::scalar::min_max(b.data(), 3);
  CHECK(mm.min == 4.0);
  CHECK(mm.max == 6.0);
  CHECK(mm.argmin == 0);
  CHECK(mm.argmax == 2);
  std::vector<double> y(2);
  const std::vector<double> m{1, 2, 3, 4, 5, 6};
  simd::scalar::matvec(m.data(), 2, 3, a.data(), y.data());
  CHECK(y[0] == 14.0);
  CHECK(y[1] == 32.0);
  CHECK_THROWS(simd::min_max(std::span<const double>()));
}

TEST_CASE("AVX2 and scalar kernels agree") {
  if (!simd::backend_available(simd::Backend::avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(12345);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 100u, 1001u, 4096u}) {
    CAPTURE(n);
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    const double ds = simd::scalar::dot(a.data(), b.data(), n);
    const double dv = simd::avx2::dot(a.data(), b.data(), n);
    CHECK(dv == doctest::Approx(ds).epsilon(1e-13).scale(1.0 + n));
    CHECK(simd::avx2::max_abs_diff(a.data(), b.data(), n) ==
          simd::scalar::max_abs_diff(a.data(), b.data(), n));

    std::vector<double> ys = b;
    std::vector<double> yv = b;
    simd::scalar::axpy(0.37, a.data(), ys.data(), n);
    simd::avx2::axpy(0.37, a.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-15).scale(100.0));

    if (n > 0) {
      const auto ms = simd::scalar::min_max(a.data(), n);
      const auto mv = simd::avx2::min_max(a.data(), n);
      CHECK(ms.min == mv.min);
      CHECK(ms.max == mv.max);
      CHECK(ms.argmin == mv.argmin);
      CHECK(ms.argmax == mv.argmax);
    }
  }
  // Ties resolve to the first index on both paths.
  std::vector<double> ties(37, 1.0);
  ties[5] = ties[20] = -2.0;
  ties[9] = ties[33] = 3.0;
  const auto ms = simd::scalar::min_max(ties.data(), ties.size());
  const auto mv = simd::avx2::min_max(ties.data(), ties.size());
  CHECK(ms.argmin == 5);
  CHECK(mv.argmin == 5);
  CHECK(ms.argmax == 9);
  CHECK(mv.argmax == 9);

  for (std::size_t rows : {1u, 3u, 10u}) {
    for (std::size_t cols : {1u, 4u, 9u, 130u}) {
      const auto m = random_vector(rows * cols, rng);
      const auto x = random_vector(cols, rng);
      std::vector<double> ys(rows);
      std::vector<double> yv(rows);
      simd::scalar::matvec(m.data(), rows, cols, x.data(), ys.data());
      simd::avx2::matvec(m.data(), rows, cols, x.data(), yv.data());
      for (std::size_t i = 0; i < rows; ++i) {
        CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-13).scale(1.0 + cols));
      }
    }
  }
}

TEST_CASE("backend switching") {
  const simd::Backend before = simd::active_backend();
  CHECK(simd::set_backend(simd::Backend::scalar));
  CHECK(simd::active_backend() == simd::Backend::scalar);
  const std::vector<double> a{1, 2, 3, 4, 5};
  CHECK(simd::dot(a, a) == 55.0);
  simd::set_backend(before);
  CHECK(simd::active_backend() == before);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(0, hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK(thread_count() >= 1);
  CHECK_THROWS_AS(parallel_for(0, 200, [](std::size_t i) {
                    if (i == 150) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}
