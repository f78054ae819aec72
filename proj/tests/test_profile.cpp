#include <doctest.h>

#include <cmath>

#include "greenbvp/error.hpp"
#include "greenbvp/params.hpp"
#include "greenbvp/problem.hpp"
#include "greenbvp/profile.hpp"

using namespace greenbvp;

TEST_CASE("regime classification") {
  CHECK(classify_gamma(0).regime == Regime::zero);
  CHECK(classify_gamma(4).regime == Regime::positive);
  CHECK(classify_gamma(4).m == 2.0);
  CHECK(classify_gamma(-1).regime == Regime::negative);
  CHECK(classify_gamma(-1).m == 1.0);
  CHECK_THROWS_AS(classify_gamma(NAN), InputError);
  CHECK_THROWS_AS(classify_gamma(INFINITY), InputError);
  for (double g : {-25.0, -3.3, 1e-9, 2.0, 9.5}) {
    const ProblemParams p(g, 1.0);
    CHECK(p.m() * p.m() == doctest::Approx(std::abs(g)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(ProblemParams(0.0, NAN), InputError);
}

TEST_CASE("profile validation and interpolation") {
  CHECK(uniform_grid(5) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK_THROWS_AS(SolutionProfile({0, 0.5, 1}, {0, 1, 2}), InputError);
  CHECK_THROWS_AS(SolutionProfile({0, 0.2, 0.2, 1}, {0, 1, 2, 3}), InputError);
  CHECK_THROWS_AS(SolutionProfile({0.1, 0.2, 0.5, 1}, {0, 1, 2, 3}), InputError);
  CHECK_THROWS_AS(SolutionProfile({0, 0.2, 0.5, 1}, {0, 1, 2}), InputError);

  // Cubics are reproduced exactly.
  const auto p = SolutionProfile::sample(11, [](double t) { return t * t * t - 2 * t + 1; });
  for (double x : {0.0, 0.03, 0.5, 0.61, 0.97, 1.0}) {
    CHECK(p(x) == doctest::Approx(x * x * x - 2 * x + 1).epsilon(1e-14));
  }
  CHECK(p.norm_inf() == doctest::Approx(1.0));
  CHECK(p.uniform_spacing() == doctest::Approx(0.1));
  const SolutionProfile q({0, 0.1, 0.5, 1}, {0, 1, 2, 3});
  CHECK(q.uniform_spacing() == 0.0);
}

TEST_CASE("problem interval defaults and validation") {
  const NonlinearProblem right(ProblemParams(0, 1), parse("u"));
  CHECK(right.a == 0.5);
  CHECK(right.b == 1.0);
  const NonlinearProblem left(ProblemParams(0, 1), parse("u"), IntegralEnd::left);
  CHECK(left.a == 0.0);
  CHECK(left.b == 0.5);
  CHECK_THROWS_AS(NonlinearProblem(ProblemParams(0, 1), parse("u"), IntegralEnd::right, 0.0, 1.0),
                  InputError);
  CHECK_THROWS_AS(NonlinearProblem(ProblemParams(0, 1), parse("u"), IntegralEnd::right, 0.6, 0.5),
                  InputError);
  CHECK(right.eval_f(0.3, -2.0) == 0.0);
}
