#include <doctest.h>

#include <cmath>
#include <random>

#include "greenbvp/kernel.hpp"
#include "greenbvp/quadrature.hpp"

using namespace greenbvp;

namespace {

// Independent construction: G = G_D + w(t) c(s), where G_D is the Dirichlet
// Green's function, w solves the homogeneous equation with w(0) = 0,
// w(1) = 1, and c(s) = G(1, s) is fixed by the integral condition:
//   c = lambda (int G_D(., s) + c int w).
double oracle(double gamma, double lambda, double t, double s) {
  const double lo = std::min(t, s);
  const double hi = std::max(t, s);
  double gd, w, iw, igd;
  if (gamma == 0.0) {
    gd = lo * (1.0 - hi);
    w = t;
    iw = 0.5;
    igd = 0.5 * s * (1.0 - s);
  } else if (gamma > 0.0) {
    const double m = std::sqrt(gamma);
    gd = std::sin(m * lo) * std::sin(m * (1.0 - hi)) / (m * std::sin(m));
    w = std::sin(m * t) / std::sin(m);
    iw = (1.0 - std::cos(m)) / (m * std::sin(m));
    igd = (std::sin(m * (1 - s)) * (1 - std::cos(m * s)) + std::sin(m * s) * (1 - std::cos(m * (1 - s)))) /
          (m * m * std::sin(m));
  } else {
    const double m = std::sqrt(-gamma);
    gd = std::sinh(m * lo) * std::sinh(m * (1.0 - hi)) / (m * std::sinh(m));
    w = std::sinh(m * t) / std::sinh(m);
    iw = (std::cosh(m) - 1.0) / (m * std::sinh(m));
    igd = (std::sinh(m * (1 - s)) * (std::cosh(m * s) - 1) + std::sinh(m * s) * (std::cosh(m * (1 - s)) - 1)) /
          (m * m * std::sinh(m));
  }
  const double c = lambda * igd / (1.0 - lambda * iw);
  return gd + w * c;
}

struct Sample {
  double gamma;
  double lambda;
};

std::vector<Sample> random_params(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> g(-25.0, 9.5);
  std::uniform_real_distribution<double> l(-3.0, 6.0);
  std::vector<Sample> out;
  while (static_cast<int>(out.size()) < count) {
    const Sample p{g(rng), l(rng)};
    const ResonanceReport r = check_resonance(ProblemParams(p.gamma, p.lambda));
    if (r.distance > 1e-2) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("resonance detection") {
  auto r = check_resonance(ProblemParams(0, 2));
  CHECK(r.resonant);
  CHECK(r.branch == ResonanceBranch::lambda_curve);

  r = check_resonance(ProblemParams(4 * kPiSquared, 0.7));
  CHECK(r.resonant);
  CHECK(r.branch == ResonanceBranch::trig_null);
  CHECK(r.k == 1);

  // sin 1 / (1 - cos 1) = 0.841471 / 0.459698 = 1.830488.
  r = check_resonance(ProblemParams(1, 1.830488), 1e-5);
  CHECK(r.resonant);
  CHECK(r.branch == ResonanceBranch::lambda_curve);

  r = check_resonance(ProblemParams(-1, 1.0));
  CHECK_FALSE(r.resonant);
  CHECK(r.branch == ResonanceBranch::none);
  CHECK(r.distance == doctest::Approx(std::sinh(1.0) / (std::cosh(1.0) - 1.0) - 1.0));
  CHECK_THROWS_AS(check_resonance(ProblemParams(0, 1), 0.0), InputError);
  CHECK_THROWS_AS(GreenKernel(ProblemParams(0, 2)), ResonanceError);
  try {
    GreenKernel k(ProblemParams(16 * kPiSquared, 3.0));
    FAIL("expected resonance");
  } catch (const ResonanceError& e) {
    CHECK(e.report().k == 2);
  }
}

TEST_CASE("resonant iff the distance is below epsilon") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> g(-30.0, 100.0);
  std::uniform_real_distribution<double> l(-5.0, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const ProblemParams p(g(rng), l(rng));
    for (double eps : {1e-9, 1e-3, 0.3}) {
      const ResonanceReport r = check_resonance(p, eps);
      CHECK(r.resonant == (r.distance < eps));
      CHECK(r.distance >= 0.0);
    }
  }
}

TEST_CASE("hand-evaluated kernel values") {
  const GreenKernel k0(ProblemParams(0, 1));
  CHECK(k0(0.25, 0.5) == doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(k0(0.75, 0.5) == doctest::Approx(0.3125).epsilon(1e-15));
  // sinh(0.5)^2 / sinh(1)
  const GreenKernel kn(ProblemParams(-1, 0));
  CHECK(kn(0.5, 0.5) == doctest::Approx(std::pow(std::sinh(0.5), 2) / std::sinh(1.0)).epsilon(1e-13));
  for (const Sample& p : random_params(20, 3)) {
    CHECK(std::abs(GreenKernel(ProblemParams(p.gamma, p.lambda))(0.3, 1.0)) < 1e-12);
  }
}

TEST_CASE("closed forms match the independent decomposition") {
  for (const Sample& p : random_params(200, 11)) {
    const GreenKernel k(ProblemParams(p.gamma, p.lambda));
    double scale = 1.0;
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) scale = std::max(scale, std::abs(oracle(p.gamma, p.lambda, i / 20.0, j / 20.0)));
    }
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const double t = i / 20.0;
        const double s = j / 20.0;
        CAPTURE(p.gamma);
        CAPTURE(p.lambda);
        CAPTURE(t);
        CAPTURE(s);
        CHECK(std::abs(k(t, s) - oracle(p.gamma, p.lambda, t, s)) < 1e-11 * scale);
      }
    }
  }
  const GreenKernel zero(ProblemParams(0.0, 0.7));
  CHECK(zero.form() == KernelForm::polynomial);
}

TEST_CASE("one-sided derivatives and the unit jump") {
  const GreenKernel k(ProblemParams(0, 0));
  CHECK(k.dt(0.5, 0.5, Side::left) == doctest::Approx(0.5));
  CHECK(k.dt(0.5, 0.5, Side::right) == doctest::Approx(-0.5));
  for (const Sample& p : random_params(40, 5)) {
    const GreenKernel g(ProblemParams(p.gamma, p.lambda));
    for (int i = 1; i <= 9; ++i) {
      const double s = i / 10.0;
      const double jump = g.dt(s, s, Side::right) - g.dt(s, s, Side::left);
      CHECK(jump == doctest::Approx(-1.0).epsilon(1e-8));
      // Analytic derivative against a centered difference away from the kink.
      const double t = s < 0.5 ? s + 0.2 : s - 0.2;
      const double fd = (g(t + 1e-6, s) - g(t - 1e-6, s)) / 2e-6;
      CHECK(g.dt(t, s, Side::right) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("kernel properties on random parameters") {
  for (const Sample& p : random_params(30, 9)) {
    CAPTURE(p.gamma);
    CAPTURE(p.lambda);
    const ProblemParams params(p.gamma, p.lambda);
    const GreenKernel g(params);
    for (int i = 0; i <= 10; ++i) {
      const double x = i / 10.0;
      CHECK(std::abs(g(0.0, x)) < 1e-12);
      CHECK(std::abs(g(x, 0.0)) < 1e-12);
      CHECK(std::abs(g(x, 1.0)) < 1e-12);
    }
    // ODE in t away from s.
    const double h = 1e-4;
    for (double s : {0.2, 0.5, 0.8}) {
      for (double t : {0.1, 0.35, 0.65, 0.95}) {
        if (std::abs(t - s) < 0.05) continue;
        const double res = (g(t + h, s) - 2 * g(t, s) + g(t - h, s)) / (h * h) + p.gamma * g(t, s);
        CHECK(std::abs(res) < 1e-5);
      }
    }
    // Integral condition in t for each fixed s.
    for (double s : {0.15, 0.5, 0.85}) {
      const QuadratureRule rule = QuadratureRule(16, 10).with_split(s);
      const double integral = integrate([&](double tau) { return g(tau, s); }, rule);
      CHECK(std::abs(g(1.0, s) - p.lambda * integral) < 1e-11);
    }
    // Continuity: fine sampling shows no jumps in value.
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
      const double t = i / 400.0;
      const double s = 0.37;
      worst = std::max(worst, std::abs(g(t + 1.0 / 400.0, s) - g(t, s)));
    }
    double scale = 0.0;
    for (int i = 0; i <= 400; ++i) scale = std::max(scale, std::abs(g(i / 400.0, 0.37)));
    CHECK(worst < 0.05 * std::max(scale, 1e-3));
  }
}

TEST_CASE("degenerate odd multiple of pi branch") {
  const GreenKernel deg(ProblemParams(kPiSquared, 1.0));
  CHECK(deg.form() == KernelForm::trigonometric_degenerate);
  CHECK(deg.degenerate_k() == 1);
  const GreenKernel below(ProblemParams(std::pow(kPi - 1e-4, 2), 1.0));
  const GreenKernel above(ProblemParams(std::pow(kPi + 1e-4, 2), 1.0));
  CHECK(below.form() == KernelForm::trigonometric);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double t = i / 10.0;
      const double s = j / 10.0;
      CHECK(std::abs(below(t, s) - deg(t, s)) < 1e-3);
      CHECK(std::abs(above(t, s) - deg(t, s)) < 1e-3);
      // The limit formula also satisfies the decomposition at m = pi.
      CHECK(std::abs(deg(t, s) - 0.5 * (below(t, s) + above(t, s))) < 1e-6);
    }
  }
  const GreenKernel deg3(ProblemParams(9 * kPiSquared, 0.5));
  CHECK(deg3.degenerate_k() == 3);
  const double jump = deg3.dt(0.4, 0.4, Side::right) - deg3.dt(0.4, 0.4, Side::left);
  CHECK(jump == doctest::Approx(-1.0).epsilon(1e-8));
}
