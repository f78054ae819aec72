#include "greenbvp/nonlinear_solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>

#include "greenbvp/error.hpp"
#include "greenbvp/fd_oracle.hpp"
#include "greenbvp/kernel.hpp"
#include "greenbvp/simd.hpp"

namespace greenbvp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return kInf;
    m = std::max(m, std::abs(x));
  }
  return m;
}

double fd_derivative(const NonlinearProblem& p, double t, double u) {
  const double e = 1e-6 * std::max(1.0, std::abs(u));
  const double hi = u + e;
  const double lo = std::max(u - e, 0.0);
  return (p.eval_f(t, hi) - p.eval_f(t, lo)) / (hi - lo);
}

NonlinearProblem standard_form(const NonlinearProblem& problem) {
  return problem.end == IntegralEnd::right ? problem : reflect_problem(problem);
}

}  // namespace

const char* to_string(Growth g) noexcept {
  switch (g) {
    case Growth::sublinear: return "sublinear";
    case Growth::superlinear: return "superlinear";
    case Growth::indeterminate: return "indeterminate";
  }
  return "?";
}

FixedPointMap::FixedPointMap(const NonlinearProblem& problem, std::vector<double> grid,
                             std::size_t nodes_per_cell)
    : problem_(problem), op_(GreenKernel(problem.params), std::move(grid), nodes_per_cell) {
  if (problem.end != IntegralEnd::right) {
    throw InputError("FixedPointMap: reflect left-end problems first");
  }
}

std::vector<double> FixedPointMap::apply(std::span<const double> u) const {
  std::vector<double> node_u(op_.cols());
  op_.to_nodes(u, node_u);
  const auto& nodes = op_.nodes();
  for (std::size_t j = 0; j < node_u.size(); ++j) node_u[j] = problem_.eval_f(nodes[j], node_u[j]);
  std::vector<double> out(op_.rows());
  op_.apply(node_u, out);
  return out;
}

std::vector<double> FixedPointMap::jacobian(std::span<const double> u) const {
  const std::size_t nr = op_.rows();
  const std::size_t nc = op_.cols();
  std::vector<double> node_u(nc);
  op_.to_nodes(u, node_u);
  const auto& nodes = op_.nodes();
  std::vector<double> d(nc);
  for (std::size_t j = 0; j < nc; ++j) d[j] = fd_derivative(problem_, nodes[j], node_u[j]);
  const auto& k = op_.matrix();
  const auto& st = op_.stencils();
  std::vector<double> jac(nr * nr, 0.0);
  for (std::size_t i = 0; i < nr; ++i) {
    const double* krow = k.data() + i * nc;
    double* jrow = jac.data() + i * nr;
    for (std::size_t j = 0; j < nc; ++j) {
      const double kd = krow[j] * d[j];
      for (int q = 0; q < 4; ++q) jrow[st[j].first + q] += kd * st[j].w[q];
    }
  }
  return jac;
}

SolutionProfile apply_T(const NonlinearProblem& problem, const SolutionProfile& u) {
  if (problem.end == IntegralEnd::left) {
    return reflect_profile(apply_T(reflect_problem(problem), reflect_profile(u)));
  }
  std::vector<double> grid(u.grid().begin(), u.grid().end());
  const FixedPointMap map(problem, grid);
  return SolutionProfile(std::move(grid), map.apply(u.values()));
}

std::vector<double> default_ladder() {
  std::vector<double> l;
  for (int e = -6; e <= 6; ++e) l.push_back(std::pow(10.0, e));
  return l;
}

GrowthReport growth_report(const NonlinearProblem& problem, std::span<const double> ladder,
                           std::size_t t_samples) {
  std::vector<double> fallback;
  if (ladder.empty()) {
    fallback = default_ladder();
    ladder = fallback;
  }
  if (ladder.size() < 3) throw InputError("growth_report: need at least 3 rungs");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0) || (i > 0 && !(ladder[i] > ladder[i - 1]))) {
      throw InputError("growth_report: ladder must be positive and increasing");
    }
  }
  if (std::log10(ladder.back() / ladder.front()) < 8.0 - 1e-9) {
    throw InputError("growth_report: ladder must span at least 8 decades");
  }
  if (t_samples < 101) throw InputError("growth_report: need at least 101 t samples");

  GrowthReport rep;
  const std::vector<double> ts = uniform_grid(t_samples);
  for (double u : ladder) {
    GrowthRung rung{u, kInf, -kInf};
    auto ratio = [&](double t) {
      const double r = problem.eval_f(t, u) / u;
      return std::isnan(r) ? kInf : r;
    };
    for (double t : ts) rung.max_ratio = std::max(rung.max_ratio, ratio(t));
    for (std::size_t i = 0; i < t_samples; ++i) {
      const double t = problem.a + (problem.b - problem.a) * static_cast<double>(i) /
                                       static_cast<double>(t_samples - 1);
      rung.min_ratio = std::min(rung.min_ratio, ratio(t));
    }
    rep.rungs.push_back(rung);
  }

  // Strict trend tests between consecutive rungs. An infinite rung after an
  // infinite one still counts as growth; a fall needs a finite later value.
  auto rises = [](double x, double y) {
    if (y == kInf) return true;
    return x != kInf && y > x + 1e-12 * std::max(std::abs(x), std::abs(y));
  };
  auto falls = [](double x, double y) {
    if (y == kInf) return false;
    return x == kInf || y < x - 1e-12 * std::max(std::abs(x), std::abs(y));
  };
  const auto& r = rep.rungs;
  const std::size_t n = r.size();
  // Values at the three rungs nearest u -> 0 (outermost first) or u -> inf.
  auto near_zero = [&](auto get) { return std::array<double, 3>{get(r[2]), get(r[1]), get(r[0])}; };
  auto near_inf = [&](auto get) {
    return std::array<double, 3>{get(r[n - 3]), get(r[n - 2]), get(r[n - 1])};
  };
  auto rising = [&](const std::array<double, 3>& v) { return rises(v[0], v[1]) && rises(v[1], v[2]); };
  auto falling = [&](const std::array<double, 3>& v) { return falls(v[0], v[1]) && falls(v[1], v[2]); };
  auto lo = [](const GrowthRung& g) { return g.min_ratio; };
  auto hi = [](const GrowthRung& g) { return g.max_ratio; };

  rep.f0_est = r.front().min_ratio;
  rep.f_inf_est = r.back().min_ratio;
  rep.f_sup0_est = r.front().max_ratio;
  rep.f_sup_inf_est = r.back().max_ratio;
  rep.f0_diverges = rising(near_zero(lo));
  rep.f_inf_diverges = rising(near_inf(lo));
  rep.f_sup0_vanishes = falling(near_zero(hi));
  rep.f_sup_inf_vanishes = falling(near_inf(hi));

  const bool sub = rep.f0_diverges && rep.f_sup_inf_vanishes;
  const bool super = rep.f_sup0_vanishes && rep.f_inf_diverges;
  if (sub != super) rep.classification = sub ? Growth::sublinear : Growth::superlinear;
  return rep;
}

ConeMembership cone_membership(const SolutionProfile& profile, const ConeSpec& cone, double tol) {
  ConeMembership c;
  const double norm = profile.norm_inf();
  const auto grid = profile.grid();
  const auto v = profile.values();
  double margin = kInf;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < -tol) c.nonneg = false;
    margin = std::min(margin, v[i] - cone.lower_envelope(grid[i]) * norm);
  }
  c.margin = margin;
  c.member = c.nonneg && margin >= -tol;
  return c;
}

ConeMembership cone_membership(const SolutionProfile& profile, const ProblemParams& params,
                               double tol) {
  return cone_membership(profile, bound_constants(params), tol);
}

NonlinearProblem reflect_problem(const NonlinearProblem& problem) {
  const IntegralEnd flipped =
      problem.end == IntegralEnd::right ? IntegralEnd::left : IntegralEnd::right;
  return NonlinearProblem(problem.params, problem.f.reflect_t(), flipped, 1.0 - problem.b,
                          1.0 - problem.a);
}

SolutionProfile reflect_profile(const SolutionProfile& profile) {
  const auto g = profile.grid();
  const auto v = profile.values();
  const std::size_t n = g.size();
  std::vector<double> grid(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = 1.0 - g[n - 1 - i];
    values[i] = v[n - 1 - i];
  }
  grid.front() = 0.0;
  grid.back() = 1.0;
  return SolutionProfile(std::move(grid), std::move(values));
}

namespace {

struct Candidate {
  std::vector<double> u;
  std::size_t iterations = 0;
  double residual = kInf;
  double amplitude = 0.0;
  std::string method;
};

enum class PicardOutcome { converged, trivial, diverged, stagnated };

// Picard iteration with Anderson mixing on g(u) = T(u) - u. Iterates are
// clipped at zero. `best` receives the nontrivial iterate with the smallest
// residual seen.
PicardOutcome picard(const FixedPointMap& map, std::vector<double>& u, const SolverConfig& cfg,
                     std::size_t& iterations, Candidate& best) {
  const std::size_t n = u.size();
  std::deque<std::vector<double>> us;
  std::deque<std::vector<double>> gs;
  std::vector<double> history;
  for (iterations = 0; iterations < cfg.max_iter; ++iterations) {
    std::vector<double> tu = map.apply(u);
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = tu[i] - u[i];
    const double res = norm_inf(g);
    const double un = norm_inf(u);
    if (!std::isfinite(res) || !std::isfinite(un) || un > 1e12) return PicardOutcome::diverged;
    if (un >= cfg.min_norm && res < best.residual) {
      best.u = u;
      best.residual = res;
    }
    if (res < cfg.tol) return un >= cfg.min_norm ? PicardOutcome::converged : PicardOutcome::trivial;
    if (un < 1e-3 * cfg.min_norm && norm_inf(tu) < 1e-3 * cfg.min_norm && iterations > 5) {
      return PicardOutcome::trivial;
    }
    history.push_back(res);
    if (history.size() > 40 && res > 0.5 * history[history.size() - 31]) {
      return PicardOutcome::stagnated;
    }

    us.push_back(u);
    gs.push_back(g);
    if (us.size() > cfg.anderson_depth + 1) {
      us.pop_front();
      gs.pop_front();
    }
    std::vector<double> next = tu;
    const std::size_t mk = us.size() - 1;
    if (mk > 0) {
      Eigen::MatrixXd df(n, mk);
      Eigen::MatrixXd dx(n, mk);
      for (std::size_t j = 0; j < mk; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          df(i, j) = gs[j + 1][i] - gs[j][i];
          dx(i, j) = us[j + 1][i] - us[j][i];
        }
      }
      const Eigen::Map<const Eigen::VectorXd> gk(g.data(), n);
      const Eigen::VectorXd coef = df.colPivHouseholderQr().solve(gk);
      if (coef.allFinite()) {
        const Eigen::VectorXd corr = (dx + df) * coef;
        for (std::size_t i = 0; i < n; ++i) next[i] = tu[i] - corr[i];
      }
    }
    for (double& x : next) x = std::max(x, 0.0);
    // Mixing can extrapolate straight onto the trivial fixed point; fall
    // back to the plain Picard step when it collapses the iterate.
    if (norm_inf(next) < 0.1 * norm_inf(tu)) {
      next = tu;
      for (double& x : next) x = std::max(x, 0.0);
      us.clear();
      gs.clear();
    }
    u.swap(next);
  }
  return PicardOutcome::stagnated;
}

// Newton on F(u) = u - T(u) with a dense LU solve and backtracking.
std::optional<std::size_t> kernel_newton(const FixedPointMap& map, std::vector<double>& u,
                                         const SolverConfig& cfg) {
  const std::size_t n = u.size();
  auto residual = [&](const std::vector<double>& v, Eigen::VectorXd& r) {
    const std::vector<double> tv = map.apply(v);
    r.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) r[static_cast<Eigen::Index>(i)] = v[i] - tv[i];
    return norm_inf(std::span<const double>(r.data(), n));
  };
  Eigen::VectorXd r;
  double norm = residual(u, r);
  std::vector<double> trial(n);
  Eigen::VectorXd r_trial;
  for (std::size_t iter = 0; iter < 30; ++iter) {
    if (norm < cfg.tol) return iter;
    const std::vector<double> jt = map.jacobian(u);
    Eigen::MatrixXd j = -Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                         Eigen::RowMajor>>(jt.data(), n, n);
    j.diagonal().array() += 1.0;
    const Eigen::VectorXd delta = j.partialPivLu().solve(-r);
    if (!delta.allFinite()) return std::nullopt;
    double step = 1.0;
    double trial_norm = kInf;
    for (int k = 0; k < 30; ++k, step *= cfg.newton_damping) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = u[i] + step * delta[static_cast<Eigen::Index>(i)];
      trial_norm = residual(trial, r_trial);
      if (trial_norm < norm) break;
    }
    if (!(trial_norm < norm)) return std::nullopt;
    u.swap(trial);
    std::swap(r, r_trial);
    norm = trial_norm;
  }
  if (norm < cfg.tol) return 30;
  return std::nullopt;
}

}  // namespace

SolveResult solve_positive(const NonlinearProblem& original, const SolverConfig& cfg) {
  if (cfg.grid_n < 11) throw InputError("solve_positive: grid_n must be at least 11");
  if (!(cfg.tol > 0.0) || !(cfg.min_norm > 0.0) || cfg.max_iter == 0) {
    throw InputError("solve_positive: tol, min_norm and max_iter must be positive");
  }
  if (cfg.init_amplitudes.empty()) throw InputError("solve_positive: no starting amplitudes");
  if (!(cfg.newton_damping > 0.0 && cfg.newton_damping < 1.0)) {
    throw InputError("solve_positive: newton_damping must lie in (0, 1)");
  }
  const NonlinearProblem problem = standard_form(original);
  const std::vector<double> grid = uniform_grid(cfg.grid_n);
  const FixedPointMap map(problem, grid, cfg.nodes_per_cell);

  bool outside = true;
  try {
    const double lam = problem.params.lambda();
    outside = !(lam > 0.0 && lam < delta(problem.params.gamma()));
  } catch (const DomainError&) {
    outside = true;
  }

  std::optional<ConeSpec> cone;
  try {
    cone = bound_constants(problem.params);
  } catch (const DegenerateConeError&) {
  } catch (const ClassificationError&) {
  }

  // Full check of a candidate in standard coordinates.
  auto evaluate = [&](const Candidate& c) {
    SolveResult res{.profile = SolutionProfile(grid, c.u), .residual = {}, .cone = {}};
    res.cone_available = cone.has_value();
    res.iterations = c.iterations;
    const std::vector<double> tu = map.apply(c.u);
    res.fixed_point_residual = simd::max_abs_diff(tu, c.u);
    std::vector<double> sigma(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) sigma[i] = problem.eval_f(grid[i], c.u[i]);
    res.residual = verify_solution(problem.params, std::span<const double>(sigma), res.profile);
    if (cone) {
      res.cone = cone_membership(res.profile, *cone, cfg.cone_tol);
    } else {
      res.cone.nonneg = std::all_of(c.u.begin(), c.u.end(), [&](double x) { return x >= -cfg.cone_tol; });
      res.cone.margin = std::numeric_limits<double>::quiet_NaN();
      res.cone.member = false;
    }
    res.positive_interior = std::all_of(c.u.begin() + 1, c.u.end() - 1, [](double x) { return x > 0.0; });
    res.outside_theorem = outside;
    res.start_amplitude = c.amplitude;
    res.method = c.method;
    res.accepted = res.profile.norm_inf() >= cfg.min_norm && res.fixed_point_residual < cfg.tol &&
                   res.residual.bc_left < 10.0 * cfg.tol && res.residual.bc_right < 10.0 * cfg.tol &&
                   res.residual.ode_residual_inf < cfg.fd_residual_tol && res.positive_interior &&
                   res.cone.member;
    return res;
  };

  std::optional<SolveResult> best;
  double best_residual = kInf;
  auto consider = [&](const Candidate& c) {
    SolveResult r = evaluate(c);
    const bool better = !best || (r.accepted && !best->accepted) ||
                        (r.accepted == best->accepted && r.fixed_point_residual < best->fixed_point_residual);
    if (better) best = std::move(r);
    return best->accepted;
  };

  // One start: Picard from amp * t, then Newton on the collocation system
  // and on u = T u if Picard does not converge.
  auto attempt = [&](double amp) {
    std::vector<double> u(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) u[i] = amp * grid[i];
    const std::vector<double> ramp = u;
    Candidate tracked;
    std::size_t iters = 0;
    const PicardOutcome outcome = picard(map, u, cfg, iters, tracked);
    best_residual = std::min(best_residual, tracked.residual);
    if (outcome == PicardOutcome::converged) {
      consider({u, iters, 0.0, amp, "picard"});
      return outcome;
    }
    std::vector<std::vector<double>> seeds;
    if (!tracked.u.empty()) seeds.push_back(tracked.u);
    seeds.push_back(ramp);
    for (const auto& seed : seeds) {
      FDNewtonResult fd{SolutionProfile(grid, seed), kInf, 0};
      try {
        fd = solve_fd_newton(problem, grid.size() - 2, SolutionProfile(grid, seed),
                             {std::max(cfg.tol, 1e-9), 50});
      } catch (const ConvergenceError&) {
        continue;
      } catch (const NearResonanceError&) {
        continue;
      }
      if (fd.profile.norm_inf() < cfg.min_norm) continue;
      std::vector<double> v(fd.profile.values().begin(), fd.profile.values().end());
      const auto polished = kernel_newton(map, v, cfg);
      if (!polished || norm_inf(v) < cfg.min_norm) continue;
      consider({v, iters + fd.iterations + *polished, 0.0, amp, "picard+fd-newton+newton"});
      return PicardOutcome::converged;
    }
    return outcome;
  };
  auto found = [&] { return best && best->accepted; };

  std::vector<double> amps = cfg.init_amplitudes;
  std::sort(amps.begin(), amps.end());
  std::vector<PicardOutcome> outcomes;
  for (double amp : amps) {
    outcomes.push_back(attempt(amp));
    if (found()) break;
  }

  // Small starts collapse to zero and large ones blow up when the nontrivial
  // solution repels the iteration. Bisect the amplitude between the two.
  for (std::size_t k = 0; !found() && k + 1 < outcomes.size(); ++k) {
    if (outcomes[k] != PicardOutcome::trivial) continue;
    if (outcomes[k + 1] != PicardOutcome::diverged && outcomes[k + 1] != PicardOutcome::stagnated) continue;
    double lo = amps[k];
    double hi = amps[k + 1];
    for (int step = 0; step < 40 && !found() && hi > lo * (1.0 + 1e-9); ++step) {
      const double mid = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
      const PicardOutcome o = attempt(mid);
      if (o == PicardOutcome::trivial) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }

  if (!best) {
    throw SearchFailure("no nontrivial fixed point found from any start", best_residual);
  }
  SolveResult out = std::move(*best);
  if (original.end == IntegralEnd::left) {
    out.profile = reflect_profile(out.profile);
  }
  return out;
}

}  // namespace greenbvp
