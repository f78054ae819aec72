#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include "cli/config.hpp"
#include "cli/report.hpp"
#include "cli/svg.hpp"
#include "greenbvp/error.hpp"
#include "greenbvp/kernel.hpp"
#include "greenbvp/linear_solver.hpp"
#include "greenbvp/nonlinear_solver.hpp"
#include "greenbvp/parallel.hpp"
#include "greenbvp/spectrum.hpp"

namespace greenbvp::cli {
namespace {

using json = nlohmann::ordered_json;

// Raised when a command finishes with a non-zero status after writing its
// output (e.g. a solve whose checks did not all pass).
struct ExitStatus {
  int code;
};

// Writes to the file, or to `out` when the path is "-".
void emit(const std::string& path, std::ostream& out,
          const std::function<void(std::ostream&)>& writer) {
  if (path == "-") {
    writer(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  writer(f);
  if (!f) throw InputError("failed writing '" + path + "'");
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw InputError("unsupported format '" + format + "'");
}

GreenKernel make_kernel(const ProblemParams& params, std::ostream& err) {
  const ResonanceReport rep = check_resonance(params);
  if (rep.resonant) {
    err << "resonance: parameters lie on the spectrum, no Green's function exists\n";
    err << json{{"resonance", to_json(rep)}}.dump(2) << '\n';
    throw ExitStatus{kExitRefused};
  }
  return GreenKernel(params);
}

void cmd_green(double gamma, double lambda, std::size_t n, const std::string& format,
               const std::string& output, std::ostream& out, std::ostream& err) {
  check_format(format, {"csv", "json", "svg"});
  if (n < 2) throw InputError("--n must be at least 2");
  const ProblemParams params(gamma, lambda);
  const GreenKernel kernel = make_kernel(params, err);
  const std::vector<double> grid = uniform_grid(n);
  std::vector<double> values(n * n);
  parallel_for(0, n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) values[i * n + j] = kernel(grid[i], grid[j]);
  });
  emit(output, out, [&](std::ostream& o) {
    if (format == "csv") {
      std::vector<std::vector<double>> rows;
      rows.reserve(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows.push_back({grid[i], grid[j], values[i * n + j]});
      }
      write_csv(o, {"t", "s", "G"}, rows);
    } else if (format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) rows.push_back({grid[i], grid[j], values[i * n + j]});
      }
      json doc{{"gamma", gamma}, {"lambda", lambda}, {"n", n}, {"form", to_string(kernel.form())},
               {"columns", {"t", "s", "G"}}, {"rows", std::move(rows)}};
      o << doc.dump(2) << '\n';
    } else {
      write_heatmap_svg(o, values, n, fmt::format("G(t, s), gamma = {}, lambda = {}", gamma, lambda));
    }
  });
}

void cmd_delta(double gmin, double gmax, std::size_t steps, const std::string& format,
               const std::string& output, std::ostream& out) {
  check_format(format, {"csv", "json", "svg"});
  if (steps == 0) throw InputError("--steps must be at least 1");
  if (!(gmin < gmax)) throw InputError("--gamma-min must be below --gamma-max");
  if (!(gmax < kPiSquared)) {
    throw DomainError("delta is only defined for gamma < pi^2 (--gamma-max " + format_number(gmax) + ")");
  }
  std::vector<double> g(steps + 1);
  std::vector<double> d(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    // Exact endpoints, and exact zero when the grid passes through it.
    g[i] = gmin + (gmax - gmin) * static_cast<double>(i) / static_cast<double>(steps);
    if (i == steps) g[i] = gmax;
    if (std::abs(g[i]) < 1e-12 * (gmax - gmin)) g[i] = 0.0;
    d[i] = delta(g[i]);
  }
  emit(output, out, [&](std::ostream& o) {
    if (format == "csv") {
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i <= steps; ++i) rows.push_back({g[i], d[i]});
      write_csv(o, {"gamma", "delta"}, rows);
    } else if (format == "json") {
      json rows = json::array();
      for (std::size_t i = 0; i <= steps; ++i) rows.push_back({g[i], d[i]});
      o << json{{"columns", {"gamma", "delta"}}, {"rows", std::move(rows)}}.dump(2) << '\n';
    } else {
      write_line_svg(o, {{g, d}}, "Positivity frontier Delta(gamma)", "gamma", "Delta");
    }
  });
}

json problem_json(const NonlinearProblem& p) {
  return {{"gamma", p.params.gamma()},
          {"lambda", p.params.lambda()},
          {"f", p.f.source()},
          {"side", to_string(p.end)},
          {"a", p.a},
          {"b", p.b}};
}

void cmd_classify(double gamma, double lambda, std::ostream& out, std::ostream& err) {
  const ProblemParams params(gamma, lambda);
  make_kernel(params, err);
  const SignClassification c = classify_sign(params);
  json doc{{"gamma", gamma}, {"lambda", lambda}, {"classification", to_string(c.sign)},
           {"numerical", c.numerical}, {"lambda_zero", c.lambda_zero}};
  try {
    doc["delta"] = number(delta(gamma));
  } catch (const DomainError&) {
    doc["delta"] = nullptr;
  }
  doc["resonance"] = to_json(check_resonance(params));
  out << doc.dump(2) << '\n';
}

void cmd_solve(const std::string& config_path, const std::optional<std::string>& prefix_override,
               std::ostream& out, std::ostream& err) {
  const SolveSettings settings = solve_settings(KeyValueConfig::load(config_path));
  const NonlinearProblem& problem = settings.problem;
  const std::string prefix = prefix_override.value_or(settings.output_prefix);
  const std::string report_path = prefix + "_report.json";

  json report{{"problem", problem_json(problem)}};
  const ResonanceReport resonance = check_resonance(problem.params);
  report["resonance"] = to_json(resonance);
  auto write_report = [&] {
    emit(report_path, out, [&](std::ostream& o) { o << report.dump(2) << '\n'; });
  };
  if (resonance.resonant) {
    report["status"] = "resonance";
    write_report();
    err << "resonance: parameters lie on the spectrum, no Green's function exists\n";
    throw ExitStatus{kExitRefused};
  }

  const SignClassification sign = classify_sign(problem.params);
  report["classification"] = to_json(sign);
  std::optional<double> frontier;
  try {
    frontier = delta(problem.params.gamma());
  } catch (const DomainError&) {
  }
  report["delta"] = frontier ? number(*frontier) : json(nullptr);
  const double lam = problem.params.lambda();
  const bool outside = !(frontier && lam > 0.0 && lam < *frontier);
  report["outside_theorem"] = outside;
  if (outside) {
    report["warning"] = "lambda is outside (0, Delta(gamma)); existence is not guaranteed";
    err << "warning: lambda outside (0, Delta(gamma)), search runs without the existence guarantee\n";
  }
  try {
    report["growth"] = to_json(growth_report(problem));
  } catch (const DomainError& e) {
    report["growth"] = {{"error", e.what()}};
  }

  SolveResult result = [&] {
    try {
      return solve_positive(problem, settings.solver);
    } catch (const SearchFailure& e) {
      report["status"] = "search_failure";
      report["best_residual"] = number(e.best_residual());
      write_report();
      err << "search failure: " << e.what() << '\n';
      throw ExitStatus{kExitSolver};
    }
  }();

  report["status"] = result.accepted ? "accepted" : "rejected";
  report["method"] = result.method;
  report["start_amplitude"] = result.start_amplitude;
  report["iterations"] = result.iterations;
  report["norm_inf"] = result.profile.norm_inf();
  report["fixed_point_residual"] = number(result.fixed_point_residual);
  report["residuals"] = to_json(result.residual);
  report["cone"] = to_json(result.cone);
  report["cone"]["available"] = result.cone_available;
  report["positive_interior"] = result.positive_interior;
  report["tolerances"] = {{"tol", settings.solver.tol},
                          {"fd_residual_tol", settings.solver.fd_residual_tol},
                          {"cone_tol", settings.solver.cone_tol}};

  emit(prefix + "_solution.csv", out, [&](std::ostream& o) { write_profile_csv(o, result.profile); });
  if (settings.svg) {
    emit(prefix + "_profile.svg", out, [&](std::ostream& o) {
      std::vector<double> g(result.profile.grid().begin(), result.profile.grid().end());
      std::vector<double> v(result.profile.values().begin(), result.profile.values().end());
      write_line_svg(o, {{g, v}}, "Positive solution u(t), f = " + problem.f.source(), "t", "u");
    });
  }
  write_report();
  if (!result.accepted) {
    err << "solution rejected: residual or cone checks failed (see " << report_path << ")\n";
    throw ExitStatus{kExitSolver};
  }
}

void cmd_verify(const std::string& solution_path, const std::string& config_path,
                const std::string& output, std::ostream& out) {
  const KeyValueConfig cfg = KeyValueConfig::load(config_path);
  // Solver keys are accepted so the same file serves solve and verify.
  cfg.check_keys({"gamma", "lambda", "sigma", "f", "side", "grid_n", "a", "b", "tol", "max_iter",
                  "min_norm", "init_amplitudes", "anderson_depth", "newton_damping", "nodes_per_cell",
                  "fd_residual_tol", "output", "svg"});
  const ProblemParams params(cfg.number("gamma"), cfg.number("lambda"));
  const std::string side = cfg.get("side").value_or("right");
  if (side != "right" && side != "left") throw InputError("config: side must be 'left' or 'right'");
  const IntegralEnd end = side == "right" ? IntegralEnd::right : IntegralEnd::left;
  if (cfg.has("sigma") == cfg.has("f")) {
    throw InputError("config: give exactly one of 'sigma' (in t) or 'f' (in t, u)");
  }
  const SolutionProfile profile = read_profile_csv(solution_path);
  if (cfg.has("grid_n") && cfg.count_or("grid_n", 0) != profile.size()) {
    throw InputError("solution grid has " + std::to_string(profile.size()) +
                     " points, config expects " + cfg.require("grid_n"));
  }
  if (profile.uniform_spacing() == 0.0) throw InputError("solution grid is not uniform");
  if (profile.size() < 11) throw InputError("solution grid too coarse (need at least 11 points)");

  std::vector<double> sigma(profile.size());
  const auto t = profile.grid();
  const auto u = profile.values();
  if (cfg.has("sigma")) {
    const Expression s = parse(cfg.require("sigma"));
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = s.eval(t[i], u[i]);
  } else {
    const Expression f = parse(cfg.require("f"));
    for (std::size_t i = 0; i < sigma.size(); ++i) sigma[i] = f.eval(t[i], std::max(u[i], 0.0));
  }
  const ResidualReport rep = verify_solution(params, std::span<const double>(sigma), profile, 0.0, end);
  json doc{{"gamma", params.gamma()}, {"lambda", params.lambda()}, {"side", side},
           {"grid_n", profile.size()}, {"residuals", to_json(rep)}};
  emit(output, out, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green's function tools for u'' + gamma u + f(t, u) = 0 with an integral boundary condition",
               "greenbvp"};
  app.require_subcommand(1, 1);

  double gamma = 0.0;
  double lambda = 0.0;
  std::size_t n = 101;
  std::string format = "csv";
  std::string output = "-";
  auto* green = app.add_subcommand("green", "Tabulate G(t, s) on an n x n mesh");
  green->add_option("--gamma", gamma, "gamma")->required();
  green->add_option("--lambda", lambda, "lambda")->required();
  green->add_option("--n", n, "mesh points per axis")->capture_default_str();
  green->add_option("--format", format, "csv, json or svg")->capture_default_str();
  green->add_option("--output,-o", output, "output file, - for stdout")->capture_default_str();

  double gmin = -20.0;
  double gmax = 9.5;
  std::size_t steps = 100;
  auto* del = app.add_subcommand("delta", "Tabulate the positivity frontier Delta(gamma)");
  del->add_option("--gamma-min", gmin)->capture_default_str();
  del->add_option("--gamma-max", gmax)->capture_default_str();
  del->add_option("--steps", steps, "number of intervals")->capture_default_str();
  del->add_option("--format", format, "csv, json or svg")->capture_default_str();
  del->add_option("--output,-o", output, "output file, - for stdout")->capture_default_str();

  auto* cls = app.add_subcommand("classify", "Sign of the Green's function");
  cls->add_option("--gamma", gamma)->required();
  cls->add_option("--lambda", lambda)->required();

  std::string config;
  std::string prefix;
  auto* solve = app.add_subcommand("solve", "Search for a positive solution of the nonlinear problem");
  solve->add_option("config", config, "key = value configuration file")->required();
  auto* prefix_opt = solve->add_option("--output,-o", prefix, "prefix for the output files");

  std::string solution;
  auto* verify = app.add_subcommand("verify", "Residual report for a solution file");
  verify->add_option("solution", solution, "CSV file with columns t,u")->required();
  verify->add_option("config", config, "key = value configuration file")->required();
  verify->add_option("--output,-o", output, "output file, - for stdout")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*green) {
      cmd_green(gamma, lambda, n, format, output, out, err);
    } else if (*del) {
      cmd_delta(gmin, gmax, steps, format, output, out);
    } else if (*cls) {
      cmd_classify(gamma, lambda, out, err);
    } else if (*solve) {
      cmd_solve(config, *prefix_opt ? std::optional<std::string>(prefix) : std::nullopt, out, err);
    } else if (*verify) {
      cmd_verify(solution, config, output, out);
    }
  } catch (const ExitStatus& s) {
    return s.code;
  } catch (const ResonanceError& e) {
    err << "resonance: " << e.what() << '\n';
    return kExitRefused;
  } catch (const NearResonanceError& e) {
    err << "near resonance: " << e.what() << '\n';
    return kExitRefused;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitRefused;
  } catch (const DegenerateConeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefused;
  } catch (const ClassificationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefused;
  } catch (const InputError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SearchFailure& e) {
    err << "search failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const ConvergenceError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitOk;
}

}  // namespace greenbvp::cli
