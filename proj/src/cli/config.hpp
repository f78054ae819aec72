#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greenbvp/error.hpp"
#include "greenbvp/nonlinear_solver.hpp"
#include "greenbvp/problem.hpp"

namespace greenbvp::cli {

// Flat `key = value` text. '#' starts a comment outside quotes; values may
// be double-quoted (needed for expressions containing '#', never otherwise).
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::size_t count_or(const std::string& key, std::size_t fallback) const;
  std::vector<double> number_list(const std::string& key) const;
  // Keys not listed in `known` are rejected.
  void check_keys(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

// Problem and solver settings of the `solve` command.
struct SolveSettings {
  NonlinearProblem problem;
  SolverConfig solver;
  std::string output_prefix = "solution";
  bool svg = false;
};

SolveSettings solve_settings(const KeyValueConfig& cfg);

double parse_number(const std::string& text, const std::string& what);

}  // namespace greenbvp::cli
