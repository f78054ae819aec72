#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace greenbvp::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (t.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InputError(what + ": not a finite number: '" + text + "'");
  }
  return v;
}

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Strip comments that are not inside quotes.
    bool quoted = false;
    std::string kept;
    for (char ch : line) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      kept.push_back(ch);
    }
    if (quoted) throw InputError("config line " + std::to_string(lineno) + ": unterminated quote");
    kept = trim(kept);
    if (kept.empty()) continue;
    const auto eq = kept.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(kept.substr(0, eq));
    std::string value = trim(kept.substr(eq + 1));
    if (key.empty()) throw InputError("config line " + std::to_string(lineno) + ": empty key");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (cfg.values_.count(key)) {
      throw InputError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::require(const std::string& key) const {
  auto v = get(key);
  if (!v) throw InputError("config: missing required key '" + key + "'");
  return *v;
}

double KeyValueConfig::number(const std::string& key) const {
  return parse_number(require(key), "config key '" + key + "'");
}

double KeyValueConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::size_t KeyValueConfig::count_or(const std::string& key, std::size_t fallback) const {
  if (!has(key)) return fallback;
  const double v = number(key);
  if (v < 0 || v != std::floor(v) || v > 1e9) {
    throw InputError("config key '" + key + "' must be a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> KeyValueConfig::number_list(const std::string& key) const {
  std::vector<double> out;
  std::istringstream in(require(key));
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item, "config key '" + key + "'"));
  if (out.empty()) throw InputError("config key '" + key + "' is empty");
  return out;
}

void KeyValueConfig::check_keys(const std::vector<std::string>& known) const {
  for (const auto& [k, v] : values_) {
    if (std::find(known.begin(), known.end(), k) == known.end()) {
      throw InputError("config: unknown key '" + k + "'");
    }
  }
}

SolveSettings solve_settings(const KeyValueConfig& cfg) {
  cfg.check_keys({"gamma", "lambda", "f", "side", "a", "b", "grid_n", "tol", "max_iter",
                  "min_norm", "init_amplitudes", "anderson_depth", "newton_damping",
                  "nodes_per_cell", "fd_residual_tol", "output", "svg"});
  const ProblemParams params(cfg.number("gamma"), cfg.number("lambda"));
  const Expression f = parse(cfg.require("f"));
  const std::string side = cfg.get("side").value_or("right");
  IntegralEnd end;
  if (side == "right") {
    end = IntegralEnd::right;
  } else if (side == "left") {
    end = IntegralEnd::left;
  } else {
    throw InputError("config: side must be 'left' or 'right'");
  }
  const bool right = end == IntegralEnd::right;
  const double a = cfg.number_or("a", right ? 0.5 : 0.0);
  const double b = cfg.number_or("b", right ? 1.0 : 0.5);

  SolverConfig s;
  s.tol = cfg.number_or("tol", s.tol);
  s.max_iter = cfg.count_or("max_iter", s.max_iter);
  s.min_norm = cfg.number_or("min_norm", s.min_norm);
  if (cfg.has("init_amplitudes")) s.init_amplitudes = cfg.number_list("init_amplitudes");
  s.grid_n = cfg.count_or("grid_n", s.grid_n);
  s.anderson_depth = cfg.count_or("anderson_depth", s.anderson_depth);
  s.newton_damping = cfg.number_or("newton_damping", s.newton_damping);
  s.nodes_per_cell = cfg.count_or("nodes_per_cell", s.nodes_per_cell);
  s.fd_residual_tol = cfg.number_or("fd_residual_tol", s.fd_residual_tol);
  if (s.grid_n < 11) throw InputError("config: grid_n must be at least 11");
  if (s.nodes_per_cell < 1 || s.nodes_per_cell > 64) throw InputError("config: nodes_per_cell must be in [1, 64]");

  SolveSettings out{NonlinearProblem(params, f, end, a, b), s};
  out.output_prefix = cfg.get("output").value_or("solution");
  const std::string svg = cfg.get("svg").value_or("false");
  if (svg != "true" && svg != "false") throw InputError("config: svg must be true or false");
  out.svg = svg == "true";
  return out;
}

}  // namespace greenbvp::cli
