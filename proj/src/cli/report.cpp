#include "cli/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/config.hpp"
#include "greenbvp/error.hpp"

namespace greenbvp::cli {

std::string format_number(double x) { return fmt::format("{:.17g}", x); }

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  std::string line;
  for (const auto& row : rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) line.push_back(',');
      line += format_number(row[i]);
    }
    line.push_back('\n');
    out << line;
  }
}

void write_profile_csv(std::ostream& out, const SolutionProfile& profile) {
  std::vector<std::vector<double>> rows;
  rows.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    rows.push_back({profile.grid()[i], profile.values()[i]});
  }
  write_csv(out, {"t", "u"}, rows);
}

SolutionProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read solution file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InputError("solution file '" + path + "' is empty");
  std::vector<double> t;
  std::vector<double> u;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw InputError("solution file line " + std::to_string(lineno) + ": expected t,u");
    }
    const std::string where = "solution file line " + std::to_string(lineno);
    t.push_back(parse_number(line.substr(0, comma), where));
    u.push_back(parse_number(line.substr(comma + 1), where));
  }
  return SolutionProfile(std::move(t), std::move(u));
}

nlohmann::ordered_json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::ordered_json to_json(const ResonanceReport& r) {
  return {{"resonant", r.resonant},
          {"branch", to_string(r.branch)},
          {"k", r.k},
          {"distance", number(r.distance)}};
}

nlohmann::ordered_json to_json(const ResidualReport& r) {
  return {{"ode_residual_inf", number(r.ode_residual_inf)},
          {"bc_left", number(r.bc_left)},
          {"bc_right", number(r.bc_right)},
          {"integral_value", number(r.integral_value)}};
}

nlohmann::ordered_json to_json(const ConeMembership& c) {
  return {{"member", c.member}, {"margin", number(c.margin)}, {"nonneg", c.nonneg}};
}

nlohmann::ordered_json to_json(const GrowthReport& g) {
  return {{"classification", to_string(g.classification)},
          {"f0_est", number(g.f0_est)},
          {"f0_diverges", g.f0_diverges},
          {"f_inf_est", number(g.f_inf_est)},
          {"f_inf_diverges", g.f_inf_diverges},
          {"f_sup0_est", number(g.f_sup0_est)},
          {"f_sup0_vanishes", g.f_sup0_vanishes},
          {"f_sup_inf_est", number(g.f_sup_inf_est)},
          {"f_sup_inf_vanishes", g.f_sup_inf_vanishes}};
}

nlohmann::ordered_json to_json(const SignClassification& s) {
  return {{"sign", to_string(s.sign)}, {"numerical", s.numerical}, {"lambda_zero", s.lambda_zero}};
}

}  // namespace greenbvp::cli
