#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "greenbvp/kernel.hpp"
#include "greenbvp/linear_solver.hpp"
#include "greenbvp/nonlinear_solver.hpp"
#include "greenbvp/profile.hpp"
#include "greenbvp/spectrum.hpp"

namespace greenbvp::cli {

// 17 significant digits, so output round-trips and is byte-stable.
std::string format_number(double x);

// Header row then one line per record.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_profile_csv(std::ostream& out, const SolutionProfile& profile);
// Reads a two-column t,u file with a header row.
SolutionProfile read_profile_csv(const std::string& path);

nlohmann::ordered_json to_json(const ResonanceReport& r);
nlohmann::ordered_json to_json(const ResidualReport& r);
nlohmann::ordered_json to_json(const ConeMembership& c);
nlohmann::ordered_json to_json(const GrowthReport& g);
nlohmann::ordered_json to_json(const SignClassification& s);

// Non-finite numbers become null.
nlohmann::ordered_json number(double x);

}  // namespace greenbvp::cli
