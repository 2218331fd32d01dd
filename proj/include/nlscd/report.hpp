#pragma once

// JSON reports and CSV profiles. JSON documents share the top-level layout
// {verb, params, results, diagnostics, citations}; CSV profiles have the
// header r,phi,green,u and 17 significant digits.

#include "nlscd/grid.hpp"
#include "nlscd/solver.hpp"
#include "nlscd/spectral.hpp"
#include "nlscd/verify.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace nlscd::report {

using json = nlohmann::ordered_json;

/// %.17g, with inf / -inf / nan spelled out.
std::string format_double(double x);

void write_profile_csv(std::ostream& os, const grid::DecomposedState& u);
/// Columns r,G,Phi,F on the nodes of `grid`.
void write_kernel_csv(std::ostream& os, const specfun::GreenParams& gp, const grid::RadialGrid& grid,
                      const specfun::SpecFunConfig& cfg = {});

json params_json(const spectral::PhysParams& params);
json grid_json(const grid::GridSpec& spec);
json solve_json(const solver::SolveConfig& cfg);

json envelope(const std::string& verb, json params, json results, json diagnostics, json citations);

json spectrum_results(const spectral::SpectralReport& rep);
json spectrum_diagnostics(const spectral::SpectralReport& rep);

json ground_state_results(const solver::GroundStateReport& rep);
json ground_state_diagnostics(const solver::GroundStateReport& rep);
json cross_validation_json(const solver::CrossValidationReport& cv);

json check_json(const verify::CheckResult& c);
json verify_results(const verify::SuiteReport& rep);
json verify_diagnostics(const verify::SuiteReport& rep);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace nlscd::report
