#pragma once

#include <string>
#include <vector>

#include "nematic/scheme.hpp"

namespace nematic {

/// Full description of one run: domain, mesh resolution, physical and
/// numerical parameters, experiment selection, and output location.
/// Defaults reproduce the defect-annihilation setup.
struct RunConfig {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  int nx = 41, ny = 41;
  double nu = 1.0, lambda = 1.0, gamma = 1.0;
  double eps = 0.05, k = 1e-3, T = 0.6, S = 1.0;
  double lin_tol = 1e-10;
  double delta1 = 10.0, delta2 = 6.0, delta3 = 1.5;
  std::string h4_mode = "warn";  // "warn" | "fail"
  std::string experiment = "annihilation";  // "annihilation" | "convergence" | "stability"
  std::string output_dir = "out";
  std::vector<double> snapshot_times = {0.1, 0.2, 0.3, 0.6};
  unsigned seed = 0;  // used by property tests only

  SimParams to_sim_params() const;
  void validate() const;
};

/// Parses a strict-JSON config. Unknown keys are rejected; omitted keys take
/// the defaults above. Throws std::invalid_argument naming the offending key,
/// or a parse error with position for malformed input.
RunConfig parse_config(const std::string& text);

/// Serializes every field; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Defaults for the temporal-accuracy study (unit-width strip, short horizon).
RunConfig default_convergence_config();
/// Defaults for the time-step/mesh stability sweep.
RunConfig default_stability_config();

}  // namespace nematic
