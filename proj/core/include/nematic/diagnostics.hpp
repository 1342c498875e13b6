#pragma once

#include <vector>

#include "nematic/fields.hpp"
#include "nematic/mesh.hpp"
#include "nematic/scheme.hpp"

namespace nematic {

/// Discrete energy and the dissipation terms of one accepted step.
struct EnergyRecord {
  int step = 0;
  double time = 0.0;
  double kinetic = 0.0;     // (1/2) ||u||^2, end-of-step velocity
  double elastic = 0.0;     // (lambda/2) |d|_{H1}^2
  double penalty = 0.0;     // lambda * integral of the truncated potential
  double total = 0.0;
  double grad_u_norm = 0.0;  // |u_tilde|_{H1}
  double w_norm = 0.0;       // ||w||_{L2}
  double d_inf = 0.0;        // max nodal |d|
};

EnergyRecord energies(const SimState& state, const Mesh& mesh,
                      const SimParams& params);

struct DecayAudit {
  bool pass = true;
  int first_violation = -1;   // step index n of the first failing increment
  double worst_excess = 0.0;  // max over n of lhs_n - eta * E0
};

/// Checks the per-step energy inequality
///   E^{n+1} - E^n + (k/2)(nu |u_tilde^{n+1}|_1^2 + lambda gamma ||w^{n+1}||^2) <= eta E^0
/// for every consecutive pair of records.
DecayAudit energy_decay_audit(const std::vector<EnergyRecord>& records,
                              const SimParams& params, double eta = 1e-8);

}  // namespace nematic
