#include "nematic/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "nematic/potential.hpp"

namespace nematic {

EnergyRecord energies(const SimState& state, const Mesh& mesh,
                      const SimParams& params) {
  EnergyRecord r;
  r.step = state.step;
  r.time = state.time;

  const EOSVelocity u =
      end_of_step_velocity(state.u_tilde, state.p, params.k, mesh);
  const double unorm = norm(u, mesh, NormKind::L2);
  r.kinetic = 0.5 * unorm * unorm;

  const double dh1 = norm(state.d, mesh, NormKind::H1Semi);
  r.elastic = 0.5 * params.lambda * dh1 * dh1;

  r.penalty =
      params.lambda * penalty_energy(state.d, PenaltyParams{params.eps}, mesh);
  r.total = r.kinetic + r.elastic + r.penalty;

  r.grad_u_norm = norm(state.u_tilde, mesh, NormKind::H1Semi);
  r.w_norm = norm(state.w, mesh, NormKind::L2);
  r.d_inf = norm(state.d, mesh, NormKind::LinfNodal);
  return r;
}

DecayAudit energy_decay_audit(const std::vector<EnergyRecord>& records,
                              const SimParams& params, double eta) {
  DecayAudit audit;
  if (records.size() < 2) return audit;
  const double budget = eta * records.front().total;
  for (size_t n = 0; n + 1 < records.size(); ++n) {
    const EnergyRecord& next = records[n + 1];
    const double dissipation =
        0.5 * params.k *
        (params.nu * next.grad_u_norm * next.grad_u_norm +
         params.lambda * params.gamma * next.w_norm * next.w_norm);
    const double lhs = next.total - records[n].total + dissipation;
    audit.worst_excess = std::max(audit.worst_excess, lhs - budget);
    if (lhs > budget && audit.first_violation < 0) {
      audit.pass = false;
      audit.first_violation = static_cast<int>(n);
    }
  }
  return audit;
}

}  // namespace nematic
