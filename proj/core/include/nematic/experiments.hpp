#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nematic/config.hpp"
#include "nematic/diagnostics.hpp"
#include "nematic/types.hpp"

namespace nematic {

/// Initial director of the defect-annihilation problem:
/// regularized normalization of (x^2 + y^2 - 1/4, y), placing a +1/-1
/// defect pair at (+-1/2, 0).
Vec2 annihilation_d0(double x, double y);
/// Initial director of the temporal-accuracy study:
/// (sin a, cos a) with a = pi (cos(pi x) + sin(pi y)).
Vec2 convergence_d0(double x, double y);

struct AnnihilationResult {
  double T_A = 0.0;          // earliest time of maximal kinetic energy
  double peak_kinetic = 0.0;
  double max_d_inf = 0.0;
  std::vector<EnergyRecord> history;
  std::vector<double> snapshot_times_written;
};

/// Runs the defect-annihilation simulation per config. If output_dir is
/// nonempty, writes energies.csv, one VTK snapshot per configured time
/// (first step reaching it), and summary.json.
AnnihilationResult annihilation_experiment(const RunConfig& config);

struct RateRow {
  double k = 0.0;
  double err_d_l2 = 0.0, err_d_h1 = 0.0;
  double err_u_l2 = 0.0, err_u_h1 = 0.0;
  double err_p_l2 = 0.0;
  // log2(e_i / e_{i+1}) against the next (halved-k) row; NaN on the last row
  double rate_d_l2 = 0.0, rate_d_h1 = 0.0;
  double rate_u_l2 = 0.0, rate_u_h1 = 0.0;
  double rate_p_l2 = 0.0;
};

struct RateTable {
  double k_ref = 0.0;
  std::vector<RateRow> rows;  // coarsest first
};

/// Temporal-accuracy study: runs k in {1e-3, ..., 6.25e-5} plus a reference
/// at k_min/16 on one mesh, compares final-time fields, tabulates rates.
/// Velocity errors compare the intermediate (pre-projection) velocity.
RateTable convergence_experiment(const RunConfig& config);

struct SweepCell {
  double k = 0.0;
  int nx = 0;
  double h = 0.0;
  double r2 = 0.0;  // k / (h^{3/2} eps)
  bool stable = false;
  double T_A = 0.0;           // stable cells only
  double peak_kinetic = 0.0;  // stable cells only
};

/// Time-step/mesh stability sweep on the annihilation problem:
/// k in {1e-1 .. 1e-4} by nx in {31, 41, 61, 121}. A cell is stable iff the
/// total energy stays finite and at most 10x its initial value through T.
/// Cells run concurrently when LC_SOLVER_THREADS > 1 (result order is fixed).
std::vector<SweepCell> stability_sweep(const RunConfig& config);

/// LC_SOLVER_THREADS as an integer >= 1; 1 when unset or invalid.
int solver_threads();

std::string annihilation_summary_json(const AnnihilationResult& r);
std::string convergence_summary_json(const RateTable& t);
std::string stability_summary_json(const std::vector<SweepCell>& cells);

}  // namespace nematic
