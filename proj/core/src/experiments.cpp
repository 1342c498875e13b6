#include "nematic/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "nematic/io.hpp"
#include "nematic/solvers.hpp"

namespace nematic {

using json = nlohmann::json;

Vec2 annihilation_d0(double x, double y) {
  const Vec2 dt = {x * x + y * y - 0.25, y};
  const double s = std::sqrt(dot(dt, dt) + 0.05 * 0.05);
  return {dt[0] / s, dt[1] / s};
}

Vec2 convergence_d0(double x, double y) {
  const double a = M_PI * (std::cos(M_PI * x) + std::sin(M_PI * y));
  return {std::sin(a), std::cos(a)};
}

int solver_threads() {
  const char* env = std::getenv("LC_SOLVER_THREADS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n >= 1 ? n : 1;
}

namespace {

Vec2 zero_velocity(double, double) { return {0.0, 0.0}; }

struct RunHistory {
  std::vector<EnergyRecord> history;
  double max_d_inf = 0.0;
  bool finite = true;
  double energy_bound_hit = -1.0;  // time of the first blow-up sample, if any
};

/// Runs the annihilation problem to T, recording energies every step.
/// Stops early once the total energy exceeds bound_factor * E0 or turns
/// non-finite (bound_factor <= 0 disables the early exit). The optional
/// snapshot callback fires at the first step reaching each requested time.
RunHistory run_annihilation(const Mesh& mesh, const SimParams& params,
                            double bound_factor,
                            const std::vector<double>& snapshot_times,
                            const std::function<void(const SimState&, double)>&
                                on_snapshot = nullptr) {
  Stepper stepper(mesh, params);
  SimState state = stepper.initialize(annihilation_d0, zero_velocity);

  RunHistory run;
  EnergyRecord rec = energies(state, mesh, params);
  run.history.push_back(rec);
  run.max_d_inf = rec.d_inf;
  const double e0 = rec.total;

  std::vector<double> pending = snapshot_times;
  std::sort(pending.begin(), pending.end());
  auto emit_snapshots = [&](const SimState& s) {
    while (!pending.empty() && s.time >= pending.front() - 1e-12) {
      if (on_snapshot) on_snapshot(s, pending.front());
      pending.erase(pending.begin());
    }
  };
  emit_snapshots(state);

  const int n_steps = static_cast<int>(std::llround(params.T / params.k));
  for (int n = 0; n < n_steps; ++n) {
    try {
      stepper.advance(state);
    } catch (const SolverError&) {
      run.finite = false;
      run.energy_bound_hit = state.time;
      return run;
    }
    rec = energies(state, mesh, params);
    run.history.push_back(rec);
    run.max_d_inf = std::max(run.max_d_inf, rec.d_inf);
    if (!std::isfinite(rec.total)) {
      run.finite = false;
      run.energy_bound_hit = rec.time;
      return run;
    }
    if (bound_factor > 0.0 && rec.total > bound_factor * e0) {
      run.energy_bound_hit = rec.time;
      return run;
    }
    emit_snapshots(state);
  }
  return run;
}

void locate_peak(const std::vector<EnergyRecord>& history, double& T_A,
                 double& peak) {
  peak = -1.0;
  T_A = 0.0;
  for (const EnergyRecord& r : history) {
    if (r.kinetic > peak) {  // strict: earliest sample wins ties
      peak = r.kinetic;
      T_A = r.time;
    }
  }
}

}  // namespace

AnnihilationResult annihilation_experiment(const RunConfig& config) {
  config.validate();
  const Mesh mesh =
      generate_rectangle_mesh(config.x0, config.x1, config.y0, config.y1,
                              config.nx, config.ny);
  const SimParams params = config.to_sim_params();
  const StabilityReport h4 = check_h4(mesh, params);
  if (!h4.all_pass())
    std::cerr << "warning: discretization ratios exceed thresholds (r1="
              << h4.r1 << ", r2=" << h4.r2 << ", r3=" << h4.r3 << ")\n";

  std::optional<OutputLock> lock;
  if (!config.output_dir.empty()) lock.emplace(config.output_dir);

  AnnihilationResult result;
  std::function<void(const SimState&, double)> snapshot;
  if (lock)
    snapshot = [&](const SimState& s, double t) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_t%.6g.vtk", t);
      write_vtk_snapshot(mesh, s, lock->dir() / name);
      result.snapshot_times_written.push_back(t);
    };
  RunHistory run =
      run_annihilation(mesh, params, -1.0, config.snapshot_times, snapshot);
  if (!run.finite)
    throw SolverError("annihilation run failed at t = " +
                          std::to_string(run.energy_bound_hit),
                      std::numeric_limits<double>::quiet_NaN());

  result.history = std::move(run.history);
  result.max_d_inf = run.max_d_inf;
  locate_peak(result.history, result.T_A, result.peak_kinetic);

  if (lock) {
    write_energy_csv(result.history, lock->dir() / "energies.csv");
    write_json(annihilation_summary_json(result), lock->dir() / "summary.json");
  }
  return result;
}

RateTable convergence_experiment(const RunConfig& config) {
  config.validate();
  const Mesh mesh =
      generate_rectangle_mesh(config.x0, config.x1, config.y0, config.y1,
                              config.nx, config.ny);
  const std::vector<double> ks = {1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5};
  const double k_ref = ks.back() / 16.0;

  auto run_to_T = [&](double k) {
    SimParams p = config.to_sim_params();
    p.k = k;
    const int n_steps = static_cast<int>(std::llround(p.T / k));
    Stepper stepper(mesh, p);
    SimState state = stepper.initialize(convergence_d0, zero_velocity);
    for (int n = 0; n < n_steps; ++n) stepper.advance(state);
    return state;
  };

  std::cerr << "reference run, k = " << k_ref << "\n";
  const SimState ref = run_to_T(k_ref);

  RateTable table;
  table.k_ref = k_ref;
  for (double k : ks) {
    std::cerr << "run, k = " << k << "\n";
    const SimState s = run_to_T(k);
    RateRow row;
    row.k = k;
    row.err_d_l2 = error_norm(s.d, ref.d, mesh, NormKind::L2);
    row.err_d_h1 = error_norm(s.d, ref.d, mesh, NormKind::H1Semi);
    row.err_u_l2 = error_norm(s.u_tilde, ref.u_tilde, mesh, NormKind::L2);
    row.err_u_h1 = error_norm(s.u_tilde, ref.u_tilde, mesh, NormKind::H1Semi);
    row.err_p_l2 = error_norm(s.p, ref.p, mesh, NormKind::L2);
    table.rows.push_back(row);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto rate = [](double a, double b) {
    return (a > 0.0 && b > 0.0) ? std::log2(a / b)
                                : std::numeric_limits<double>::quiet_NaN();
  };
  for (size_t i = 0; i < table.rows.size(); ++i) {
    RateRow& r = table.rows[i];
    if (i + 1 < table.rows.size()) {
      const RateRow& n = table.rows[i + 1];
      r.rate_d_l2 = rate(r.err_d_l2, n.err_d_l2);
      r.rate_d_h1 = rate(r.err_d_h1, n.err_d_h1);
      r.rate_u_l2 = rate(r.err_u_l2, n.err_u_l2);
      r.rate_u_h1 = rate(r.err_u_h1, n.err_u_h1);
      r.rate_p_l2 = rate(r.err_p_l2, n.err_p_l2);
    } else {
      r.rate_d_l2 = r.rate_d_h1 = r.rate_u_l2 = r.rate_u_h1 = r.rate_p_l2 = nan;
    }
  }

  if (!config.output_dir.empty()) {
    OutputLock lock(config.output_dir);
    write_json(convergence_summary_json(table), lock.dir() / "summary.json");
  }
  return table;
}

std::vector<SweepCell> stability_sweep(const RunConfig& config) {
  config.validate();
  const std::vector<double> ks = {1e-1, 1e-2, 1e-3, 1e-4};
  const std::vector<int> nxs = {31, 41, 61, 121};

  std::vector<SweepCell> cells(ks.size() * nxs.size());
  std::vector<Mesh> meshes;
  meshes.reserve(nxs.size());
  for (int nx : nxs)
    meshes.push_back(
        generate_rectangle_mesh(config.x0, config.x1, config.y0, config.y1, nx, nx));

  auto run_cell = [&](size_t idx) {
    const size_t ik = idx / nxs.size(), ih = idx % nxs.size();
    const Mesh& mesh = meshes[ih];
    SimParams p = config.to_sim_params();
    p.k = ks[ik];
    p.h4_mode = H4Mode::Warn;

    SweepCell& cell = cells[idx];
    cell.k = ks[ik];
    cell.nx = nxs[ih];
    cell.h = mesh.h_max;
    cell.r2 = p.k / (std::pow(mesh.h_max, 1.5) * p.eps);

    const RunHistory run = run_annihilation(mesh, p, 10.0, {});
    cell.stable = run.finite && run.energy_bound_hit < 0.0;
    if (cell.stable) locate_peak(run.history, cell.T_A, cell.peak_kinetic);
  };

  const int n_threads = std::min<int>(solver_threads(), static_cast<int>(cells.size()));
  if (n_threads <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) {
      std::cerr << "cell " << i + 1 << "/" << cells.size() << "\n";
      run_cell(i);
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < n_threads; ++t)
      workers.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1))
          run_cell(i);
      });
    for (std::thread& w : workers) w.join();
  }

  if (!config.output_dir.empty()) {
    OutputLock lock(config.output_dir);
    write_json(stability_summary_json(cells), lock.dir() / "summary.json");
  }
  return cells;
}

std::string annihilation_summary_json(const AnnihilationResult& r) {
  json j;
  j["experiment"] = "annihilation";
  j["T_A"] = r.T_A;
  j["peak_kinetic"] = r.peak_kinetic;
  j["max_d_inf"] = r.max_d_inf;
  j["initial_total_energy"] = r.history.empty() ? 0.0 : r.history.front().total;
  j["final_total_energy"] = r.history.empty() ? 0.0 : r.history.back().total;
  j["initial_elastic"] = r.history.empty() ? 0.0 : r.history.front().elastic;
  j["final_elastic"] = r.history.empty() ? 0.0 : r.history.back().elastic;
  j["steps"] = r.history.empty() ? 0 : r.history.back().step;
  j["snapshots"] = r.snapshot_times_written;
  return j.dump(2);
}

std::string convergence_summary_json(const RateTable& t) {
  json j;
  j["experiment"] = "convergence";
  j["k_ref"] = t.k_ref;
  j["rows"] = json::array();
  for (const RateRow& r : t.rows) {
    json row;
    row["k"] = r.k;
    row["err_d_l2"] = r.err_d_l2;
    row["err_d_h1"] = r.err_d_h1;
    row["err_u_l2"] = r.err_u_l2;
    row["err_u_h1"] = r.err_u_h1;
    row["err_p_l2"] = r.err_p_l2;
    auto put_rate = [&row](const char* key, double v) {
      if (std::isfinite(v))
        row[key] = v;
      else
        row[key] = nullptr;
    };
    put_rate("rate_d_l2", r.rate_d_l2);
    put_rate("rate_d_h1", r.rate_d_h1);
    put_rate("rate_u_l2", r.rate_u_l2);
    put_rate("rate_u_h1", r.rate_u_h1);
    put_rate("rate_p_l2", r.rate_p_l2);
    j["rows"].push_back(row);
  }
  return j.dump(2);
}

std::string stability_summary_json(const std::vector<SweepCell>& cells) {
  json j;
  j["experiment"] = "stability";
  j["cells"] = json::array();
  for (const SweepCell& c : cells) {
    json cell;
    cell["k"] = c.k;
    cell["nx"] = c.nx;
    cell["h"] = c.h;
    cell["r2"] = c.r2;
    cell["stable"] = c.stable;
    if (c.stable) {
      cell["T_A"] = c.T_A;
      cell["peak_kinetic"] = c.peak_kinetic;
    }
    j["cells"].push_back(cell);
  }
  return j.dump(2);
}

}  // namespace nematic
