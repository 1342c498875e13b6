// Command-line driver for the nematic liquid-crystal flow solver.
//
// Subcommands: run <config>, annihilation, convergence, stability,
// mesh-info <config>. Progress goes to stderr; machine-readable artifacts
// (CSV, VTK, summary JSON) go to the configured output directory.
// Exit codes: 0 success, 1 validation/usage error, 2 solver failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nematic/config.hpp"
#include "nematic/experiments.hpp"
#include "nematic/io.hpp"
#include "nematic/solvers.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_annihilation(const nematic::RunConfig& config) {
  const nematic::AnnihilationResult r = nematic::annihilation_experiment(config);
  std::cerr << "annihilation time T_A = " << r.T_A
            << ", peak kinetic = " << r.peak_kinetic
            << ", max |d| = " << r.max_d_inf << "\n";
  std::cerr << "artifacts written to " << config.output_dir << "\n";
  return 0;
}

int run_convergence(const nematic::RunConfig& config) {
  const nematic::RateTable t = nematic::convergence_experiment(config);
  std::cerr << "k          rate(d,L2)  rate(u,L2)  rate(p,L2)\n";
  for (const nematic::RateRow& row : t.rows)
    std::cerr << row.k << "  " << row.rate_d_l2 << "  " << row.rate_u_l2
              << "  " << row.rate_p_l2 << "\n";
  std::cerr << "summary written to " << config.output_dir << "\n";
  return 0;
}

int run_stability(const nematic::RunConfig& config) {
  const auto cells = nematic::stability_sweep(config);
  for (const nematic::SweepCell& c : cells)
    std::cerr << "k=" << c.k << " nx=" << c.nx << " r2=" << c.r2 << " "
              << (c.stable ? "stable" : "unstable") << "\n";
  std::cerr << "summary written to " << config.output_dir << "\n";
  return 0;
}

int run_config(const nematic::RunConfig& config) {
  if (config.experiment == "annihilation") return run_annihilation(config);
  if (config.experiment == "convergence") return run_convergence(config);
  return run_stability(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-element solver for nematic liquid-crystal flow"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* cmd_run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  cmd_run->add_option("config", config_path, "Path to the JSON config")->required();

  double opt_k = 1e-3, opt_eps = 0.05;
  int opt_nx = 41;
  std::string opt_out = "out";
  CLI::App* cmd_ann = app.add_subcommand("annihilation", "Defect-annihilation simulation");
  cmd_ann->add_option("--k", opt_k, "Time step");
  cmd_ann->add_option("--nx", opt_nx, "Cells per direction");
  cmd_ann->add_option("--eps", opt_eps, "Penalty parameter");
  cmd_ann->add_option("--out", opt_out, "Output directory");

  std::string conv_out = "out";
  CLI::App* cmd_conv = app.add_subcommand("convergence", "Temporal-accuracy study");
  cmd_conv->add_option("--out", conv_out, "Output directory");

  std::string stab_out = "out";
  CLI::App* cmd_stab = app.add_subcommand("stability", "Time-step/mesh stability sweep");
  cmd_stab->add_option("--out", stab_out, "Output directory");

  std::string mesh_config_path;
  CLI::App* cmd_mesh = app.add_subcommand("mesh-info", "Print mesh metrics for a config");
  cmd_mesh->add_option("config", mesh_config_path, "Path to the JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*cmd_run) {
      return run_config(nematic::parse_config(slurp(config_path)));
    }
    if (*cmd_ann) {
      nematic::RunConfig c;
      c.k = opt_k;
      c.nx = c.ny = opt_nx;
      c.eps = opt_eps;
      c.output_dir = opt_out;
      c.validate();
      return run_annihilation(c);
    }
    if (*cmd_conv) {
      nematic::RunConfig c = nematic::default_convergence_config();
      c.output_dir = conv_out;
      return run_convergence(c);
    }
    if (*cmd_stab) {
      nematic::RunConfig c = nematic::default_stability_config();
      c.output_dir = stab_out;
      return run_stability(c);
    }
    if (*cmd_mesh) {
      const nematic::RunConfig c = nematic::parse_config(slurp(mesh_config_path));
      const nematic::Mesh mesh =
          nematic::generate_rectangle_mesh(c.x0, c.x1, c.y0, c.y1, c.nx, c.ny);
      const nematic::MeshMetrics m = nematic::mesh_metrics(mesh);
      std::cout << "vertices " << m.n_vertices << "\ntriangles " << m.n_triangles
                << "\nh_max " << m.h_max << "\nh_min " << m.h_min
                << "\ntotal_area " << m.total_area << "\n";
      return 0;
    }
  } catch (const nematic::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
