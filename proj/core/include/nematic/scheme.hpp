#pragma once

#include <functional>
#include <utility>

#include "nematic/assembly.hpp"
#include "nematic/fields.hpp"
#include "nematic/mesh.hpp"

namespace nematic {

enum class H4Mode { Warn, Fail };

struct SimParams {
  double nu = 1.0;      // viscosity
  double lambda = 1.0;  // elasticity constant
  double gamma = 1.0;   // relaxation constant
  double eps = 0.05;    // penalty parameter
  double k = 1e-3;      // time step
  double S = 1.0;       // stabilization constant
  double T = 0.6;       // final time
  double lin_tol = 1e-10;     // relative residual for the linear solves
  int max_iter_factor = 10;   // max_iter = factor * n
  double delta1 = 10.0, delta2 = 6.0, delta3 = 1.5;
  H4Mode h4_mode = H4Mode::Warn;

  void validate() const;
};

struct SimState {
  int step = 0;
  double time = 0.0;
  P1VectorField d;        // director
  P1VectorField u_tilde;  // intermediate velocity, zero on the boundary
  P1ScalarField p;        // pressure, zero mean
  P0VectorField w;        // last auxiliary variable (diagnostics only)
};

struct StabilityReport {
  double r1 = 0.0;  // k / (h eps^2)
  double r2 = 0.0;  // k / (h^{3/2} eps)
  double r3 = 0.0;  // h / eps
  bool pass1 = false, pass2 = false, pass3 = false;
  bool all_pass() const { return pass1 && pass2 && pass3; }
};

StabilityReport check_h4(const Mesh& mesh, const SimParams& params);

/// Composite end-of-step velocity u = u_tilde - k grad p.
EOSVelocity end_of_step_velocity(const P1VectorField& u_tilde,
                                 const P1ScalarField& p, double k,
                                 const Mesh& mesh);

/// Decoupled projection time stepper: director Schur solve, velocity solve,
/// pressure solve, end-of-step update. Constant operators are assembled once
/// at construction; one instance drives one simulation.
class Stepper {
 public:
  Stepper(const Mesh& mesh, const SimParams& params);

  SimState initialize(const std::function<Vec2(double, double)>& d0,
                      const std::function<Vec2(double, double)>& u0) const;

  std::pair<P1VectorField, P0VectorField> director_step(const SimState& state) const;
  P1VectorField velocity_step(const SimState& state, const P0VectorField& w_next) const;
  P1ScalarField pressure_step(const P1VectorField& u_tilde_next) const;

  /// One full step: director -> velocity -> pressure. On failure the state is
  /// left unchanged.
  void advance(SimState& state) const;

  const Mesh& mesh() const { return mesh_; }
  const SimParams& params() const { return params_; }
  const DofPatterns& patterns() const { return patterns_; }

 private:
  const Mesh& mesh_;
  SimParams params_;
  DofPatterns patterns_;
  std::vector<unsigned char> velocity_fixed_;  // per velocity dof
  SparseMatrix mass_u_;        // vector P1 mass
  SparseMatrix visc_base_;     // (1/k) M_u + nu L_u, Dirichlet not applied
  SparseMatrix stiff_d_;       // vector P1 stiffness
  SparseMatrix pressure_op_;   // k L_p + J_p
};

}  // namespace nematic
