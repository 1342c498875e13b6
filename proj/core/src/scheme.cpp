#include "nematic/scheme.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nematic/quadrature.hpp"
#include "nematic/solvers.hpp"

namespace nematic {

namespace {

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void subtract_mean(std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

}  // namespace

void SimParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("SimParams: ") + name + " must be positive");
  };
  positive(nu, "nu");
  positive(lambda, "lambda");
  positive(gamma, "gamma");
  positive(eps, "eps");
  positive(k, "k");
  positive(S, "S");
  positive(T, "T");
  positive(lin_tol, "lin_tol");
  positive(delta1, "delta1");
  positive(delta2, "delta2");
  positive(delta3, "delta3");
  if (k > T) throw std::invalid_argument("SimParams: k must not exceed T");
}

StabilityReport check_h4(const Mesh& mesh, const SimParams& params) {
  StabilityReport r;
  const double h = mesh.h_max;
  const double eps = params.eps;
  r.r1 = params.k / (h * eps * eps);
  r.r2 = params.k / (std::pow(h, 1.5) * eps);
  r.r3 = h / eps;
  r.pass1 = r.r1 <= params.delta1;
  r.pass2 = r.r2 <= params.delta2;
  r.pass3 = r.r3 <= params.delta3;
  if (params.h4_mode == H4Mode::Fail && !r.all_pass())
    throw std::invalid_argument("check_h4: discretization constraint violated");
  return r;
}

EOSVelocity end_of_step_velocity(const P1VectorField& u_tilde,
                                 const P1ScalarField& p, double k,
                                 const Mesh& mesh) {
  EOSVelocity u;
  u.tilde = u_tilde;
  u.correction = P0VectorField::zeros(mesh);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const Vec2 gp = element_gradient(p, mesh, e);
    u.correction.set(e, {-k * gp[0], -k * gp[1]});
  }
  return u;
}

Stepper::Stepper(const Mesh& mesh, const SimParams& params)
    : mesh_(mesh), params_(params), patterns_(mesh) {
  params_.validate();

  const int nv = mesh.n_vertices();
  velocity_fixed_.assign(2 * nv, 0);
  for (int v = 0; v < nv; ++v)
    if (mesh.boundary_vertex[v]) velocity_fixed_[2 * v] = velocity_fixed_[2 * v + 1] = 1;

  mass_u_ = assemble_mass_p1(mesh, 2, &patterns_);
  stiff_d_ = assemble_stiffness_p1(mesh, 2, &patterns_);
  visc_base_ = stiff_d_;  // same kernel as L_u
  for (size_t s = 0; s < visc_base_.values.size(); ++s)
    visc_base_.values[s] = mass_u_.values[s] / params_.k + params_.nu * visc_base_.values[s];

  SparseMatrix stiff_p = assemble_stiffness_p1(mesh, 1, &patterns_);
  pressure_op_ = assemble_Jp(mesh, params_.S, params_.nu, &patterns_);
  for (size_t s = 0; s < pressure_op_.values.size(); ++s)
    pressure_op_.values[s] += params_.k * stiff_p.values[s];
}

SimState Stepper::initialize(const std::function<Vec2(double, double)>& d0,
                             const std::function<Vec2(double, double)>& u0) const {
  SimState state;
  state.d = interpolate_nodal(d0, mesh_);
  state.u_tilde = P1VectorField::zeros(mesh_);
  state.p = P1ScalarField::zeros(mesh_);
  state.w = P0VectorField::zeros(mesh_);

  // load (u0, phi) with degree-2 quadrature, boundary dofs eliminated
  const QuadratureRule rule = quadrature(2);
  std::vector<double> b(2 * static_cast<size_t>(mesh_.n_vertices()), 0.0);
  for (int e = 0; e < mesh_.n_triangles(); ++e) {
    const int* t = mesh_.tri(e);
    const Vec2 p0 = mesh_.vertex(t[0]), p1 = mesh_.vertex(t[1]), p2 = mesh_.vertex(t[2]);
    for (int q = 0; q < rule.n_points(); ++q) {
      const double* l = rule.bary(q);
      const Vec2 x = l[0] * p0 + l[1] * p1 + l[2] * p2;
      const Vec2 u = u0(x[0], x[1]);
      for (int i = 0; i < 3; ++i) {
        const double wl = rule.weights[q] * mesh_.element_area[e] * l[i];
        b[2 * t[i]] += wl * u[0];
        b[2 * t[i] + 1] += wl * u[1];
      }
    }
  }
  for (size_t i = 0; i < b.size(); ++i)
    if (velocity_fixed_[i]) b[i] = 0.0;
  if (vec_norm(b) == 0.0) return state;  // zero data solves the system

  // stabilized projection of u0: eliminate u from
  //   M u + B p = b,  B^T u = J p   (u boundary-zero, p zero-mean)
  // giving the SPD zero-mean system (B^T M^{-1} B + J) p = B^T M^{-1} b.
  SparseMatrix mass = mass_u_;
  apply_dirichlet(mass, velocity_fixed_);
  SparseMatrix B = assemble_grad_p(mesh_);
  for (int i = 0; i < B.n_rows; ++i)
    if (velocity_fixed_[i])
      for (int s = B.row_offsets[i]; s < B.row_offsets[i + 1]; ++s) B.values[s] = 0.0;
  SparseMatrix Bt = transpose(B);
  SparseMatrix J = assemble_Jp(mesh_, params_.S, params_.nu, &patterns_);

  const double mass_tol = 0.1 * params_.lin_tol;
  auto mass_inverse = [&](const std::vector<double>& rhs) {
    return cg_solve(mass, rhs, mass_tol, -1, false);
  };

  auto schur_apply = [&](std::span<const double> p, std::span<double> out) {
    std::vector<double> pv(p.begin(), p.end());
    std::vector<double> Bp = spmv(B, pv);
    std::vector<double> MiBp = mass_inverse(Bp);
    std::vector<double> r = spmv(Bt, MiBp);
    std::vector<double> Jp = spmv(J, pv);
    for (size_t i = 0; i < r.size(); ++i) out[i] = r[i] + Jp[i];
  };

  std::vector<double> Mib = mass_inverse(b);
  std::vector<double> rhs = spmv(Bt, Mib);
  subtract_mean(rhs);  // consistency up to roundoff
  std::vector<double> p = cg_solve_op(schur_apply, rhs, params_.lin_tol, -1, true);

  std::vector<double> Bp = spmv(B, p);
  for (size_t i = 0; i < b.size(); ++i) Bp[i] = b[i] - Bp[i];
  std::vector<double> u = mass_inverse(Bp);
  for (size_t i = 0; i < u.size(); ++i)
    if (velocity_fixed_[i]) u[i] = 0.0;

  state.u_tilde.values = std::move(u);
  state.p.values = std::move(p);
  return state;
}

std::pair<P1VectorField, P0VectorField> Stepper::director_step(
    const SimState& state) const {
  const double k = params_.k;
  const int nt = mesh_.n_triangles();

  const BlockDiag2x2 Ew =
      assemble_Ew(mesh_, state.d, params_.lambda, params_.gamma, k);
  const std::vector<double> Fw =
      assemble_Fw(mesh_, state.d, state.u_tilde, state.p, k);
  const std::vector<double> Feps =
      assemble_Feps(mesh_, state.d, PenaltyParams{params_.eps});

  // Schur operator: L_d + (1/k) M_wd Ew^{-1} M_dw, assembled explicitly on
  // the stiffness sparsity (the coupling is element-local).
  SparseMatrix A = stiff_d_;
  std::vector<Vec2> bracket(nt);  // Ew^{-1} [ (1/k) M_dw D^n - Fw ] per element
  for (int e = 0; e < nt; ++e) {
    const int* t = mesh_.tri(e);
    const double m = mesh_.element_area[e] / 3.0;  // M_dw element weight
    const Mat2& Einv = Ew.inverse(e);
    const double c = m * m / k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int ca = 0; ca < 2; ++ca)
          for (int cb = 0; cb < 2; ++cb)
            A.values[patterns_.vector_slot(e, i, ca, j, cb)] +=
                c * Einv[2 * ca + cb];
    const Vec2 dsum = state.d.at(t[0]) + state.d.at(t[1]) + state.d.at(t[2]);
    const Vec2 q = {m * dsum[0] / k - Fw[2 * e], m * dsum[1] / k - Fw[2 * e + 1]};
    bracket[e] = Ew.apply_inverse(e, q);
  }

  std::vector<double> rhs(2 * static_cast<size_t>(mesh_.n_vertices()), 0.0);
  for (int e = 0; e < nt; ++e) {
    const int* t = mesh_.tri(e);
    const double m = mesh_.element_area[e] / 3.0;
    for (int i = 0; i < 3; ++i) {
      rhs[2 * t[i]] += m * bracket[e][0];
      rhs[2 * t[i] + 1] += m * bracket[e][1];
    }
  }
  for (size_t i = 0; i < rhs.size(); ++i) rhs[i] -= Feps[i];

  std::vector<double> d_next =
      cg_solve(A, rhs, params_.lin_tol, params_.max_iter_factor * A.n_rows,
               false, &state.d.values);

  P0VectorField w_next = P0VectorField::zeros(mesh_);
  for (int e = 0; e < nt; ++e) {
    const int* t = mesh_.tri(e);
    const double m = mesh_.element_area[e] / 3.0;
    Vec2 diff = {0, 0};
    for (int i = 0; i < 3; ++i) {
      diff[0] += state.d.values[2 * t[i]] - d_next[2 * t[i]];
      diff[1] += state.d.values[2 * t[i] + 1] - d_next[2 * t[i] + 1];
    }
    const Vec2 q = {m * diff[0] / k - Fw[2 * e], m * diff[1] / k - Fw[2 * e + 1]};
    w_next.set(e, Ew.apply_inverse(e, q));
  }
  return {P1VectorField{std::move(d_next)}, std::move(w_next)};
}

P1VectorField Stepper::velocity_step(const SimState& state,
                                     const P0VectorField& w_next) const {
  const int n = 2 * mesh_.n_vertices();
  SparseMatrix A = assemble_convection(mesh_, state.u_tilde, &patterns_);
  for (size_t s = 0; s < A.values.size(); ++s) A.values[s] += visc_base_.values[s];
  apply_dirichlet(A, velocity_fixed_);

  std::vector<double> rhs = spmv(mass_u_, state.u_tilde.values);
  for (double& v : rhs) v /= params_.k;
  const std::vector<double> Fu = assemble_Fu(mesh_, state.p);
  for (int i = 0; i < n; ++i) rhs[i] -= Fu[i];
  // elastic force lambda E_u w^{n+1}
  for (int e = 0; e < mesh_.n_triangles(); ++e) {
    const int* t = mesh_.tri(e);
    const Mat2 G = element_gradient(state.d, mesh_, e);
    const Vec2 f = params_.lambda * (mesh_.element_area[e] / 3.0) *
                   mattvec(G, w_next.at(e));
    for (int i = 0; i < 3; ++i) {
      rhs[2 * t[i]] += f[0];
      rhs[2 * t[i] + 1] += f[1];
    }
  }
  for (int i = 0; i < n; ++i)
    if (velocity_fixed_[i]) rhs[i] = 0.0;

  // a state at rest produces a roundoff-level rhs; keep it exactly at rest
  const double scale =
      (1.0 / params_.k) * (1.0 + vec_norm(state.u_tilde.values)) +
      vec_norm(Fu) + 1.0;
  if (vec_norm(rhs) <= 1e-14 * scale) return P1VectorField::zeros(mesh_);

  std::vector<double> u;
  try {
    u = bicgstab_solve(A, rhs, params_.lin_tol, params_.max_iter_factor * n,
                       &state.u_tilde.values);
  } catch (const SolverError&) {
    if (n <= 2000) {
      u = dense_solve(dense_from_csr(A), rhs);
    } else {
      throw;
    }
  }
  for (int i = 0; i < n; ++i)
    if (velocity_fixed_[i]) u[i] = 0.0;
  return P1VectorField{std::move(u)};
}

P1ScalarField Stepper::pressure_step(const P1VectorField& u_tilde_next) const {
  std::vector<double> rhs = assemble_Fp(mesh_, u_tilde_next);
  for (double& v : rhs) v = -v;

  const double scale = 1.0 + vec_norm(u_tilde_next.values);
  if (vec_norm(rhs) <= 1e-14 * scale) return P1ScalarField::zeros(mesh_);

  const double rsum = std::accumulate(rhs.begin(), rhs.end(), 0.0);
  if (std::abs(rsum) >
      1e-10 * std::sqrt(static_cast<double>(rhs.size())) * vec_norm(rhs))
    throw std::invalid_argument(
        "pressure_step: inconsistent right-hand side (boundary contamination)");

  std::vector<double> p = cg_solve(pressure_op_, rhs, params_.lin_tol,
                                   params_.max_iter_factor * pressure_op_.n_rows,
                                   true);
  return P1ScalarField{std::move(p)};
}

void Stepper::advance(SimState& state) const {
  auto [d_next, w_next] = director_step(state);
  P1VectorField u_next = velocity_step(state, w_next);
  P1ScalarField p_next = pressure_step(u_next);
  state.d = std::move(d_next);
  state.u_tilde = std::move(u_next);
  state.p = std::move(p_next);
  state.w = std::move(w_next);
  state.step += 1;
  state.time = state.step * params_.k;
}

}  // namespace nematic
