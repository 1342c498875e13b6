#include <doctest.h>

#include <cmath>
#include <random>

#include "nematic/diagnostics.hpp"
#include "nematic/mesh.hpp"
#include "nematic/scheme.hpp"
#include "oracle.hpp"

using namespace nematic;

namespace {

SimState rest_state(const Mesh& mesh) {
  SimState s;
  s.d = P1VectorField::zeros(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v) s.d.set(v, {0, 1});
  s.u_tilde = P1VectorField::zeros(mesh);
  s.p = P1ScalarField::zeros(mesh);
  s.w = P0VectorField::zeros(mesh);
  return s;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("constant unit director at rest has zero energy") {
  const Mesh mesh = generate_rectangle_mesh(-1, 1, -1, 1, 4, 4);
  const SimParams params;
  const EnergyRecord r = energies(rest_state(mesh), mesh, params);
  CHECK(r.kinetic == 0.0);
  CHECK(r.elastic == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.penalty == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.total == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(r.grad_u_norm == 0.0);
  CHECK(r.w_norm == 0.0);
  CHECK(r.d_inf == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("total is the sum of the parts; kinetic uses the end-of-step velocity") {
  const Mesh mesh = generate_rectangle_mesh(0, 1, 0, 1, 3, 3);
  SimParams params;
  params.lambda = 1.7;
  std::mt19937 rng(41);
  SimState s = oracle::random_state(mesh, rng);
  const EnergyRecord r = energies(s, mesh, params);
  CHECK(r.total ==
        doctest::Approx(r.kinetic + r.elastic + r.penalty).epsilon(1e-14));

  const EOSVelocity u = end_of_step_velocity(s.u_tilde, s.p, params.k, mesh);
  const double l2 = norm(u, mesh, NormKind::L2);
  CHECK(r.kinetic == doctest::Approx(0.5 * l2 * l2).epsilon(1e-12));
  CHECK(r.kinetic ==
        doctest::Approx(0.5 * std::pow(oracle::quadrature_l2_norm(mesh, u), 2))
            .epsilon(1e-12));
  CHECK(r.grad_u_norm ==
        doctest::Approx(norm(s.u_tilde, mesh, NormKind::H1Semi)).epsilon(1e-13));
  CHECK(r.w_norm == doctest::Approx(norm(s.w, mesh, NormKind::L2)).epsilon(1e-13));
  CHECK(r.d_inf == doctest::Approx(norm(s.d, mesh, NormKind::LinfNodal)).epsilon(1e-14));
}

TEST_CASE("decay audit on synthetic histories") {
  const SimParams params;
  std::vector<EnergyRecord> h;
  for (int n = 0; n < 5; ++n) {
    EnergyRecord r;
    r.step = n;
    r.time = n * params.k;
    r.total = 10.0 - n;
    r.grad_u_norm = 0.1;
    r.w_norm = 0.1;
    h.push_back(r);
  }
  CHECK(energy_decay_audit(h, params).pass);

  // bump one step above the eta * E0 allowance
  std::vector<EnergyRecord> bad = h;
  bad[3].total = bad[2].total + 1.0;
  const DecayAudit a = energy_decay_audit(bad, params);
  CHECK(!a.pass);
  CHECK(a.first_violation == 2);
  CHECK(a.worst_excess > 0.9);

  // a rise within the eta allowance still passes
  std::vector<EnergyRecord> slight = h;
  slight[3].total = slight[2].total - params.k / 2 *
      (params.nu * 0.01 + params.lambda * params.gamma * 0.01) + 1e-9 * 10.0;
  CHECK(energy_decay_audit(slight, params).pass);

  CHECK(energy_decay_audit({h[0]}, params).pass);
  CHECK(energy_decay_audit({}, params).pass);
}

TEST_CASE("audit passes on an actual short simulation") {
  const Mesh mesh = generate_rectangle_mesh(-1, 1, -1, 1, 10, 10);
  SimParams params;
  params.eps = 0.2;
  const Stepper stepper(mesh, params);
  SimState s = stepper.initialize(
      [](double x, double y) {
        const Vec2 v = {x * x + y * y - 0.25, y};
        return (1.0 / std::sqrt(dot(v, v) + 0.0025)) * v;
      },
      [](double, double) { return Vec2{0, 0}; });
  std::vector<EnergyRecord> h;
  h.push_back(energies(s, mesh, params));
  for (int n = 0; n < 20; ++n) {
    stepper.advance(s);
    h.push_back(energies(s, mesh, params));
  }
  const DecayAudit a = energy_decay_audit(h, params);
  CHECK(a.pass);
  CHECK(a.first_violation == -1);
}

}  // TEST_SUITE
