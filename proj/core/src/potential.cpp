#include "nematic/potential.hpp"

#include <cmath>

#include "nematic/quadrature.hpp"

namespace nematic {

double F_tilde(Vec2 d, PenaltyParams eps) {
  const double e2 = eps.epsilon * eps.epsilon;
  const double r2 = dot(d, d);
  if (r2 <= 1.0) {
    const double t = r2 - 1.0;
    return t * t / (4.0 * e2);
  }
  const double t = std::sqrt(r2) - 1.0;
  return t * t / e2;
}

Vec2 f_tilde(Vec2 d, PenaltyParams eps) {
  const double e2 = eps.epsilon * eps.epsilon;
  const double r2 = dot(d, d);
  if (r2 <= 1.0) return ((r2 - 1.0) / e2) * d;
  const double r = std::sqrt(r2);
  return (2.0 * (r - 1.0) / (e2 * r)) * d;
}

double penalty_energy(const P1VectorField& d, PenaltyParams eps, const Mesh& mesh) {
  static const QuadratureRule rule = quadrature(4);
  double acc = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Vec2 d0 = d.at(t[0]), d1 = d.at(t[1]), d2 = d.at(t[2]);
    double elem = 0.0;
    for (int q = 0; q < rule.n_points(); ++q) {
      const double* l = rule.bary(q);
      const Vec2 dq = l[0] * d0 + l[1] * d1 + l[2] * d2;
      elem += rule.weights[q] * F_tilde(dq, eps);
    }
    acc += mesh.element_area[e] * elem;
  }
  return acc;
}

}  // namespace nematic
