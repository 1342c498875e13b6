#pragma once

#include "nematic/fields.hpp"
#include "nematic/mesh.hpp"
#include "nematic/types.hpp"

namespace nematic {

struct PenaltyParams {
  double epsilon;  // penalty parameter, > 0
};

/// Truncated Ginzburg-Landau potential: quartic well inside the unit disc,
/// quadratic growth outside. Continuous (with its gradient) at |d| = 1.
double F_tilde(Vec2 d, PenaltyParams eps);

/// Gradient of F_tilde with respect to d (the penalty force).
Vec2 f_tilde(Vec2 d, PenaltyParams eps);

/// Integral of F_tilde(d_h) over the mesh, degree-4 quadrature.
double penalty_energy(const P1VectorField& d, PenaltyParams eps, const Mesh& mesh);

}  // namespace nematic
