#pragma once

#include <functional>
#include <vector>

#include "nematic/mesh.hpp"
#include "nematic/types.hpp"

namespace nematic {

/// Continuous piecewise-linear scalar field, one nodal value per vertex.
struct P1ScalarField {
  std::vector<double> values;  // nv

  static P1ScalarField zeros(const Mesh& mesh) {
    return {std::vector<double>(mesh.n_vertices(), 0.0)};
  }
};

/// Continuous piecewise-linear vector field, nodal (x, y) pairs interleaved.
struct P1VectorField {
  std::vector<double> values;  // 2*nv

  static P1VectorField zeros(const Mesh& mesh) {
    return {std::vector<double>(2 * mesh.n_vertices(), 0.0)};
  }
  Vec2 at(int v) const { return {values[2 * v], values[2 * v + 1]}; }
  void set(int v, Vec2 d) {
    values[2 * v] = d[0];
    values[2 * v + 1] = d[1];
  }
};

/// Element-wise constant vector field.
struct P0VectorField {
  std::vector<double> values;  // 2*nt

  static P0VectorField zeros(const Mesh& mesh) {
    return {std::vector<double>(2 * mesh.n_triangles(), 0.0)};
  }
  Vec2 at(int e) const { return {values[2 * e], values[2 * e + 1]}; }
  void set(int e, Vec2 w) {
    values[2 * e] = w[0];
    values[2 * e + 1] = w[1];
  }
};

/// End-of-step velocity u = u_tilde + correction, with the correction
/// constant per element (-k grad p). Evaluable element-wise; its L2 norm is
/// exact because the integrand is quadratic on each element.
struct EOSVelocity {
  P1VectorField tilde;
  P0VectorField correction;
};

enum class NormKind { L2, H1Semi, LinfNodal };

P1ScalarField interpolate_nodal(const std::function<double(double, double)>& f,
                                const Mesh& mesh);
P1VectorField interpolate_nodal(const std::function<Vec2(double, double)>& f,
                                const Mesh& mesh);

/// L2-orthogonal projection onto element-wise constants: per element, the
/// average of the three vertex values.
std::vector<double> pi0_project(const P1ScalarField& field, const Mesh& mesh);
P0VectorField pi0_project(const P1VectorField& field, const Mesh& mesh);

double norm(const P1ScalarField& f, const Mesh& mesh, NormKind kind);
double norm(const P1VectorField& f, const Mesh& mesh, NormKind kind);
double norm(const P0VectorField& f, const Mesh& mesh, NormKind kind);
double norm(const EOSVelocity& f, const Mesh& mesh, NormKind kind);

double error_norm(const P1ScalarField& a, const P1ScalarField& b,
                  const Mesh& mesh, NormKind kind);
double error_norm(const P1VectorField& a, const P1VectorField& b,
                  const Mesh& mesh, NormKind kind);

/// Gradient of a P1 vector field on one element: G[r][c] = d(comp r)/d(x_c).
Mat2 element_gradient(const P1VectorField& f, const Mesh& mesh, int e);
/// Gradient of a P1 scalar field on one element.
Vec2 element_gradient(const P1ScalarField& f, const Mesh& mesh, int e);

}  // namespace nematic
