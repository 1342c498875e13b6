#pragma once

#include <vector>

#include "nematic/types.hpp"

namespace nematic {

/// Conforming triangulation of an axis-aligned rectangle.
///
/// Immutable after construction; element geometry (areas and the constant
/// gradients of the three hat basis functions) is precomputed.
struct Mesh {
  std::vector<double> vertices;          // 2*nv, interleaved (x, y)
  std::vector<int> triangles;            // 3*nt, counter-clockwise
  std::vector<unsigned char> boundary_vertex;  // nv
  std::vector<double> element_area;      // nt
  std::vector<double> element_grad;      // 6*nt: grad of hat 0,1,2 (x, y each)
  double h_max = 0.0;                    // max edge length

  int n_vertices() const { return static_cast<int>(vertices.size() / 2); }
  int n_triangles() const { return static_cast<int>(triangles.size() / 3); }

  Vec2 vertex(int v) const { return {vertices[2 * v], vertices[2 * v + 1]}; }
  const int* tri(int e) const { return &triangles[3 * e]; }
  Vec2 hat_grad(int e, int local) const {
    return {element_grad[6 * e + 2 * local], element_grad[6 * e + 2 * local + 1]};
  }
};

struct MeshMetrics {
  double h_max = 0.0;
  double h_min = 0.0;
  double total_area = 0.0;
  int n_vertices = 0;
  int n_triangles = 0;
};

/// Structured triangulation of (x0,x1)x(y0,y1) with nx-by-ny cells, each cell
/// split along the lower-left -> upper-right diagonal.
Mesh generate_rectangle_mesh(double x0, double x1, double y0, double y1,
                             int nx, int ny);

MeshMetrics mesh_metrics(const Mesh& mesh);

}  // namespace nematic
