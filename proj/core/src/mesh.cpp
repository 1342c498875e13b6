#include "nematic/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nematic {

namespace {

void compute_element_geometry(Mesh& mesh) {
  const int nt = mesh.n_triangles();
  mesh.element_area.assign(nt, 0.0);
  mesh.element_grad.assign(6 * nt, 0.0);
  double h_max = 0.0;
  for (int e = 0; e < nt; ++e) {
    const int* t = mesh.tri(e);
    const Vec2 p0 = mesh.vertex(t[0]);
    const Vec2 p1 = mesh.vertex(t[1]);
    const Vec2 p2 = mesh.vertex(t[2]);
    const double twice_area =
        (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    if (twice_area <= 0.0)
      throw std::invalid_argument("mesh: triangle with non-positive area");
    mesh.element_area[e] = 0.5 * twice_area;
    // grad of hat_i: rotate the opposite edge by 90 degrees, scale by 1/(2A)
    const Vec2 pts[3] = {p0, p1, p2};
    for (int i = 0; i < 3; ++i) {
      const Vec2 a = pts[(i + 1) % 3];
      const Vec2 b = pts[(i + 2) % 3];
      mesh.element_grad[6 * e + 2 * i] = (a[1] - b[1]) / twice_area;
      mesh.element_grad[6 * e + 2 * i + 1] = (b[0] - a[0]) / twice_area;
    }
    for (int i = 0; i < 3; ++i)
      h_max = std::max(h_max, norm2(pts[(i + 1) % 3] - pts[i]));
  }
  mesh.h_max = h_max;
}

}  // namespace

Mesh generate_rectangle_mesh(double x0, double x1, double y0, double y1,
                             int nx, int ny) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("generate_rectangle_mesh: nx and ny must be >= 1");
  if (!(x1 > x0) || !(y1 > y0))
    throw std::invalid_argument("generate_rectangle_mesh: empty rectangle");

  Mesh mesh;
  const int nvx = nx + 1, nvy = ny + 1;
  mesh.vertices.resize(2 * static_cast<size_t>(nvx) * nvy);
  mesh.boundary_vertex.resize(static_cast<size_t>(nvx) * nvy);
  const double dx = (x1 - x0) / nx, dy = (y1 - y0) / ny;
  for (int j = 0; j < nvy; ++j) {
    for (int i = 0; i < nvx; ++i) {
      const int v = j * nvx + i;
      mesh.vertices[2 * v] = (i == nx) ? x1 : x0 + i * dx;
      mesh.vertices[2 * v + 1] = (j == ny) ? y1 : y0 + j * dy;
      mesh.boundary_vertex[v] = (i == 0 || i == nx || j == 0 || j == ny) ? 1 : 0;
    }
  }
  mesh.triangles.reserve(6 * static_cast<size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = j * nvx + i;
      const int v10 = v00 + 1;
      const int v01 = v00 + nvx;
      const int v11 = v01 + 1;
      mesh.triangles.insert(mesh.triangles.end(), {v00, v10, v11});
      mesh.triangles.insert(mesh.triangles.end(), {v00, v11, v01});
    }
  }
  compute_element_geometry(mesh);
  return mesh;
}

MeshMetrics mesh_metrics(const Mesh& mesh) {
  MeshMetrics m;
  m.n_vertices = mesh.n_vertices();
  m.n_triangles = mesh.n_triangles();
  m.h_max = 0.0;
  m.h_min = std::numeric_limits<double>::infinity();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    for (int i = 0; i < 3; ++i) {
      const double len = norm2(mesh.vertex(t[(i + 1) % 3]) - mesh.vertex(t[i]));
      m.h_max = std::max(m.h_max, len);
      m.h_min = std::min(m.h_min, len);
    }
    m.total_area += mesh.element_area[e];
  }
  return m;
}

}  // namespace nematic
