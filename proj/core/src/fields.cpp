#include "nematic/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace nematic {

namespace {

// integral over one element of the product of two P1 functions with local
// nodal values a, b: a^T M b with M = (|K|/12) [[2,1,1],[1,2,1],[1,1,2]]
double local_l2_product(const double a[3], const double b[3], double area) {
  const double sa = a[0] + a[1] + a[2];
  const double sb = b[0] + b[1] + b[2];
  const double diag = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return (area / 12.0) * (sa * sb + diag);
}

[[noreturn]] void unsupported() {
  throw std::invalid_argument("norm: unsupported field/norm combination");
}

}  // namespace

P1ScalarField interpolate_nodal(const std::function<double(double, double)>& f,
                                const Mesh& mesh) {
  P1ScalarField out = P1ScalarField::zeros(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Vec2 p = mesh.vertex(v);
    out.values[v] = f(p[0], p[1]);
  }
  return out;
}

P1VectorField interpolate_nodal(const std::function<Vec2(double, double)>& f,
                                const Mesh& mesh) {
  P1VectorField out = P1VectorField::zeros(mesh);
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Vec2 p = mesh.vertex(v);
    out.set(v, f(p[0], p[1]));
  }
  return out;
}

std::vector<double> pi0_project(const P1ScalarField& field, const Mesh& mesh) {
  std::vector<double> out(mesh.n_triangles(), 0.0);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    out[e] = (field.values[t[0]] + field.values[t[1]] + field.values[t[2]]) / 3.0;
  }
  return out;
}

P0VectorField pi0_project(const P1VectorField& field, const Mesh& mesh) {
  P0VectorField out = P0VectorField::zeros(mesh);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Vec2 avg = (1.0 / 3.0) * (field.at(t[0]) + field.at(t[1]) + field.at(t[2]));
    out.set(e, avg);
  }
  return out;
}

Mat2 element_gradient(const P1VectorField& f, const Mesh& mesh, int e) {
  const int* t = mesh.tri(e);
  Mat2 G = {0, 0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    const Vec2 g = mesh.hat_grad(e, i);
    const Vec2 d = f.at(t[i]);
    G[0] += d[0] * g[0];
    G[1] += d[0] * g[1];
    G[2] += d[1] * g[0];
    G[3] += d[1] * g[1];
  }
  return G;
}

Vec2 element_gradient(const P1ScalarField& f, const Mesh& mesh, int e) {
  const int* t = mesh.tri(e);
  Vec2 g = {0, 0};
  for (int i = 0; i < 3; ++i) {
    const Vec2 gi = mesh.hat_grad(e, i);
    g[0] += f.values[t[i]] * gi[0];
    g[1] += f.values[t[i]] * gi[1];
  }
  return g;
}

double norm(const P1ScalarField& f, const Mesh& mesh, NormKind kind) {
  switch (kind) {
    case NormKind::L2: {
      double acc = 0.0;
      for (int e = 0; e < mesh.n_triangles(); ++e) {
        const int* t = mesh.tri(e);
        const double a[3] = {f.values[t[0]], f.values[t[1]], f.values[t[2]]};
        acc += local_l2_product(a, a, mesh.element_area[e]);
      }
      return std::sqrt(acc);
    }
    case NormKind::H1Semi: {
      double acc = 0.0;
      for (int e = 0; e < mesh.n_triangles(); ++e) {
        const Vec2 g = element_gradient(f, mesh, e);
        acc += mesh.element_area[e] * dot(g, g);
      }
      return std::sqrt(acc);
    }
    case NormKind::LinfNodal: {
      double m = 0.0;
      for (double v : f.values) m = std::max(m, std::abs(v));
      return m;
    }
  }
  unsupported();
}

double norm(const P1VectorField& f, const Mesh& mesh, NormKind kind) {
  switch (kind) {
    case NormKind::L2: {
      double acc = 0.0;
      for (int e = 0; e < mesh.n_triangles(); ++e) {
        const int* t = mesh.tri(e);
        for (int c = 0; c < 2; ++c) {
          const double a[3] = {f.values[2 * t[0] + c], f.values[2 * t[1] + c],
                               f.values[2 * t[2] + c]};
          acc += local_l2_product(a, a, mesh.element_area[e]);
        }
      }
      return std::sqrt(acc);
    }
    case NormKind::H1Semi: {
      double acc = 0.0;
      for (int e = 0; e < mesh.n_triangles(); ++e) {
        const Mat2 G = element_gradient(f, mesh, e);
        acc += mesh.element_area[e] *
               (G[0] * G[0] + G[1] * G[1] + G[2] * G[2] + G[3] * G[3]);
      }
      return std::sqrt(acc);
    }
    case NormKind::LinfNodal: {
      double m = 0.0;
      for (size_t v = 0; v * 2 < f.values.size(); ++v)
        m = std::max(m, std::hypot(f.values[2 * v], f.values[2 * v + 1]));
      return m;
    }
  }
  unsupported();
}

double norm(const P0VectorField& f, const Mesh& mesh, NormKind kind) {
  switch (kind) {
    case NormKind::L2: {
      double acc = 0.0;
      for (int e = 0; e < mesh.n_triangles(); ++e) {
        const Vec2 w = f.at(e);
        acc += mesh.element_area[e] * dot(w, w);
      }
      return std::sqrt(acc);
    }
    case NormKind::LinfNodal: {
      double m = 0.0;
      for (int e = 0; e < mesh.n_triangles(); ++e) m = std::max(m, norm2(f.at(e)));
      return m;
    }
    default:
      unsupported();
  }
}

double norm(const EOSVelocity& f, const Mesh& mesh, NormKind kind) {
  if (kind != NormKind::L2) unsupported();
  // per element: int |u_tilde|^2 + 2 c . int u_tilde + |c|^2 |K|
  double acc = 0.0;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const double area = mesh.element_area[e];
    const Vec2 c = f.correction.at(e);
    Vec2 sum = {0, 0};
    for (int c2 = 0; c2 < 2; ++c2) {
      const double a[3] = {f.tilde.values[2 * t[0] + c2],
                           f.tilde.values[2 * t[1] + c2],
                           f.tilde.values[2 * t[2] + c2]};
      acc += local_l2_product(a, a, area);
      sum[c2] = a[0] + a[1] + a[2];
    }
    acc += 2.0 * (area / 3.0) * dot(c, sum) + area * dot(c, c);
  }
  return std::sqrt(acc);
}

double error_norm(const P1ScalarField& a, const P1ScalarField& b,
                  const Mesh& mesh, NormKind kind) {
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("error_norm: fields live on different meshes");
  P1ScalarField d;
  d.values.resize(a.values.size());
  for (size_t i = 0; i < a.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
  return norm(d, mesh, kind);
}

double error_norm(const P1VectorField& a, const P1VectorField& b,
                  const Mesh& mesh, NormKind kind) {
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("error_norm: fields live on different meshes");
  P1VectorField d;
  d.values.resize(a.values.size());
  for (size_t i = 0; i < a.values.size(); ++i) d.values[i] = a.values[i] - b.values[i];
  return norm(d, mesh, kind);
}

}  // namespace nematic
