#include "nematic/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nematic/quadrature.hpp"

namespace nematic {

DofPatterns::DofPatterns(const Mesh& mesh) {
  nv_ = mesh.n_vertices();
  nt_ = mesh.n_triangles();

  std::vector<std::vector<int>> adj(nv_);
  for (int e = 0; e < nt_; ++e) {
    const int* t = mesh.tri(e);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) adj[t[i]].push_back(t[j]);
  }
  offsets_.assign(nv_ + 1, 0);
  for (int v = 0; v < nv_; ++v) {
    auto& a = adj[v];
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    offsets_[v + 1] = offsets_[v] + static_cast<int>(a.size());
  }
  cols_.reserve(offsets_[nv_]);
  row_of_.reserve(offsets_[nv_]);
  for (int v = 0; v < nv_; ++v)
    for (int c : adj[v]) {
      cols_.push_back(c);
      row_of_.push_back(v);
    }

  elem_slot_.resize(9 * static_cast<size_t>(nt_));
  for (int e = 0; e < nt_; ++e) {
    const int* t = mesh.tri(e);
    for (int i = 0; i < 3; ++i) {
      const int row = t[i];
      for (int j = 0; j < 3; ++j) {
        const auto begin = cols_.begin() + offsets_[row];
        const auto end = cols_.begin() + offsets_[row + 1];
        const auto it = std::lower_bound(begin, end, t[j]);
        elem_slot_[9 * e + 3 * i + j] =
            offsets_[row] + static_cast<int>(it - begin);
      }
    }
  }

  // vector expansion: rows 2v and 2v+1 each carry columns {2c, 2c+1}
  voffsets_.assign(2 * nv_ + 1, 0);
  vcols_.reserve(4 * cols_.size());
  for (int v = 0; v < nv_; ++v) {
    const int len = offsets_[v + 1] - offsets_[v];
    voffsets_[2 * v + 1] = voffsets_[2 * v] + 2 * len;
    voffsets_[2 * v + 2] = voffsets_[2 * v + 1] + 2 * len;
    for (int c = 0; c < 2; ++c)
      for (int s = offsets_[v]; s < offsets_[v + 1]; ++s) {
        vcols_.push_back(2 * cols_[s]);
        vcols_.push_back(2 * cols_[s] + 1);
      }
  }
}

SparseMatrix DofPatterns::make_scalar_zero() const {
  SparseMatrix A;
  A.n_rows = A.n_cols = nv_;
  A.row_offsets = offsets_;
  A.col_indices = cols_;
  A.values.assign(cols_.size(), 0.0);
  return A;
}

SparseMatrix DofPatterns::make_vector_zero() const {
  SparseMatrix A;
  A.n_rows = A.n_cols = 2 * nv_;
  A.row_offsets = voffsets_;
  A.col_indices = vcols_;
  A.values.assign(vcols_.size(), 0.0);
  return A;
}

namespace {

const DofPatterns& patterns_or_local(const Mesh& mesh, const DofPatterns* pat,
                                     std::unique_ptr<DofPatterns>& local) {
  if (pat) return *pat;
  local = std::make_unique<DofPatterns>(mesh);
  return *local;
}

void check_components(int components) {
  if (components != 1 && components != 2)
    throw std::invalid_argument("assembly: components must be 1 or 2");
}

}  // namespace

SparseMatrix assemble_mass_p1(const Mesh& mesh, int components,
                              const DofPatterns* pat) {
  check_components(components);
  std::unique_ptr<DofPatterns> local;
  const DofPatterns& p = patterns_or_local(mesh, pat, local);
  SparseMatrix A = components == 1 ? p.make_scalar_zero() : p.make_vector_zero();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const double a12 = mesh.element_area[e] / 12.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double v = (i == j) ? 2.0 * a12 : a12;
        if (components == 1) {
          A.values[p.scalar_slot(e, i, j)] += v;
        } else {
          A.values[p.vector_slot(e, i, 0, j, 0)] += v;
          A.values[p.vector_slot(e, i, 1, j, 1)] += v;
        }
      }
  }
  return A;
}

SparseMatrix assemble_stiffness_p1(const Mesh& mesh, int components,
                                   const DofPatterns* pat) {
  check_components(components);
  std::unique_ptr<DofPatterns> local;
  const DofPatterns& p = patterns_or_local(mesh, pat, local);
  SparseMatrix A = components == 1 ? p.make_scalar_zero() : p.make_vector_zero();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const double area = mesh.element_area[e];
    for (int i = 0; i < 3; ++i) {
      const Vec2 gi = mesh.hat_grad(e, i);
      for (int j = 0; j < 3; ++j) {
        const double v = area * dot(gi, mesh.hat_grad(e, j));
        if (components == 1) {
          A.values[p.scalar_slot(e, i, j)] += v;
        } else {
          A.values[p.vector_slot(e, i, 0, j, 0)] += v;
          A.values[p.vector_slot(e, i, 1, j, 1)] += v;
        }
      }
    }
  }
  return A;
}

SparseMatrix assemble_convection(const Mesh& mesh, const P1VectorField& u_adv,
                                 const DofPatterns* pat) {
  if (u_adv.values.size() != 2 * static_cast<size_t>(mesh.n_vertices()))
    throw std::invalid_argument("assemble_convection: field/mesh mismatch");
  std::unique_ptr<DofPatterns> local;
  const DofPatterns& p = patterns_or_local(mesh, pat, local);
  SparseMatrix A = p.make_vector_zero();
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const double a12 = mesh.element_area[e] / 12.0;
    // B_ij = (u . grad phi_j, phi_i) = sum_a (u_a . g_j) M_ia, exactly
    double B[3][3];
    for (int j = 0; j < 3; ++j) {
      const Vec2 gj = mesh.hat_grad(e, j);
      double ug[3];
      for (int a = 0; a < 3; ++a) ug[a] = dot(u_adv.at(t[a]), gj);
      for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int a = 0; a < 3; ++a) s += ug[a] * ((a == i) ? 2.0 * a12 : a12);
        B[i][j] = s;
      }
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double v = 0.5 * (B[i][j] - B[j][i]);
        A.values[p.vector_slot(e, i, 0, j, 0)] += v;
        A.values[p.vector_slot(e, i, 1, j, 1)] += v;
      }
  }
  return A;
}

SparseMatrix assemble_coupling_dw(const Mesh& mesh) {
  const int nt = mesh.n_triangles();
  SparseMatrix A;
  A.n_rows = 2 * nt;
  A.n_cols = 2 * mesh.n_vertices();
  A.row_offsets.assign(2 * nt + 1, 0);
  A.col_indices.reserve(6 * static_cast<size_t>(nt));
  A.values.reserve(6 * static_cast<size_t>(nt));
  for (int e = 0; e < nt; ++e) {
    int verts[3] = {mesh.tri(e)[0], mesh.tri(e)[1], mesh.tri(e)[2]};
    std::sort(verts, verts + 3);
    const double w = mesh.element_area[e] / 3.0;
    for (int c = 0; c < 2; ++c) {
      for (int v : verts) {
        A.col_indices.push_back(2 * v + c);
        A.values.push_back(w);
      }
      A.row_offsets[2 * e + c + 1] = A.row_offsets[2 * e + c] + 3;
    }
  }
  return A;
}

BlockDiag2x2 assemble_Ew(const Mesh& mesh, const P1VectorField& d_prev,
                         double lambda, double gamma, double k) {
  if (!(lambda > 0.0) || !(gamma > 0.0) || !(k > 0.0))
    throw std::invalid_argument("assemble_Ew: lambda, gamma, k must be positive");
  std::vector<Mat2> blocks(mesh.n_triangles());
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const Mat2 G = element_gradient(d_prev, mesh, e);
    const double area = mesh.element_area[e];
    const double lk = lambda * k;
    // |K| (gamma I + lambda k G G^T)
    blocks[e] = {area * (gamma + lk * (G[0] * G[0] + G[1] * G[1])),
                 area * lk * (G[0] * G[2] + G[1] * G[3]),
                 area * lk * (G[2] * G[0] + G[3] * G[1]),
                 area * (gamma + lk * (G[2] * G[2] + G[3] * G[3]))};
  }
  return BlockDiag2x2(std::move(blocks));
}

SparseMatrix assemble_Eu(const Mesh& mesh, const P1VectorField& d_prev) {
  Triplets trip;
  trip.reserve(12 * static_cast<size_t>(mesh.n_triangles()));
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Mat2 G = element_gradient(d_prev, mesh, e);
    const double w = mesh.element_area[e] / 3.0;
    // entry ((v,c),(e,c')) = (G^T e_{c'})_c |K|/3 = G[c'][c] |K|/3
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 2; ++c)
        for (int cp = 0; cp < 2; ++cp)
          trip.add(2 * t[i] + c, 2 * e + cp, w * G[2 * cp + c]);
  }
  return trip.compress(2 * mesh.n_vertices(), 2 * mesh.n_triangles());
}

std::vector<double> assemble_Fw(const Mesh& mesh, const P1VectorField& d_prev,
                                const P1VectorField& u_prev,
                                const P1ScalarField& p_prev, double k) {
  std::vector<double> F(2 * static_cast<size_t>(mesh.n_triangles()), 0.0);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Mat2 G = element_gradient(d_prev, mesh, e);
    const Vec2 gp = element_gradient(p_prev, mesh, e);
    const Vec2 ubar =
        (1.0 / 3.0) * (u_prev.at(t[0]) + u_prev.at(t[1]) + u_prev.at(t[2]));
    const Vec2 v = ubar - k * gp;
    const Vec2 Gv = matvec(G, v);
    F[2 * e] = mesh.element_area[e] * Gv[0];
    F[2 * e + 1] = mesh.element_area[e] * Gv[1];
  }
  return F;
}

std::vector<double> assemble_Feps(const Mesh& mesh, const P1VectorField& d_prev,
                                  PenaltyParams eps) {
  static const QuadratureRule rule = quadrature(2);
  std::vector<double> F(2 * static_cast<size_t>(mesh.n_vertices()), 0.0);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Vec2 d0 = d_prev.at(t[0]), d1 = d_prev.at(t[1]), d2 = d_prev.at(t[2]);
    const double area = mesh.element_area[e];
    for (int q = 0; q < rule.n_points(); ++q) {
      const double* l = rule.bary(q);
      const Vec2 f = f_tilde(l[0] * d0 + l[1] * d1 + l[2] * d2, eps);
      for (int i = 0; i < 3; ++i) {
        const double wl = rule.weights[q] * area * l[i];
        F[2 * t[i]] += wl * f[0];
        F[2 * t[i] + 1] += wl * f[1];
      }
    }
  }
  return F;
}

std::vector<double> assemble_Fu(const Mesh& mesh, const P1ScalarField& p_prev) {
  std::vector<double> F(2 * static_cast<size_t>(mesh.n_vertices()), 0.0);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Vec2 gp = element_gradient(p_prev, mesh, e);
    const double w = mesh.element_area[e] / 3.0;
    for (int i = 0; i < 3; ++i) {
      F[2 * t[i]] += w * gp[0];
      F[2 * t[i] + 1] += w * gp[1];
    }
  }
  return F;
}

std::vector<double> assemble_Fp(const Mesh& mesh, const P1VectorField& u_tilde) {
  std::vector<double> F(mesh.n_vertices(), 0.0);
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const Mat2 G = element_gradient(u_tilde, mesh, e);
    const double div = G[0] + G[3];
    const double w = mesh.element_area[e] / 3.0;
    for (int i = 0; i < 3; ++i) F[t[i]] += w * div;
  }
  return F;
}

SparseMatrix assemble_Jp(const Mesh& mesh, double S, double nu,
                         const DofPatterns* pat) {
  if (!(S > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("assemble_Jp: S and nu must be positive");
  std::unique_ptr<DofPatterns> local;
  const DofPatterns& p = patterns_or_local(mesh, pat, local);
  SparseMatrix A = p.make_scalar_zero();
  const double tau = S / nu;
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const double area = mesh.element_area[e];
    // tau (M_K - m m^T / |K|): diag |K|/18, off-diag -|K|/36
    const double diag = tau * area / 18.0;
    const double off = -tau * area / 36.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        A.values[p.scalar_slot(e, i, j)] += (i == j) ? diag : off;
  }
  return A;
}

SparseMatrix assemble_grad_p(const Mesh& mesh) {
  Triplets trip;
  trip.reserve(18 * static_cast<size_t>(mesh.n_triangles()));
  for (int e = 0; e < mesh.n_triangles(); ++e) {
    const int* t = mesh.tri(e);
    const double w = mesh.element_area[e] / 3.0;
    for (int q = 0; q < 3; ++q) {
      const Vec2 g = mesh.hat_grad(e, q);
      for (int i = 0; i < 3; ++i) {
        trip.add(2 * t[i], t[q], w * g[0]);
        trip.add(2 * t[i] + 1, t[q], w * g[1]);
      }
    }
  }
  return trip.compress(2 * mesh.n_vertices(), mesh.n_vertices());
}

}  // namespace nematic
