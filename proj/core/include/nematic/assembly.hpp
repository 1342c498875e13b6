#pragma once

#include <memory>
#include <vector>

#include "nematic/fields.hpp"
#include "nematic/mesh.hpp"
#include "nematic/potential.hpp"
#include "nematic/sparse.hpp"

namespace nematic {

/// Shared CSR sparsity for P1 operators on one mesh, plus per-element value
/// slots so repeated assemblies (convection, Schur) fill values in place.
/// Vector operators use interleaved dofs (2v, 2v+1) with full 2x2 blocks.
class DofPatterns {
 public:
  explicit DofPatterns(const Mesh& mesh);

  SparseMatrix make_scalar_zero() const;
  SparseMatrix make_vector_zero() const;

  /// Value-array slot of entry (a, b), vertices given by local indices of
  /// element e, in the scalar pattern.
  int scalar_slot(int e, int la, int lb) const { return elem_slot_[9 * e + 3 * la + lb]; }
  /// Value-array slot of ((2a+ca), (2b+cb)) in the vector pattern.
  int vector_slot(int e, int la, int ca, int lb, int cb) const {
    const int s = scalar_slot(e, la, lb);
    const int a = row_of_[s];
    const int len = offsets_[a + 1] - offsets_[a];
    return 4 * offsets_[a] + 2 * ca * len + 2 * (s - offsets_[a]) + cb;
  }

  int n_vertices() const { return nv_; }

 private:
  int nv_ = 0, nt_ = 0;
  std::vector<int> offsets_, cols_;  // scalar CSR pattern
  std::vector<int> elem_slot_;       // 9 per element
  std::vector<int> row_of_;          // row of each scalar slot
  std::vector<int> voffsets_;
  std::vector<int> vcols_;
};

// Mass and stiffness for continuous P1, scalar (components=1) or interleaved
// vector (components=2) dofs. Exact closed-form local matrices.
SparseMatrix assemble_mass_p1(const Mesh& mesh, int components,
                              const DofPatterns* pat = nullptr);
SparseMatrix assemble_stiffness_p1(const Mesh& mesh, int components,
                                   const DofPatterns* pat = nullptr);

/// Convection operator for the skew trilinear form: entries are
/// (1/2)[(u.grad phi_j, phi_i) - (u.grad phi_i, phi_j)], exactly integrated.
/// Equal to the divergence-corrected form of the scheme on boundary-zero
/// pairs, and exactly skew on all of X_h.
SparseMatrix assemble_convection(const Mesh& mesh, const P1VectorField& u_adv,
                                 const DofPatterns* pat = nullptr);

/// P1-vector x P0-vector mass pairing, rows indexed by w dofs (2e+c).
SparseMatrix assemble_coupling_dw(const Mesh& mesh);

/// Eliminated auxiliary operator: per element |K| (gamma I + lambda k G G^T)
/// with G the constant gradient of d_prev on the element.
BlockDiag2x2 assemble_Ew(const Mesh& mesh, const P1VectorField& d_prev,
                         double lambda, double gamma, double k);

/// Elastic-force coupling (grad d)^T w against velocity test functions,
/// rows = velocity dofs, cols = w dofs.
SparseMatrix assemble_Eu(const Mesh& mesh, const P1VectorField& d_prev);

/// Director transport load: per element |K| G vbar with
/// vbar = mean(u_prev) - k grad p_prev. Returns a w-space vector (2*nt).
std::vector<double> assemble_Fw(const Mesh& mesh, const P1VectorField& d_prev,
                                const P1VectorField& u_prev,
                                const P1ScalarField& p_prev, double k);

/// Penalty force paired with P1 vector test functions, degree-2 quadrature.
std::vector<double> assemble_Feps(const Mesh& mesh, const P1VectorField& d_prev,
                                  PenaltyParams eps);

/// Pressure-gradient load (grad p, phi_j), exact.
std::vector<double> assemble_Fu(const Mesh& mesh, const P1ScalarField& p_prev);

/// Divergence load (div u_tilde, phi_j), exact.
std::vector<double> assemble_Fp(const Mesh& mesh, const P1VectorField& u_tilde);

/// Pressure stabilization j(p, q) = (S/nu) (p - Pi0 p, q - Pi0 q).
/// Symmetric PSD; annihilates constants.
SparseMatrix assemble_Jp(const Mesh& mesh, double S, double nu,
                         const DofPatterns* pat = nullptr);

/// Gradient pairing matrix B with B[(v,c)][q] = int (grad phi_q)_c phi_v,
/// so that assemble_Fu(mesh, p) == B * p. Used by the initialization solve.
SparseMatrix assemble_grad_p(const Mesh& mesh);

}  // namespace nematic
