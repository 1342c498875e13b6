#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nematic/sparse.hpp"

namespace nematic {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_ = 0.0;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive
/// (semi)definite systems. With deflate_constants the solve is restricted to
/// the zero-mean subspace: b must be orthogonal to constants (checked at
/// 1e-10 relative) and the returned x has zero mean.
/// max_iter < 0 means 10 * n. x0 is an optional warm start.
std::vector<double> cg_solve(const SparseMatrix& A, std::span<const double> b,
                             double tol, int max_iter, bool deflate_constants,
                             const std::vector<double>* x0 = nullptr);

/// Matrix-free variant of cg_solve (no preconditioning).
std::vector<double> cg_solve_op(
    const std::function<void(std::span<const double>, std::span<double>)>& apply,
    std::span<const double> b, double tol, int max_iter, bool deflate_constants,
    const std::vector<double>* x0 = nullptr);

/// Jacobi-preconditioned BiCGStab for general square systems.
std::vector<double> bicgstab_solve(const SparseMatrix& A,
                                   std::span<const double> b, double tol,
                                   int max_iter,
                                   const std::vector<double>* x0 = nullptr);

/// Dense row-major square matrix, used by the direct solver and test oracles.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;  // n*n, row-major

  explicit DenseMatrix(int n_ = 0) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

/// LU with partial pivoting. Throws on (numerically) singular input.
std::vector<double> dense_solve(DenseMatrix A, std::vector<double> b);

DenseMatrix dense_from_csr(const SparseMatrix& A);

}  // namespace nematic
