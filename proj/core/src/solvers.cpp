#include "nematic/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nematic {

namespace {

double dot_v(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_v(std::span<const double> a) { return std::sqrt(dot_v(a, a)); }

void remove_mean(std::span<double> v) {
  double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= m;
}

using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

std::vector<double> pcg(const ApplyFn& apply, const std::vector<double>* diag,
                        std::span<const double> b, double tol, int max_iter,
                        bool deflate, const std::vector<double>* x0) {
  const int n = static_cast<int>(b.size());
  if (max_iter < 0) max_iter = 10 * n;
  const double bnorm = norm_v(b);
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) return x;
  if (deflate) {
    const double bsum = std::accumulate(b.begin(), b.end(), 0.0);
    if (std::abs(bsum) > 1e-10 * std::sqrt(static_cast<double>(n)) * bnorm)
      throw std::invalid_argument("cg_solve: rhs inconsistent with constant deflation");
  }
  if (x0) {
    x = *x0;
    if (deflate) remove_mean(x);
  }

  std::vector<double> r(n), z(n), p(n), Ap(n);
  apply(x, Ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];
  if (deflate) remove_mean(r);

  auto precondition = [&](const std::vector<double>& rin, std::vector<double>& zout) {
    if (diag) {
      for (int i = 0; i < n; ++i) zout[i] = rin[i] / (*diag)[i];
    } else {
      zout = rin;
    }
    if (deflate) remove_mean(zout);
  };

  double rnorm = norm_v(r);
  if (rnorm <= tol * bnorm) return x;
  precondition(r, z);
  p = z;
  double rz = dot_v(r, z);
  for (int it = 0; it < max_iter; ++it) {
    apply(p, Ap);
    const double pAp = dot_v(p, Ap);
    if (!(pAp > 0.0))
      throw SolverError("cg_solve: operator not positive definite on search direction", rnorm / bnorm);
    const double alpha = rz / pAp;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    rnorm = norm_v(r);
    if (rnorm <= tol * bnorm) {
      if (deflate) remove_mean(x);
      return x;
    }
    precondition(r, z);
    const double rz_new = dot_v(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  throw SolverError("cg_solve: no convergence within max_iter", rnorm / bnorm);
}

std::vector<double> extract_diag(const SparseMatrix& A) {
  std::vector<double> d(A.n_rows, 1.0);
  for (int i = 0; i < A.n_rows; ++i)
    for (int s = A.row_offsets[i]; s < A.row_offsets[i + 1]; ++s)
      if (A.col_indices[s] == i && A.values[s] != 0.0) d[i] = A.values[s];
  return d;
}

}  // namespace

std::vector<double> cg_solve(const SparseMatrix& A, std::span<const double> b,
                             double tol, int max_iter, bool deflate_constants,
                             const std::vector<double>* x0) {
  if (A.n_rows != A.n_cols || A.n_rows != static_cast<int>(b.size()))
    throw std::invalid_argument("cg_solve: dimension mismatch");
  const std::vector<double> diag = extract_diag(A);
  auto apply = [&](std::span<const double> in, std::span<double> out) {
    spmv(A, in, out);
  };
  return pcg(apply, &diag, b, tol, max_iter, deflate_constants, x0);
}

std::vector<double> cg_solve_op(const ApplyFn& apply, std::span<const double> b,
                                double tol, int max_iter, bool deflate_constants,
                                const std::vector<double>* x0) {
  return pcg(apply, nullptr, b, tol, max_iter, deflate_constants, x0);
}

std::vector<double> bicgstab_solve(const SparseMatrix& A,
                                   std::span<const double> b, double tol,
                                   int max_iter, const std::vector<double>* x0) {
  if (A.n_rows != A.n_cols || A.n_rows != static_cast<int>(b.size()))
    throw std::invalid_argument("bicgstab_solve: dimension mismatch");
  const int n = A.n_rows;
  if (max_iter < 0) max_iter = 10 * n;
  const double bnorm = norm_v(b);
  std::vector<double> x(n, 0.0);
  if (bnorm == 0.0) return x;
  if (x0) x = *x0;

  const std::vector<double> diag = extract_diag(A);
  std::vector<double> r(n), r0(n), p(n, 0.0), v(n, 0.0), s(n), t(n), y(n), z(n);
  spmv(A, x, r);
  for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
  r0 = r;
  double rnorm = norm_v(r);
  if (rnorm <= tol * bnorm) return x;

  double rho = 1.0, alpha = 1.0, omega = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    const double rho_new = dot_v(r0, r);
    if (std::abs(rho_new) < 1e-300)
      throw SolverError("bicgstab_solve: breakdown (rho)", rnorm / bnorm);
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (int i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
    for (int i = 0; i < n; ++i) y[i] = p[i] / diag[i];
    spmv(A, y, v);
    const double r0v = dot_v(r0, v);
    if (std::abs(r0v) < 1e-300)
      throw SolverError("bicgstab_solve: breakdown (r0.v)", rnorm / bnorm);
    alpha = rho / r0v;
    for (int i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (norm_v(s) <= tol * bnorm) {
      for (int i = 0; i < n; ++i) x[i] += alpha * y[i];
      return x;
    }
    for (int i = 0; i < n; ++i) z[i] = s[i] / diag[i];
    spmv(A, z, t);
    const double tt = dot_v(t, t);
    if (tt < 1e-300)
      throw SolverError("bicgstab_solve: breakdown (t)", rnorm / bnorm);
    omega = dot_v(t, s) / tt;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * y[i] + omega * z[i];
      r[i] = s[i] - omega * t[i];
    }
    rnorm = norm_v(r);
    if (rnorm <= tol * bnorm) return x;
    if (std::abs(omega) < 1e-300)
      throw SolverError("bicgstab_solve: breakdown (omega)", rnorm / bnorm);
  }
  throw SolverError("bicgstab_solve: no convergence within max_iter", rnorm / bnorm);
}

std::vector<double> dense_solve(DenseMatrix A, std::vector<double> b) {
  const int n = A.n;
  if (static_cast<int>(b.size()) != n)
    throw std::invalid_argument("dense_solve: dimension mismatch");
  double scale = 0.0;
  for (double v : A.a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
    if (std::abs(A(piv, k)) <= 1e-13 * scale)
      throw std::invalid_argument("dense_solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j) A(i, j) -= f * A(k, j);
      b[i] -= f * b[k];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= A(i, j) * b[j];
    b[i] = s / A(i, i);
  }
  return b;
}

DenseMatrix dense_from_csr(const SparseMatrix& A) {
  if (A.n_rows != A.n_cols)
    throw std::invalid_argument("dense_from_csr: square matrix required");
  DenseMatrix D(A.n_rows);
  for (int i = 0; i < A.n_rows; ++i)
    for (int s = A.row_offsets[i]; s < A.row_offsets[i + 1]; ++s)
      D(i, A.col_indices[s]) = A.values[s];
  return D;
}

}  // namespace nematic
