#include "nematic/sparse.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nematic {

SparseMatrix Triplets::compress(int n_rows, int n_cols) const {
  SparseMatrix A;
  A.n_rows = n_rows;
  A.n_cols = n_cols;
  A.row_offsets.assign(n_rows + 1, 0);

  std::vector<size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (rows_[a] != rows_[b]) return rows_[a] < rows_[b];
    return cols_[a] < cols_[b];
  });

  A.col_indices.reserve(order.size());
  A.values.reserve(order.size());
  int last_i = -1, last_j = -1;
  for (size_t idx : order) {
    const int i = rows_[idx], j = cols_[idx];
    if (i < 0 || i >= n_rows || j < 0 || j >= n_cols)
      throw std::invalid_argument("Triplets::compress: index out of bounds");
    if (i == last_i && j == last_j) {
      A.values.back() += vals_[idx];
    } else {
      A.col_indices.push_back(j);
      A.values.push_back(vals_[idx]);
      A.row_offsets[i + 1] += 1;
      last_i = i;
      last_j = j;
    }
  }
  for (int i = 0; i < n_rows; ++i) A.row_offsets[i + 1] += A.row_offsets[i];
  return A;
}

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x) {
  std::vector<double> y(A.n_rows, 0.0);
  spmv(A, x, y);
  return y;
}

void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y) {
  if (static_cast<int>(x.size()) != A.n_cols ||
      static_cast<int>(y.size()) != A.n_rows)
    throw std::invalid_argument("spmv: dimension mismatch");
  for (int i = 0; i < A.n_rows; ++i) {
    double acc = 0.0;
    for (int s = A.row_offsets[i]; s < A.row_offsets[i + 1]; ++s)
      acc += A.values[s] * x[A.col_indices[s]];
    y[i] = acc;
  }
}

SparseMatrix transpose(const SparseMatrix& A) {
  SparseMatrix T;
  T.n_rows = A.n_cols;
  T.n_cols = A.n_rows;
  T.row_offsets.assign(T.n_rows + 1, 0);
  for (int j : A.col_indices) T.row_offsets[j + 1] += 1;
  for (int i = 0; i < T.n_rows; ++i) T.row_offsets[i + 1] += T.row_offsets[i];
  T.col_indices.resize(A.nnz());
  T.values.resize(A.nnz());
  std::vector<int> next(T.row_offsets.begin(), T.row_offsets.end() - 1);
  for (int i = 0; i < A.n_rows; ++i) {
    for (int s = A.row_offsets[i]; s < A.row_offsets[i + 1]; ++s) {
      const int pos = next[A.col_indices[s]]++;
      T.col_indices[pos] = i;  // rows of A visited in order -> sorted cols
      T.values[pos] = A.values[s];
    }
  }
  return T;
}

void apply_dirichlet(SparseMatrix& A, const std::vector<unsigned char>& flagged) {
  if (static_cast<int>(flagged.size()) != A.n_rows || A.n_rows != A.n_cols)
    throw std::invalid_argument("apply_dirichlet: square matrix and one flag per dof required");
  for (int i = 0; i < A.n_rows; ++i) {
    const bool row_fixed = flagged[i] != 0;
    for (int s = A.row_offsets[i]; s < A.row_offsets[i + 1]; ++s) {
      const int j = A.col_indices[s];
      if (row_fixed || flagged[j]) A.values[s] = (i == j) ? 1.0 : 0.0;
    }
  }
}

BlockDiag2x2::BlockDiag2x2(std::vector<Mat2> blocks) : blocks_(std::move(blocks)) {
  inverses_.resize(blocks_.size());
  for (size_t e = 0; e < blocks_.size(); ++e) {
    const Mat2& m = blocks_[e];
    const double det = m[0] * m[3] - m[1] * m[2];
    if (!(m[0] > 0.0) || !(det > 0.0))
      throw std::invalid_argument("BlockDiag2x2: block is not positive definite");
    inverses_[e] = {m[3] / det, -m[1] / det, -m[2] / det, m[0] / det};
  }
}

}  // namespace nematic
