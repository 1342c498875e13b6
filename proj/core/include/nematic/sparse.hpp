#pragma once

#include <span>
#include <vector>

#include "nematic/types.hpp"

namespace nematic {

/// CSR sparse matrix, columns sorted and unique within each row.
struct SparseMatrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<int> row_offsets;  // n_rows + 1
  std::vector<int> col_indices;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_indices.size()); }
};

/// Triplet accumulator; duplicate entries are summed on compression.
class Triplets {
 public:
  void reserve(size_t n) { rows_.reserve(n); cols_.reserve(n); vals_.reserve(n); }
  void add(int i, int j, double v) {
    rows_.push_back(i);
    cols_.push_back(j);
    vals_.push_back(v);
  }
  SparseMatrix compress(int n_rows, int n_cols) const;

 private:
  std::vector<int> rows_, cols_;
  std::vector<double> vals_;
};

std::vector<double> spmv(const SparseMatrix& A, std::span<const double> x);
void spmv(const SparseMatrix& A, std::span<const double> x, std::span<double> y);

SparseMatrix transpose(const SparseMatrix& A);

/// Zero the rows and columns of flagged dofs and put 1 on their diagonal.
/// Preserves symmetry; intended for homogeneous Dirichlet elimination.
void apply_dirichlet(SparseMatrix& A, const std::vector<unsigned char>& flagged);

/// Per-element symmetric positive definite 2x2 blocks with precomputed
/// inverses (the eliminated auxiliary-variable operator).
class BlockDiag2x2 {
 public:
  BlockDiag2x2() = default;
  explicit BlockDiag2x2(std::vector<Mat2> blocks);

  int size() const { return static_cast<int>(blocks_.size()); }
  const Mat2& block(int e) const { return blocks_[e]; }
  const Mat2& inverse(int e) const { return inverses_[e]; }
  Vec2 apply_inverse(int e, Vec2 v) const { return matvec(inverses_[e], v); }

 private:
  std::vector<Mat2> blocks_;
  std::vector<Mat2> inverses_;
};

}  // namespace nematic
