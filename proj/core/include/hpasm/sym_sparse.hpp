#pragma once

#include <vector>

#include <Eigen/Sparse>

#include "hpasm/tensor_ops.hpp"

namespace hpasm {

using SparseMatrix = Eigen::SparseMatrix<double>;
using RowSparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<double>;

/// Symmetric sparse matrix stored as the lower triangle in compressed rows.
class SymSparseMatrix {
 public:
  SymSparseMatrix() = default;

  /// Accepts triplets of the full symmetric matrix; entries above the diagonal
  /// are dropped, so symmetry holds by construction. Duplicates are summed.
  SymSparseMatrix(Eigen::Index n, const std::vector<Triplet>& full_triplets);

  Eigen::Index dimension() const { return lower_.rows(); }
  const RowSparseMatrix& lower() const { return lower_; }
  SparseMatrix full() const;
  DenseMatrix dense() const;
  Vector diagonal() const;
  double coeff(Eigen::Index i, Eigen::Index j) const;

  Vector multiply(const Vector& x) const;
  double quadratic_form(const Vector& x) const { return x.dot(multiply(x)); }

 private:
  RowSparseMatrix lower_;
};

/// Kronecker product of sparse matrices.
SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace hpasm
