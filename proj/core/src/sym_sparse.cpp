#include "hpasm/sym_sparse.hpp"

#include "hpasm/errors.hpp"

namespace hpasm {

SymSparseMatrix::SymSparseMatrix(Eigen::Index n, const std::vector<Triplet>& full_triplets) : lower_(n, n) {
  std::vector<Triplet> kept;
  kept.reserve(full_triplets.size() / 2 + static_cast<std::size_t>(n));
  for (const auto& t : full_triplets)
    if (t.row() >= t.col()) kept.push_back(t);
  lower_.setFromTriplets(kept.begin(), kept.end());
  lower_.makeCompressed();
}

SparseMatrix SymSparseMatrix::full() const {
  SparseMatrix f = lower_.selfadjointView<Eigen::Lower>();
  return f;
}

DenseMatrix SymSparseMatrix::dense() const { return DenseMatrix(full()); }

Vector SymSparseMatrix::diagonal() const { return lower_.diagonal(); }

double SymSparseMatrix::coeff(Eigen::Index i, Eigen::Index j) const {
  return i >= j ? lower_.coeff(i, j) : lower_.coeff(j, i);
}

Vector SymSparseMatrix::multiply(const Vector& x) const {
  if (x.size() != dimension())
    throw DimensionMismatch(static_cast<std::size_t>(dimension()), static_cast<std::size_t>(x.size()));
  return lower_.selfadjointView<Eigen::Lower>() * x;
}

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index ja = 0; ja < a.outerSize(); ++ja)
    for (SparseMatrix::InnerIterator ia(a, ja); ia; ++ia)
      for (Eigen::Index jb = 0; jb < b.outerSize(); ++jb)
        for (SparseMatrix::InnerIterator ib(b, jb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ja * b.cols() + jb, ia.value() * ib.value());
  SparseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

}  // namespace hpasm
