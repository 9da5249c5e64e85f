#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hpasm/dyadic.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Strictly increasing point set with at least two points.
class Grid1D {
 public:
  explicit Grid1D(std::vector<double> points);
  static Grid1D from(const LglGrid& g) { return Grid1D(g.nodes); }
  static Grid1D from(const DyadicGrid& g) { return Grid1D(g.coordinates()); }

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

 private:
  std::vector<double> points_;
};

/// Barycentric weights of the nodal Lagrange basis, rescaled by 4/(b - a) per
/// factor so that high-degree products stay in range.
std::vector<double> barycentric_weights(const Grid1D& source);

/// (i, j) = l_j(t_i) for the Lagrange basis of `source`.
DenseMatrix lagrange_eval_matrix(const Grid1D& source, std::span<const double> targets);

/// (i, j) = l_j'(t_i).
DenseMatrix lagrange_deriv_matrix(const Grid1D& source, std::span<const double> targets);

/// (i, j) = phi_j(t_i) for the piecewise linear hat basis of `source`.
DenseMatrix p1_eval_matrix(const Grid1D& source, std::span<const double> targets);

/// Exact P1 mass (m = 0) or stiffness (m = 1) matrix.
DenseMatrix gram_p1(const Grid1D& grid, int m);

/// Gram matrix of the LGL-p nodal basis on [-1, 1] in L2 (m = 0) or the H1
/// seminorm (m = 1), integrated exactly with LGL of degree p + 2. Memoized.
const DenseMatrix& gram_spectral(int p, int m);

/// Collocation differentiation matrix on the LGL-p grid.
DenseMatrix diff_matrix(int p);

/// diag((1 + z x_i) / 2) for z in {-1, +1}.
DenseMatrix shape_product_matrix(int z, const Grid1D& source);

/// Kronecker product A (x) B.
DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

/// Applies (B (x) A) to x viewed as an a.cols() x b.cols() column-major array,
/// i.e. the 2D tensor index is i + nx * j with i the fast index.
Vector apply_tensor(const DenseMatrix& a, const DenseMatrix& b, const Vector& x);

}  // namespace hpasm
