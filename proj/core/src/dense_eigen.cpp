#include "hpasm/dense_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hpasm/errors.hpp"

namespace hpasm {

SymmetricEigen jacobi_eigen(const DenseMatrix& input, double tol, int max_sweeps) {
  if (input.rows() != input.cols()) throw DimensionMismatch(input.rows(), input.cols());
  const Eigen::Index n = input.rows();
  DenseMatrix a = 0.5 * (input + input.transpose());
  DenseMatrix v = DenseMatrix::Identity(n, n);
  const double norm = a.norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  SymmetricEigen out;
  for (int sweep = 0; sweep < max_sweeps && norm > 0.0; ++sweep) {
    if (off_norm() <= tol * norm) break;
    ++out.sweeps;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // Columns p, q, then rows p, q (column-major storage favours columns).
        auto col_p = a.col(p);
        auto col_q = a.col(q);
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = col_p[k], akq = col_q[k];
          col_p[k] = c * akp - s * akq;
          col_q[k] = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        auto vp = v.col(p);
        auto vq = v.col(q);
        for (Eigen::Index k = 0; k < n; ++k) {
          const double x = vp[k], y = vq[k];
          vp[k] = c * x - s * y;
          vq[k] = s * x + c * y;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

DenseMatrix cholesky_lower(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch(m.rows(), m.cols());
  const Eigen::Index n = m.rows();
  DenseMatrix l = DenseMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = m(j, j) - l.row(j).head(j).squaredNorm();
    if (!(d > 0.0)) throw CholeskyFailure("matrix is not positive definite (pivot " + std::to_string(j) + ")");
    l(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i)
      l(i, j) = (m(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
  }
  return l;
}

namespace {

DenseMatrix reduce(const DenseMatrix& a, const DenseMatrix& l) {
  const auto lt = l.triangularView<Eigen::Lower>();
  DenseMatrix x = lt.solve(a);                             // L^{-1} A
  DenseMatrix c = lt.solve(x.transpose()).transpose();     // L^{-1} A L^{-T}
  return 0.5 * (c + c.transpose());
}

}  // namespace

GeneralizedEigen generalized_eigen(const DenseMatrix& a, const DenseMatrix& m) {
  if (a.rows() != m.rows() || a.cols() != m.cols()) throw DimensionMismatch(m.rows(), a.rows());
  const DenseMatrix l = cholesky_lower(m);
  const SymmetricEigen se = jacobi_eigen(reduce(a, l));
  GeneralizedEigen out;
  out.values = se.values;
  out.vectors = l.transpose().triangularView<Eigen::Upper>().solve(se.vectors);
  return out;
}

double power_iteration_max(const DenseMatrix& a, const DenseMatrix& m, double tol, int max_iter,
                           std::uint64_t seed) {
  const DenseMatrix c = reduce(a, cholesky_lower(m));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector x(c.rows());
  for (auto& e : x) e = normal(rng);
  x.normalize();
  double lambda = x.dot(c * x);
  for (int it = 0; it < max_iter; ++it) {
    Vector y = c * x;
    y.normalize();
    const double next = y.dot(c * y);
    x = std::move(y);
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return lambda;
}

}  // namespace hpasm
