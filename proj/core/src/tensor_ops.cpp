#include "hpasm/tensor_ops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "hpasm/errors.hpp"

namespace hpasm {

Grid1D::Grid1D(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error("a 1D grid needs at least two points");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i] > points_[i - 1])) throw Error("1D grid points must be strictly increasing");
}

std::vector<double> barycentric_weights(const Grid1D& source) {
  const auto& x = source.points();
  const std::size_t n = x.size();
  const double scale = 4.0 / (source.back() - source.front());
  std::vector<double> w(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) w[j] *= scale * (x[j] - x[k]);
    w[j] = 1.0 / w[j];
  }
  return w;
}

DenseMatrix lagrange_eval_matrix(const Grid1D& source, std::span<const double> targets) {
  const auto& x = source.points();
  const auto w = barycentric_weights(source);
  const std::size_t n = x.size();
  DenseMatrix e = DenseMatrix::Zero(static_cast<Eigen::Index>(targets.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double t = targets[i];
    auto hit = std::find(x.begin(), x.end(), t);
    if (hit != x.end()) {
      e(static_cast<Eigen::Index>(i), hit - x.begin()) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = w[j] / (t - x[j]);
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = c;
      denom += c;
    }
    e.row(static_cast<Eigen::Index>(i)) /= denom;
  }
  return e;
}

namespace {

/// Differentiation matrix on the source nodes themselves.
DenseMatrix nodal_diff(const Grid1D& source) {
  const auto& x = source.points();
  const auto w = barycentric_weights(source);
  const auto n = static_cast<Eigen::Index>(x.size());
  DenseMatrix d = DenseMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = (w[j] / w[i]) / (x[i] - x[j]);
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

}  // namespace

DenseMatrix lagrange_deriv_matrix(const Grid1D& source, std::span<const double> targets) {
  // l_j' lies in the span of the source basis, so evaluate its nodal values.
  return lagrange_eval_matrix(source, targets) * nodal_diff(source);
}

DenseMatrix p1_eval_matrix(const Grid1D& source, std::span<const double> targets) {
  const auto& x = source.points();
  const auto n = static_cast<Eigen::Index>(x.size());
  DenseMatrix e = DenseMatrix::Zero(static_cast<Eigen::Index>(targets.size()), n);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double t = targets[i];
    const auto row = static_cast<Eigen::Index>(i);
    auto it = std::upper_bound(x.begin(), x.end(), t);
    auto j = static_cast<Eigen::Index>(it - x.begin());
    j = std::clamp<Eigen::Index>(j, 1, n - 1);
    const double a = x[j - 1], b = x[j];
    const double s = (t - a) / (b - a);
    if (s == 0.0) {
      e(row, j - 1) = 1.0;
    } else if (s == 1.0) {
      e(row, j) = 1.0;
    } else {
      e(row, j - 1) = 1.0 - s;
      e(row, j) = s;
    }
  }
  return e;
}

DenseMatrix gram_p1(const Grid1D& grid, int m) {
  const auto& x = grid.points();
  const auto n = static_cast<Eigen::Index>(x.size());
  DenseMatrix g = DenseMatrix::Zero(n, n);
  for (Eigen::Index e = 0; e + 1 < n; ++e) {
    const double h = x[e + 1] - x[e];
    if (m == 0) {
      g(e, e) += h / 3.0;
      g(e + 1, e + 1) += h / 3.0;
      g(e, e + 1) += h / 6.0;
      g(e + 1, e) += h / 6.0;
    } else {
      g(e, e) += 1.0 / h;
      g(e + 1, e + 1) += 1.0 / h;
      g(e, e + 1) -= 1.0 / h;
      g(e + 1, e) -= 1.0 / h;
    }
  }
  return g;
}

namespace {

DenseMatrix compute_gram_spectral(int p, int m) {
  const Grid1D nodes = Grid1D::from(lgl_nodes(p));
  const LglGrid& quad = lgl_nodes(p + 2);
  const DenseMatrix basis = m == 0 ? lagrange_eval_matrix(nodes, quad.nodes)
                                   : lagrange_deriv_matrix(nodes, quad.nodes);
  const Eigen::Map<const Vector> w(quad.weights.data(), static_cast<Eigen::Index>(quad.weights.size()));
  DenseMatrix g = basis.transpose() * w.asDiagonal() * basis;
  return 0.5 * (g + g.transpose());
}

}  // namespace

const DenseMatrix& gram_spectral(int p, int m) {
  if (p < 1) throw DegreeTooSmall("spectral Gram matrix needs p >= 1");
  if (m != 0 && m != 1) throw Error("Gram matrix order m must be 0 or 1");
  struct Entry {
    std::once_flag once;
    DenseMatrix g;
  };
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Entry>> table;
  Entry* entry = nullptr;
  {
    std::lock_guard lock(mutex);
    auto& slot = table[{p, m}];
    if (!slot) slot = std::make_unique<Entry>();
    entry = slot.get();
  }
  std::call_once(entry->once, [&] { entry->g = compute_gram_spectral(p, m); });
  return entry->g;
}

DenseMatrix diff_matrix(int p) { return nodal_diff(Grid1D::from(lgl_nodes(p))); }

DenseMatrix shape_product_matrix(int z, const Grid1D& source) {
  if (z != -1 && z != 1) throw Error("vertex sign z must be -1 or +1");
  const auto& x = source.points();
  Vector d(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) d[static_cast<Eigen::Index>(i)] = 0.5 * (1.0 + z * x[i]);
  return d.asDiagonal();
}

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

Vector apply_tensor(const DenseMatrix& a, const DenseMatrix& b, const Vector& x) {
  if (x.size() != a.cols() * b.cols())
    throw DimensionMismatch(static_cast<std::size_t>(a.cols() * b.cols()), static_cast<std::size_t>(x.size()));
  Eigen::Map<const DenseMatrix> xm(x.data(), a.cols(), b.cols());
  DenseMatrix y = a * xm * b.transpose();
  return Eigen::Map<const Vector>(y.data(), y.size());
}

}  // namespace hpasm
