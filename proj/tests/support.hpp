#pragma once

#include <random>
#include <vector>

#include "hpasm/mesh.hpp"
#include "hpasm/tensor_ops.hpp"

namespace hpasm::testing {

inline constexpr std::uint64_t kSeed = 0x5EED;

/// Tensor grid of cells with random widths in [1, 2] and random degrees in
/// [lo, 2 lo], so every neighbor ratio stays within the default grading bound.
inline RectMesh random_graded_mesh(std::mt19937_64& rng, int dim, int max_cells, int lo) {
  std::uniform_int_distribution<int> count(1, max_cells);
  std::uniform_real_distribution<double> width(1.0, 2.0);
  std::uniform_int_distribution<int> degree(lo, 2 * lo);
  const int nx = count(rng);
  const int ny = dim == 2 ? count(rng) : 1;
  std::vector<double> xs{0.0}, ys{0.0};
  for (int i = 0; i < nx; ++i) xs.push_back(xs.back() + width(rng));
  for (int j = 0; j < ny; ++j) ys.push_back(ys.back() + width(rng));
  std::vector<RectCell> cells;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      RectCell c;
      c.origin = {xs[i], dim == 2 ? ys[j] : 0.0};
      c.sides = {xs[i + 1] - xs[i], dim == 2 ? ys[j + 1] - ys[j] : 1.0};
      c.degrees = {degree(rng), dim == 2 ? degree(rng) : 1};
      cells.push_back(c);
    }
  return build_mesh(cells, dim);
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (auto& e : v) e = normal(rng);
  return v;
}

inline RectCell square(double x0, double y0, double h, int p) {
  RectCell c;
  c.origin = {x0, y0};
  c.sides = {h, h};
  c.degrees = {p, p};
  return c;
}

}  // namespace hpasm::testing
