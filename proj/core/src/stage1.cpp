#include <cmath>

#include "hpasm/asm.hpp"
#include "hpasm/errors.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {

SmootherWeights stage1_smoother(const RectMesh& mesh, const AsmConfig& config) {
  if (!(config.beta1 > 0.0 && config.c1 > 0.0 && config.rho1 > 0.0 && config.gamma > 0.0))
    throw Error("smoother parameters must be positive");
  const DofMap dg = make_dg_dofmap(mesh);
  const int dim = mesh.dim();

  SmootherWeights out;
  out.beta1 = config.beta1;
  out.c1 = config.c1;
  out.rho1 = config.rho1;
  out.diagonal = Vector::Zero(dg.num_dofs());
  out.interior = Vector::Zero(dg.num_dofs());

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const RectCell& cell = mesh.cell(c);
    std::array<std::vector<double>, 2> w;
    for (int k = 0; k < 2; ++k) {
      if (k >= dim) {
        w[k] = {1.0};
        continue;
      }
      const LglGrid& g = lgl_nodes(cell.degrees[k]);
      for (double wi : g.weights) w[k].push_back(0.5 * cell.sides[k] * wi);
    }
    std::array<std::array<double, 2>, 2> omega{};
    for (int k = 0; k < dim; ++k)
      for (int side = 0; side < 2; ++side) omega[k][side] = penalty_weight(mesh, mesh.cell_face(c, k, side));

    const int nx = static_cast<int>(w[0].size());
    const int ny = static_cast<int>(w[1].size());
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::array<int, 2> idx{i, j};
        double inv_sq = 0.0, prod = 1.0;
        for (int k = 0; k < dim; ++k) {
          const double wk = w[k][static_cast<std::size_t>(idx[k])];
          inv_sq += 1.0 / (wk * wk);
          prod *= wk;
        }
        const double big_w = inv_sq * prod;
        const double interior = config.beta1 * config.c1 * config.c1 * big_w;
        double faces = 0.0;
        for (int k = 0; k < dim; ++k) {
          const int last = cell.degrees[k];
          const double w_face = dim == 1 ? 1.0 : w[1 - k][static_cast<std::size_t>(idx[1 - k])];
          if (idx[k] == 0) faces += omega[k][0] * w_face;
          if (idx[k] == last) faces += omega[k][1] * w_face;
        }
        const Eigen::Index g = dg.dg_offset(c) + i + nx * j;
        out.interior[g] = interior;
        out.diagonal[g] = interior + config.beta1 * config.gamma * config.rho1 * faces;
      }
    }
  }
  return out;
}

}  // namespace hpasm
