#pragma once

#include <array>
#include <span>
#include <vector>

#include "hpasm/dyadic.hpp"
#include "hpasm/mesh.hpp"
#include "hpasm/sym_sparse.hpp"
#include "hpasm/tensor_ops.hpp"

namespace hpasm {

enum class DofFlavor { DG, CG };

/// Nodal family of the cell-local spaces: tensor LGL grids carrying Q_p, or
/// tensor dyadic grids carrying piecewise multilinear functions.
enum class NodeFamily { Spectral, Dyadic };

/// One term of the cell extension: local nodal value += coeff * global dof.
struct DofEntry {
  int local;
  Eigen::Index global;
  double coeff;
};

/// Where a global dof "lives": a cell containing it and the reference
/// coordinates of its nodal point in that cell.
struct DofSite {
  std::size_t cell;
  std::array<double, 2> ref{0.0, 0.0};
};

/// Maps global coefficient vectors to cell-local tensor nodal values. Local
/// node (i, j) has index i + nx * j with i running along x.
class DofMap {
 public:
  DofFlavor flavor() const { return flavor_; }
  NodeFamily family() const { return family_; }
  bool dirichlet() const { return dirichlet_; }
  double alpha() const { return alpha_; }
  int dim() const { return dim_; }

  Eigen::Index num_dofs() const { return num_dofs_; }
  std::size_t num_cells() const { return cells_.size(); }

  /// Reference nodes of cell c in direction k (only k < dim is meaningful).
  const std::vector<double>& cell_points(std::size_t c, int k) const { return cells_[c].points[k]; }
  int points_per_direction(std::size_t c, int k) const {
    return static_cast<int>(cells_[c].points[k].size());
  }
  int local_size(std::size_t c) const { return cells_[c].local_size; }
  std::span<const DofEntry> entries(std::size_t c) const { return cells_[c].entries; }
  const DofSite& site(Eigen::Index g) const { return sites_[static_cast<std::size_t>(g)]; }

  /// First global index of cell c (DG flavor only).
  Eigen::Index dg_offset(std::size_t c) const { return cells_[c].offset; }

  /// Sparse local_size(c) x num_dofs() extension operator of cell c.
  SparseMatrix extension(std::size_t c) const;

  /// Local nodal values of cell c for a global coefficient vector.
  Vector gather(std::size_t c, const Vector& global) const;
  /// global += E_c^T local.
  void scatter_add(std::size_t c, const Vector& local, Vector& global) const;

 private:
  friend DofMap make_dg_dofmap(const RectMesh&);
  friend DofMap make_cg_dofmap(const RectMesh&, NodeFamily, bool, double);

  struct CellData {
    std::array<std::vector<double>, 2> points;
    int local_size = 0;
    Eigen::Index offset = 0;
    std::vector<DofEntry> entries;
  };

  DofFlavor flavor_ = DofFlavor::DG;
  NodeFamily family_ = NodeFamily::Spectral;
  bool dirichlet_ = false;
  double alpha_ = kDefaultAlpha;
  int dim_ = 2;
  Eigen::Index num_dofs_ = 0;
  std::vector<CellData> cells_;
  std::vector<DofSite> sites_;
};

/// Discontinuous tensor LGL nodal space: sum over cells of prod_k (p_k + 1).
DofMap make_dg_dofmap(const RectMesh& mesh);

/// Conforming space over the mesh. Traces on a shared face live on the
/// coarser of the two sides: LGL nodes of the minimum tangential degree
/// (spectral) or the common dyadic breakpoints (dyadic). With `dirichlet`,
/// boundary dofs are eliminated.
DofMap make_cg_dofmap(const RectMesh& mesh, NodeFamily family, bool dirichlet,
                      double alpha = kDefaultAlpha);

/// Cell-local reference nodes in direction k for a family.
std::vector<double> family_points(NodeFamily family, int degree, double alpha);

/// Interpolation from nodal values on `source` to `targets` within a family.
DenseMatrix family_interpolation(NodeFamily family, const std::vector<double>& source,
                                 const std::vector<double>& targets);

/// Galerkin assembly sum_c E_c^T K_c E_c from cell-local matrices.
template <typename CellMatrix>
SymSparseMatrix assemble_from_cells(const DofMap& dofs, const std::vector<CellMatrix>& cell_matrices);

}  // namespace hpasm
