#include "hpasm/dofmap.hpp"

#include <algorithm>
#include <type_traits>

#include "hpasm/errors.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {

std::vector<double> family_points(NodeFamily family, int degree, double alpha) {
  if (family == NodeFamily::Spectral) return lgl_nodes(degree).nodes;
  return dyadic_grid(degree, alpha).coordinates();
}

DenseMatrix family_interpolation(NodeFamily family, const std::vector<double>& source,
                                 const std::vector<double>& targets) {
  const Grid1D grid(source);
  return family == NodeFamily::Spectral ? lagrange_eval_matrix(grid, targets) : p1_eval_matrix(grid, targets);
}

SparseMatrix DofMap::extension(std::size_t c) const {
  std::vector<Triplet> t;
  t.reserve(cells_[c].entries.size());
  for (const auto& e : cells_[c].entries) t.emplace_back(e.local, e.global, e.coeff);
  SparseMatrix m(cells_[c].local_size, num_dofs_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Vector DofMap::gather(std::size_t c, const Vector& global) const {
  if (global.size() != num_dofs_)
    throw DimensionMismatch(static_cast<std::size_t>(num_dofs_), static_cast<std::size_t>(global.size()));
  Vector local = Vector::Zero(cells_[c].local_size);
  for (const auto& e : cells_[c].entries) local[e.local] += e.coeff * global[e.global];
  return local;
}

void DofMap::scatter_add(std::size_t c, const Vector& local, Vector& global) const {
  for (const auto& e : cells_[c].entries) global[e.global] += e.coeff * local[e.local];
}

DofMap make_dg_dofmap(const RectMesh& mesh) {
  DofMap d;
  d.flavor_ = DofFlavor::DG;
  d.family_ = NodeFamily::Spectral;
  d.dim_ = mesh.dim();
  d.cells_.resize(mesh.num_cells());
  Eigen::Index next = 0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    auto& cd = d.cells_[c];
    for (int k = 0; k < 2; ++k)
      cd.points[k] = k < mesh.dim() ? lgl_nodes(mesh.cell(c).degrees[k]).nodes : std::vector<double>{0.0};
    const int nx = static_cast<int>(cd.points[0].size());
    const int ny = static_cast<int>(cd.points[1].size());
    cd.local_size = nx * ny;
    cd.offset = next;
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int local = i + nx * j;
        cd.entries.push_back({local, next + local, 1.0});
        d.sites_.push_back({c, {cd.points[0][i], cd.points[1][j]}});
      }
    }
    next += cd.local_size;
  }
  d.num_dofs_ = next;
  return d;
}

DofMap make_cg_dofmap(const RectMesh& mesh, NodeFamily family, bool dirichlet, double alpha) {
  DofMap d;
  d.flavor_ = DofFlavor::CG;
  d.family_ = family;
  d.dirichlet_ = dirichlet;
  d.alpha_ = alpha;
  d.dim_ = mesh.dim();
  const int dim = mesh.dim();
  d.cells_.resize(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    auto& cd = d.cells_[c];
    for (int k = 0; k < 2; ++k)
      cd.points[k] = k < dim ? family_points(family, mesh.cell(c).degrees[k], alpha) : std::vector<double>{0.0};
    cd.local_size = static_cast<int>(cd.points[0].size() * cd.points[1].size());
  }

  Eigen::Index next = 0;
  auto corner_ref = [dim](int corner) {
    std::array<double, 2> r{0.0, 0.0};
    for (int k = 0; k < dim; ++k) r[k] = (corner >> k) & 1 ? 1.0 : -1.0;
    return r;
  };

  const auto& vertices = mesh.vertices();
  std::vector<Eigen::Index> vertex_dof(vertices.size(), -1);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (dirichlet && vertices[v].on_boundary) continue;
    vertex_dof[v] = next++;
    const auto& inc = vertices[v].cells.front();
    d.sites_.push_back({inc.cell, corner_ref(inc.corner)});
  }

  // Face traces (2D only; in 1D faces are vertices).
  const auto& faces = mesh.faces();
  std::vector<std::vector<double>> face_points(faces.size());
  std::vector<std::vector<Eigen::Index>> face_dofs(faces.size());
  if (dim == 2) {
    for (std::size_t f = 0; f < faces.size(); ++f) {
      const Face& face = faces[f];
      const int t = 1 - face.direction;
      const auto c0 = static_cast<std::size_t>(face.cells[0]);
      const int p0 = mesh.cell(c0).degrees[t];
      int coarse = p0;
      if (!face.is_boundary()) {
        const int p1 = mesh.cell(static_cast<std::size_t>(face.cells[1])).degrees[t];
        coarse = std::min(p0, p1);
        if (family == NodeFamily::Dyadic)
          face_points[f] = meet(dyadic_grid(p0, alpha), dyadic_grid(p1, alpha)).coordinates();
      }
      if (face_points[f].empty()) face_points[f] = family_points(family, coarse, alpha);
      if (dirichlet && face.is_boundary()) continue;
      const double normal_ref = face.side ? 1.0 : -1.0;
      for (std::size_t s = 1; s + 1 < face_points[f].size(); ++s) {
        face_dofs[f].push_back(next++);
        std::array<double, 2> ref{};
        ref[face.direction] = normal_ref;
        ref[t] = face_points[f][s];
        d.sites_.push_back({c0, ref});
      }
    }
  }

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    auto& cd = d.cells_[c];
    const auto& xs = cd.points[0];
    const auto& ys = cd.points[1];
    const int nx = static_cast<int>(xs.size());
    const int ny = static_cast<int>(ys.size());

    auto add_trace = [&](int local, int k, int side, double coord) {
      const std::size_t f = mesh.cell_face(c, k, side);
      const int t = 1 - k;
      const auto& tp = face_points[f];
      const DenseMatrix row = family_interpolation(family, tp, {coord});
      const int lo_corner = side << k;
      const int hi_corner = lo_corner | (1 << t);
      const auto n = static_cast<Eigen::Index>(tp.size());
      for (Eigen::Index s = 0; s < n; ++s) {
        if (row(0, s) == 0.0) continue;
        Eigen::Index g = -1;
        if (s == 0) g = vertex_dof[mesh.cell_vertex(c, lo_corner)];
        else if (s == n - 1) g = vertex_dof[mesh.cell_vertex(c, hi_corner)];
        else if (!face_dofs[f].empty()) g = face_dofs[f][static_cast<std::size_t>(s - 1)];
        if (g >= 0) cd.entries.push_back({local, g, row(0, s)});
      }
    };

    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const int local = i + nx * j;
        const bool on_x = i == 0 || i == nx - 1;
        const bool on_y = dim == 2 && (j == 0 || j == ny - 1);
        if (on_x && (on_y || dim == 1)) {
          const int corner = (i == nx - 1 ? 1 : 0) | (dim == 2 && j == ny - 1 ? 2 : 0);
          const Eigen::Index g = vertex_dof[mesh.cell_vertex(c, corner)];
          if (g >= 0) cd.entries.push_back({local, g, 1.0});
        } else if (on_x) {
          add_trace(local, 0, i == nx - 1 ? 1 : 0, ys[j]);
        } else if (on_y) {
          add_trace(local, 1, j == ny - 1 ? 1 : 0, xs[i]);
        } else {
          cd.entries.push_back({local, next++, 1.0});
          d.sites_.push_back({c, {xs[i], ys[j]}});
        }
      }
    }
  }
  d.num_dofs_ = next;
  return d;
}

template <typename CellMatrix>
SymSparseMatrix assemble_from_cells(const DofMap& dofs, const std::vector<CellMatrix>& cell_matrices) {
  if (cell_matrices.size() != dofs.num_cells()) throw DimensionMismatch(dofs.num_cells(), cell_matrices.size());
  std::vector<Triplet> triplets;
  for (std::size_t c = 0; c < dofs.num_cells(); ++c) {
    const auto entries = dofs.entries(c);
    std::vector<Eigen::Index> globals;
    for (const auto& e : entries) globals.push_back(e.global);
    std::sort(globals.begin(), globals.end());
    globals.erase(std::unique(globals.begin(), globals.end()), globals.end());
    if (globals.empty()) continue;
    std::vector<Triplet> et;
    for (const auto& e : entries) {
      const auto col = std::lower_bound(globals.begin(), globals.end(), e.global) - globals.begin();
      et.emplace_back(e.local, col, e.coeff);
    }
    SparseMatrix ext(dofs.local_size(c), static_cast<Eigen::Index>(globals.size()));
    ext.setFromTriplets(et.begin(), et.end());

    const CellMatrix& k = cell_matrices[c];
    if (k.rows() != dofs.local_size(c) || k.cols() != dofs.local_size(c))
      throw DimensionMismatch(static_cast<std::size_t>(dofs.local_size(c)), static_cast<std::size_t>(k.rows()));
    if constexpr (std::is_same_v<CellMatrix, SparseMatrix>) {
      const SparseMatrix ke = k * ext;
      const SparseMatrix local = ext.transpose() * ke;
      for (Eigen::Index j = 0; j < local.outerSize(); ++j)
        for (SparseMatrix::InnerIterator it(local, j); it; ++it) {
          const auto gi = globals[static_cast<std::size_t>(it.row())];
          const auto gj = globals[static_cast<std::size_t>(j)];
          if (gi >= gj && it.value() != 0.0) triplets.emplace_back(gi, gj, it.value());
        }
    } else {
      const DenseMatrix ke = k * ext;
      const DenseMatrix local = ext.transpose() * ke;
      for (Eigen::Index j = 0; j < local.cols(); ++j)
        for (Eigen::Index i = 0; i < local.rows(); ++i) {
          const auto gi = globals[static_cast<std::size_t>(i)];
          const auto gj = globals[static_cast<std::size_t>(j)];
          if (gi >= gj && local(i, j) != 0.0) triplets.emplace_back(gi, gj, local(i, j));
        }
    }
  }
  return SymSparseMatrix(dofs.num_dofs(), triplets);
}

template SymSparseMatrix assemble_from_cells<DenseMatrix>(const DofMap&, const std::vector<DenseMatrix>&);
template SymSparseMatrix assemble_from_cells<SparseMatrix>(const DofMap&, const std::vector<SparseMatrix>&);

}  // namespace hpasm
