#include <algorithm>

#include "hpasm/asm.hpp"
#include "hpasm/errors.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {

namespace {

DenseMatrix p1_mass(double h) { return (h / 6.0) * (DenseMatrix(2, 2) << 2.0, 1.0, 1.0, 2.0).finished(); }

DenseMatrix p1_stiff(double h) { return (1.0 / h) * (DenseMatrix(2, 2) << 1.0, -1.0, -1.0, 1.0).finished(); }

DenseMatrix trapezoid(double h) { return (h / 2.0) * DenseMatrix::Identity(2, 2); }

/// Physical LGL subinterval lengths of cell c along k.
std::vector<double> subcell_sides(const RectCell& cell, int k) {
  const LglGrid& g = lgl_nodes(cell.degrees[k]);
  std::vector<double> h;
  for (int i = 1; i <= cell.degrees[k]; ++i) h.push_back(0.5 * cell.sides[k] * g.spacing(i));
  return h;
}

}  // namespace

std::size_t CellClassification::count_anisotropic(std::size_t c, int k) const {
  return static_cast<std::size_t>(std::count(anisotropic[c][k].begin(), anisotropic[c][k].end(), true));
}

CellClassification classify_cells(const RectMesh& mesh, double c_aspect) {
  if (!(c_aspect > 0.0)) throw Error("C_aspect must be positive");
  CellClassification cls;
  cls.c_aspect = c_aspect;
  cls.dim = mesh.dim();
  for (const auto& cell : mesh.cells()) {
    std::array<int, 2> n{cell.degrees[0], 1};
    if (mesh.dim() == 2) n[1] = cell.degrees[1];
    cls.subcells.push_back(n);
    std::array<std::vector<bool>, 2> flags;
    const std::size_t total = static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
    for (int k = 0; k < 2; ++k) flags[k].assign(total, false);
    if (mesh.dim() == 2) {
      const auto hx = subcell_sides(cell, 0);
      const auto hy = subcell_sides(cell, 1);
      for (int b = 0; b < n[1]; ++b)
        for (int a = 0; a < n[0]; ++a) {
          const auto s = static_cast<std::size_t>(a + n[0] * b);
          flags[0][s] = hy[static_cast<std::size_t>(b)] / hx[static_cast<std::size_t>(a)] > c_aspect;
          flags[1][s] = hx[static_cast<std::size_t>(a)] / hy[static_cast<std::size_t>(b)] > c_aspect;
        }
    }
    cls.anisotropic.push_back(std::move(flags));
  }
  return cls;
}

SparseMatrix stage2_cell_bform(const RectMesh& mesh, const CellClassification& cls, std::size_t c) {
  const RectCell& cell = mesh.cell(c);
  const int dim = mesh.dim();
  const int nsx = cls.subcells[c][0];
  const int nsy = cls.subcells[c][1];
  const int nx = nsx + 1;
  const int ny = dim == 2 ? nsy + 1 : 1;
  const auto hx = subcell_sides(cell, 0);
  const std::vector<double> hy = dim == 2 ? subcell_sides(cell, 1) : std::vector<double>{1.0};

  std::vector<Triplet> t;
  for (int b = 0; b < nsy; ++b) {
    for (int a = 0; a < nsx; ++a) {
      const auto s = static_cast<std::size_t>(a + nsx * b);
      const double h[2] = {hx[static_cast<std::size_t>(a)], hy[static_cast<std::size_t>(b)]};
      DenseMatrix local = DenseMatrix::Zero(dim == 2 ? 4 : 2, dim == 2 ? 4 : 2);
      for (int k = 0; k < dim; ++k) {
        const bool aniso = cls.anisotropic[c][k][s];
        if (dim == 1) {
          local += p1_mass(h[0]) / (h[0] * h[0]);
        } else if (!aniso) {
          local += kron(p1_mass(h[1]), p1_mass(h[0])) / (h[k] * h[k]);
        } else if (k == 0) {
          local += kron(trapezoid(h[1]), p1_stiff(h[0]));
        } else {
          local += kron(p1_stiff(h[1]), trapezoid(h[0]));
        }
      }
      const int corners = dim == 2 ? 4 : 2;
      for (int r = 0; r < corners; ++r) {
        const int gr = (a + (r & 1)) + nx * (b + (r >> 1));
        for (int q = 0; q < corners; ++q) {
          const int gq = (a + (q & 1)) + nx * (b + (q >> 1));
          t.emplace_back(gr, gq, local(r, q));
        }
      }
    }
  }
  SparseMatrix m(nx * ny, nx * ny);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

DiscreteSystem stage2_bform(const RectMesh& mesh, const CellClassification& cls, bool dirichlet) {
  if (cls.subcells.size() != mesh.num_cells()) throw DimensionMismatch(mesh.num_cells(), cls.subcells.size());
  DofMap cg = make_cg_dofmap(mesh, NodeFamily::Spectral, dirichlet);
  std::vector<SparseMatrix> cells;
  cells.reserve(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) cells.push_back(stage2_cell_bform(mesh, cls, c));
  return {assemble_from_cells(cg, cells), std::move(cg)};
}

DiscreteSystem dyadic_stiffness(const RectMesh& mesh, double alpha, bool dirichlet) {
  DofMap dd = make_cg_dofmap(mesh, NodeFamily::Dyadic, dirichlet, alpha);
  std::vector<SparseMatrix> cells;
  cells.reserve(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const RectCell& cell = mesh.cell(c);
    const Grid1D gx(dd.cell_points(c, 0));
    const SparseMatrix kx = gram_p1(gx, 1).sparseView();
    if (mesh.dim() == 1) {
      cells.emplace_back((2.0 / cell.sides[0]) * kx);
      continue;
    }
    const Grid1D gy(dd.cell_points(c, 1));
    const SparseMatrix mx = gram_p1(gx, 0).sparseView();
    const SparseMatrix my = gram_p1(gy, 0).sparseView();
    const SparseMatrix ky = gram_p1(gy, 1).sparseView();
    const double rx = cell.sides[1] / cell.sides[0];
    cells.emplace_back(rx * sparse_kron(my, kx) + (1.0 / rx) * sparse_kron(ky, mx));
  }
  return {assemble_from_cells(dd, cells), std::move(dd)};
}

Vector SparseTransfer::apply(const Vector& x) const {
  if (x.size() != m_.cols()) throw DimensionMismatch(static_cast<std::size_t>(m_.cols()), static_cast<std::size_t>(x.size()));
  return m_ * x;
}

Vector SparseTransfer::apply_transpose(const Vector& y) const {
  if (y.size() != m_.rows()) throw DimensionMismatch(static_cast<std::size_t>(m_.rows()), static_cast<std::size_t>(y.size()));
  return m_.transpose() * y;
}

TensorTransfer::TensorTransfer(const RectMesh& mesh, double alpha, bool dirichlet)
    : dim_(mesh.dim()),
      spectral_(make_cg_dofmap(mesh, NodeFamily::Spectral, dirichlet)),
      dyadic_(make_cg_dofmap(mesh, NodeFamily::Dyadic, dirichlet, alpha)) {
  const GradingReport grading = check_grading(mesh);
  if (!grading.ok())
    throw GradingError("transfer needs a graded mesh; " + std::to_string(grading.violations.size()) +
                       " face(s) violate the bound");

  for (const auto& v : mesh.vertices()) {
    std::array<int, 2> p{1 << 30, 1 << 30};
    for (const auto& inc : v.cells)
      for (int k = 0; k < 2; ++k) p[k] = std::min(p[k], mesh.cell(inc.cell).degrees[k]);
    pstar_.push_back(p);
  }

  cells_.resize(mesh.num_cells());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const RectCell& cell = mesh.cell(c);
    auto& cf = cells_[c];
    for (int z = 0; z < mesh.corners_per_cell(); ++z) {
      const auto& ps = pstar_[mesh.cell_vertex(c, z)];
      std::array<DenseMatrix, 2> factors{DenseMatrix::Identity(1, 1), DenseMatrix::Identity(1, 1)};
      for (int k = 0; k < dim_; ++k) {
        const Grid1D dyadic_p(dyadic_.cell_points(c, k));
        const Grid1D dyadic_s(dyadic_grid(ps[k], alpha).coordinates());
        const Grid1D lgl_s(lgl_nodes(ps[k]).nodes);
        const int sign = (z >> k) & 1 ? 1 : -1;
        factors[k] = lagrange_eval_matrix(lgl_s, lgl_nodes(cell.degrees[k]).nodes) *
                     p1_eval_matrix(dyadic_s, lgl_s.points()) * shape_product_matrix(sign, dyadic_s) *
                     p1_eval_matrix(dyadic_p, dyadic_s.points());
      }
      cf.corner.push_back(std::move(factors));
    }
  }

  for (Eigen::Index g = 0; g < spectral_.num_dofs(); ++g) {
    const DofSite& site = spectral_.site(g);
    OwnedDof od{g, Vector::Ones(1), Vector::Ones(1)};
    for (int k = 0; k < dim_; ++k) {
      const double ref[1] = {site.ref[k]};
      const Vector row = lagrange_eval_matrix(Grid1D(spectral_.cell_points(site.cell, k)), ref).row(0).transpose();
      (k == 0 ? od.rx : od.ry) = row;
    }
    cells_[site.cell].owned.push_back(std::move(od));
  }
}

Vector TensorTransfer::apply_cell(std::size_t c, const Vector& dyadic_local) const {
  Vector out = Vector::Zero(spectral_.local_size(c));
  for (const auto& f : cells_[c].corner) out += apply_tensor(f[0], f[1], dyadic_local);
  return out;
}

Vector TensorTransfer::apply(const Vector& x) const {
  if (x.size() != cols()) throw DimensionMismatch(static_cast<std::size_t>(cols()), static_cast<std::size_t>(x.size()));
  Vector out = Vector::Zero(rows());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].owned.empty()) continue;
    const Vector local = apply_cell(c, dyadic_.gather(c, x));
    const Eigen::Map<const DenseMatrix> v(local.data(), spectral_.points_per_direction(c, 0),
                                          spectral_.points_per_direction(c, 1));
    for (const auto& od : cells_[c].owned) out[od.global] = od.rx.dot(v * od.ry);
  }
  return out;
}

Vector TensorTransfer::apply_transpose(const Vector& y) const {
  if (y.size() != rows()) throw DimensionMismatch(static_cast<std::size_t>(rows()), static_cast<std::size_t>(y.size()));
  Vector out = Vector::Zero(cols());
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    if (cells_[c].owned.empty()) continue;
    DenseMatrix l = DenseMatrix::Zero(spectral_.points_per_direction(c, 0), spectral_.points_per_direction(c, 1));
    for (const auto& od : cells_[c].owned) l += y[od.global] * od.rx * od.ry.transpose();
    const Eigen::Map<const Vector> lv(l.data(), l.size());
    Vector dl = Vector::Zero(dyadic_.local_size(c));
    for (const auto& f : cells_[c].corner) dl += apply_tensor(f[0].transpose(), f[1].transpose(), lv);
    dyadic_.scatter_add(c, dl, out);
  }
  return out;
}

SparseMatrix TensorTransfer::to_sparse() const {
  std::vector<Triplet> t;
  for (Eigen::Index j = 0; j < cols(); ++j) {
    const Vector col = apply(Vector::Unit(cols(), j));
    for (Eigen::Index i = 0; i < col.size(); ++i)
      if (col[i] != 0.0) t.emplace_back(i, j, col[i]);
  }
  SparseMatrix m(rows(), cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

std::unique_ptr<TensorTransfer> stage2_transfer(const RectMesh& mesh, double alpha, bool dirichlet) {
  return std::make_unique<TensorTransfer>(mesh, alpha, dirichlet);
}

}  // namespace hpasm
