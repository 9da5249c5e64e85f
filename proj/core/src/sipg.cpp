#include "hpasm/sipg.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "hpasm/errors.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {

namespace {

/// Trace data of one cell on one face, sampled at the face quadrature points.
struct SideTrace {
  Eigen::Index offset = 0;
  std::vector<int> face_nodes;  // local indices, tangential order
  DenseMatrix value;            // nq x face_nodes, signed (jump convention)
  DenseMatrix normal_deriv;     // nq x local_size, scaled (average convention)
};

SideTrace side_trace(const RectMesh& mesh, const DofMap& dg, std::size_t c, int k, int side,
                     const std::vector<double>& tangential_quad, double value_sign, double deriv_scale) {
  const RectCell& cell = mesh.cell(c);
  const int dim = mesh.dim();
  const int pk = cell.degrees[k];
  const int normal_index = side ? pk : 0;

  const DenseMatrix d = diff_matrix(pk);
  const Vector der = (2.0 / cell.sides[k]) * d.row(normal_index).transpose();

  SideTrace s;
  s.offset = dg.dg_offset(c);
  const int nx = dg.points_per_direction(c, 0);
  const int ny = dg.points_per_direction(c, 1);

  if (dim == 1) {
    s.face_nodes = {normal_index};
    s.value = DenseMatrix::Constant(1, 1, value_sign);
    s.normal_deriv = deriv_scale * der.transpose();
    return s;
  }

  const int t = 1 - k;
  const DenseMatrix b = lagrange_eval_matrix(Grid1D::from(lgl_nodes(cell.degrees[t])), tangential_quad);
  const auto nq = b.rows();
  s.value = value_sign * b;
  s.normal_deriv = DenseMatrix::Zero(nq, nx * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int local = i + nx * j;
      if (k == 0) s.normal_deriv.col(local) = deriv_scale * der[i] * b.col(j);
      else s.normal_deriv.col(local) = deriv_scale * der[j] * b.col(i);
    }
  }
  if (k == 0)
    for (int j = 0; j < ny; ++j) s.face_nodes.push_back(normal_index + nx * j);
  else
    for (int i = 0; i < nx; ++i) s.face_nodes.push_back(i + nx * normal_index);
  return s;
}

void add_face_terms(const std::vector<SideTrace>& sides, const Vector& weights, double penalty,
                    std::vector<Triplet>& out) {
  for (const auto& s : sides) {
    for (const auto& r : sides) {
      // -({grad u}, [v]) and its transpose
      const DenseMatrix x = s.normal_deriv.transpose() * weights.asDiagonal() * r.value;
      for (Eigen::Index t = 0; t < x.cols(); ++t) {
        const Eigen::Index col = r.offset + r.face_nodes[static_cast<std::size_t>(t)];
        for (Eigen::Index i = 0; i < x.rows(); ++i) {
          if (x(i, t) == 0.0) continue;
          out.emplace_back(s.offset + i, col, -x(i, t));
          out.emplace_back(col, s.offset + i, -x(i, t));
        }
      }
      // gamma omega_F ([u], [v])
      const DenseMatrix pen = penalty * s.value.transpose() * weights.asDiagonal() * r.value;
      for (Eigen::Index a = 0; a < pen.rows(); ++a)
        for (Eigen::Index b = 0; b < pen.cols(); ++b)
          out.emplace_back(s.offset + s.face_nodes[static_cast<std::size_t>(a)],
                           r.offset + r.face_nodes[static_cast<std::size_t>(b)], pen(a, b));
    }
  }
}

void enforce_grading(const RectMesh& mesh, GradingPolicy policy) {
  if (policy == GradingPolicy::Ignore) return;
  const GradingReport report = check_grading(mesh);
  if (report.ok()) return;
  const std::string msg = "mesh violates the grading bound on " + std::to_string(report.violations.size()) +
                          " face(s) (degree ratio " + std::to_string(report.max_degree_ratio) +
                          ", size ratio " + std::to_string(report.max_size_ratio) + ")";
  if (policy == GradingPolicy::Strict) throw GradingError(msg);
  std::clog << "warning: " << msg << '\n';
}

}  // namespace

double one_sided_penalty(const RectCell& cell, int k) {
  const double p = cell.degrees[k];
  return p * (p + 1.0) / cell.sides[k];
}

double penalty_weight(const RectMesh& mesh, std::size_t face) {
  const Face& f = mesh.face(face);
  const int k = f.direction;
  double w = one_sided_penalty(mesh.cell(static_cast<std::size_t>(f.cells[0])), k);
  if (!f.is_boundary()) w = std::max(w, one_sided_penalty(mesh.cell(static_cast<std::size_t>(f.cells[1])), k));
  return w;
}

DenseMatrix cell_stiffness(const RectCell& cell, int dim) {
  const DenseMatrix& kx = gram_spectral(cell.degrees[0], 1);
  if (dim == 1) return (2.0 / cell.sides[0]) * kx;
  const DenseMatrix& mx = gram_spectral(cell.degrees[0], 0);
  const DenseMatrix& ky = gram_spectral(cell.degrees[1], 1);
  const DenseMatrix& my = gram_spectral(cell.degrees[1], 0);
  const double hx = cell.sides[0], hy = cell.sides[1];
  return (hy / hx) * kron(my, kx) + (hx / hy) * kron(ky, mx);
}

DiscreteSystem assemble_sipg(const RectMesh& mesh, const PenaltyConfig& config, GradingPolicy grading) {
  if (!(config.gamma > 0.0)) throw Error("penalty parameter gamma must be positive");
  enforce_grading(mesh, grading);

  DofMap dg = make_dg_dofmap(mesh);
  std::vector<Triplet> triplets;

  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const DenseMatrix k = cell_stiffness(mesh.cell(c), mesh.dim());
    const Eigen::Index off = dg.dg_offset(c);
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      for (Eigen::Index i = j; i < k.rows(); ++i)
        if (k(i, j) != 0.0) triplets.emplace_back(off + i, off + j, k(i, j));
  }

  for (std::size_t f = 0; f < mesh.faces().size(); ++f) {
    const Face& face = mesh.face(f);
    const int k = face.direction;
    std::vector<double> quad{0.0};
    Vector weights = Vector::Ones(1);
    const auto c0 = static_cast<std::size_t>(face.cells[0]);
    if (mesh.dim() == 2) {
      const int t = 1 - k;
      int pt = mesh.cell(c0).degrees[t];
      if (!face.is_boundary()) pt = std::max(pt, mesh.cell(static_cast<std::size_t>(face.cells[1])).degrees[t]);
      const LglGrid& rule = lgl_nodes(pt + 2);
      quad = rule.nodes;
      const double half = 0.5 * mesh.cell(c0).sides[t];
      weights = half * Eigen::Map<const Vector>(rule.weights.data(), static_cast<Eigen::Index>(rule.weights.size()));
    }

    std::vector<SideTrace> sides;
    if (face.is_boundary()) {
      const double normal = face.side ? 1.0 : -1.0;
      sides.push_back(side_trace(mesh, dg, c0, k, face.side, quad, 1.0, normal));
    } else {
      sides.push_back(side_trace(mesh, dg, c0, k, 1, quad, 1.0, 0.5));
      sides.push_back(side_trace(mesh, dg, static_cast<std::size_t>(face.cells[1]), k, 0, quad, -1.0, 0.5));
    }
    add_face_terms(sides, weights, config.gamma * penalty_weight(mesh, f), triplets);
  }

  return {SymSparseMatrix(dg.num_dofs(), triplets), std::move(dg)};
}

DiscreteSystem assemble_cg_sem(const RectMesh& mesh, bool dirichlet) {
  DofMap cg = make_cg_dofmap(mesh, NodeFamily::Spectral, dirichlet);
  std::vector<DenseMatrix> cells;
  cells.reserve(mesh.num_cells());
  for (const auto& cell : mesh.cells()) cells.push_back(cell_stiffness(cell, mesh.dim()));
  return {assemble_from_cells(cg, cells), std::move(cg)};
}

SparseMatrix injection_matrix(const DofMap& cg, const DofMap& dg) {
  if (dg.flavor() != DofFlavor::DG || cg.num_cells() != dg.num_cells())
    throw Error("injection needs a conforming map and a DG map over the same mesh");
  std::vector<Triplet> t;
  for (std::size_t c = 0; c < cg.num_cells(); ++c) {
    if (cg.local_size(c) != dg.local_size(c))
      throw DimensionMismatch(static_cast<std::size_t>(dg.local_size(c)), static_cast<std::size_t>(cg.local_size(c)));
    for (const auto& e : cg.entries(c)) t.emplace_back(dg.dg_offset(c) + e.local, e.global, e.coeff);
  }
  SparseMatrix s(dg.num_dofs(), cg.num_dofs());
  s.setFromTriplets(t.begin(), t.end());
  return s;
}

namespace {

/// Tensor LGL rule of degree p_k + extra per direction, mapped to the cell,
/// with the nodal basis sampled at its points.
struct CellQuadrature {
  std::vector<double> x, y, wx, wy;
  DenseMatrix ex, ey;  // basis values at quadrature points
};

CellQuadrature cell_quadrature(const RectMesh& mesh, const DofMap& dofs, std::size_t c, int extra) {
  const RectCell& cell = mesh.cell(c);
  CellQuadrature q;
  for (int k = 0; k < 2; ++k) {
    auto& pts = k == 0 ? q.x : q.y;
    auto& wts = k == 0 ? q.wx : q.wy;
    auto& e = k == 0 ? q.ex : q.ey;
    if (k >= mesh.dim()) {
      pts = {0.0};
      wts = {1.0};
      e = DenseMatrix::Ones(1, 1);
      continue;
    }
    const LglGrid& rule = lgl_nodes(cell.degrees[k] + extra);
    e = family_interpolation(dofs.family(), dofs.cell_points(c, k), rule.nodes);
    const double half = 0.5 * cell.sides[k];
    for (std::size_t i = 0; i < rule.size(); ++i) {
      pts.push_back(cell.origin[k] + half * (rule.nodes[i] + 1.0));
      wts.push_back(half * rule.weights[i]);
    }
  }
  return q;
}

}  // namespace

Vector assemble_load(const RectMesh& mesh, const DofMap& dofs, const ScalarField& f) {
  Vector load = Vector::Zero(dofs.num_dofs());
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellQuadrature q = cell_quadrature(mesh, dofs, c, 2);
    DenseMatrix fw(q.x.size(), q.y.size());
    for (std::size_t a = 0; a < q.x.size(); ++a)
      for (std::size_t b = 0; b < q.y.size(); ++b)
        fw(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = q.wx[a] * q.wy[b] * f(q.x[a], q.y[b]);
    const DenseMatrix local = q.ex.transpose() * fw * q.ey;  // nx x ny
    dofs.scatter_add(c, Eigen::Map<const Vector>(local.data(), local.size()), load);
  }
  return load;
}

double evaluate(const RectMesh& mesh, const DofMap& dofs, const Vector& coeffs, std::size_t c, double x,
                double y) {
  const RectCell& cell = mesh.cell(c);
  const std::array<double, 2> phys{x, y};
  const Vector local = dofs.gather(c, coeffs);
  DenseMatrix ex = DenseMatrix::Ones(1, 1), ey = DenseMatrix::Ones(1, 1);
  for (int k = 0; k < mesh.dim(); ++k) {
    const double ref = std::clamp(2.0 * (phys[k] - cell.origin[k]) / cell.sides[k] - 1.0, -1.0, 1.0);
    (k == 0 ? ex : ey) = family_interpolation(dofs.family(), dofs.cell_points(c, k), {ref});
  }
  const Eigen::Map<const DenseMatrix> v(local.data(), ex.cols(), ey.cols());
  return (ex * v * ey.transpose())(0, 0);
}

double l2_error(const RectMesh& mesh, const DofMap& dofs, const Vector& coeffs, const ScalarField& exact) {
  double sum = 0.0;
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    const CellQuadrature q = cell_quadrature(mesh, dofs, c, 6);
    const Vector local = dofs.gather(c, coeffs);
    const Eigen::Map<const DenseMatrix> v(local.data(), q.ex.cols(), q.ey.cols());
    const DenseMatrix uh = q.ex * v * q.ey.transpose();
    for (std::size_t a = 0; a < q.x.size(); ++a)
      for (std::size_t b = 0; b < q.y.size(); ++b) {
        const double e = uh(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) - exact(q.x[a], q.y[b]);
        sum += q.wx[a] * q.wy[b] * e * e;
      }
  }
  return std::sqrt(sum);
}

}  // namespace hpasm
