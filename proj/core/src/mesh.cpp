#include "hpasm/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hpasm/errors.hpp"

namespace hpasm {

namespace {

enum class Contact { Disjoint, Overlap, Face, Lower };

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
  std::vector<std::size_t> parent;
};

void validate_cell(const RectCell& c, std::size_t id, int dim) {
  for (int k = 0; k < dim; ++k) {
    if (!(c.sides[k] > 0.0) || !std::isfinite(c.sides[k]) || !std::isfinite(c.origin[k]))
      throw Error("cell " + std::to_string(id) + ": side lengths must be finite and positive");
    if (c.degrees[k] < 1)
      throw Error("cell " + std::to_string(id) + ": degrees must be >= 1");
  }
}

}  // namespace

std::size_t RectMesh::num_interior_faces() const {
  return static_cast<std::size_t>(
      std::count_if(faces_.begin(), faces_.end(), [](const Face& f) { return !f.is_boundary(); }));
}

std::size_t RectMesh::num_boundary_faces() const { return faces_.size() - num_interior_faces(); }

RectMesh build_mesh(std::vector<RectCell> cells, int dim) {
  if (dim < 1 || dim > kMaxDim) throw Error("mesh dimension must be 1 or 2");
  if (cells.empty()) throw EmptyMesh();
  for (std::size_t c = 0; c < cells.size(); ++c) validate_cell(cells[c], c, dim);
  if (dim == 1) {
    for (auto& c : cells) {
      c.origin[1] = 0.0;
      c.sides[1] = 1.0;
      c.degrees[1] = 1;
    }
  }

  RectMesh mesh;
  mesh.dim_ = dim;

  std::array<double, kMaxDim> lo{}, hi{};
  for (int k = 0; k < dim; ++k) {
    lo[k] = cells[0].lower(k);
    hi[k] = cells[0].upper(k);
    for (const auto& c : cells) {
      lo[k] = std::min(lo[k], c.lower(k));
      hi[k] = std::max(hi[k], c.upper(k));
    }
  }
  double diam2 = 0.0;
  for (int k = 0; k < dim; ++k) diam2 += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  mesh.diameter_ = std::sqrt(diam2);
  const double tol = 1e-12 * mesh.diameter_;

  const std::size_t n = cells.size();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  mesh.cell_faces_.assign(n, {});
  for (auto& cf : mesh.cell_faces_) cf.fill(unset);

  UnionFind components(n);

  // Interior faces from pairwise contact.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const RectCell& ca = cells[a];
      const RectCell& cb = cells[b];
      int touching = 0;
      int touch_dir = -1;
      bool disjoint = false;
      for (int k = 0; k < dim; ++k) {
        const double ov = std::min(ca.upper(k), cb.upper(k)) - std::max(ca.lower(k), cb.lower(k));
        if (ov < -tol) {
          disjoint = true;
          break;
        }
        if (ov <= tol) {
          ++touching;
          touch_dir = k;
        }
      }
      if (disjoint) continue;
      if (touching == 0) throw ConformityError(a, b, "cell interiors overlap");
      components.unite(a, b);
      if (touching > 1) continue;  // corner contact

      const int k = touch_dir;
      for (int t = 0; t < dim; ++t) {
        if (t == k) continue;
        if (std::abs(ca.lower(t) - cb.lower(t)) > tol || std::abs(ca.upper(t) - cb.upper(t)) > tol)
          throw ConformityError(a, b, "cells share only part of a face");
      }
      const bool a_below = std::abs(ca.upper(k) - cb.lower(k)) <= tol;
      const std::size_t minus = a_below ? a : b;
      const std::size_t plus = a_below ? b : a;
      Face f;
      f.cells = {static_cast<std::ptrdiff_t>(minus), static_cast<std::ptrdiff_t>(plus)};
      f.direction = k;
      f.side = 1;
      f.position = cells[minus].upper(k);
      if (dim == 2) {
        const int t = 1 - k;
        f.extent = {cells[minus].lower(t), cells[minus].upper(t)};
      }
      auto& slot_minus = mesh.cell_faces_[minus][2 * k + 1];
      auto& slot_plus = mesh.cell_faces_[plus][2 * k + 0];
      if (slot_minus != unset || slot_plus != unset)
        throw ConformityError(a, b, "face shared by more than two cells");
      slot_minus = slot_plus = mesh.faces_.size();
      mesh.faces_.push_back(f);
    }
  }

  for (std::size_t c = 0; c < n; ++c) {
    for (int k = 0; k < dim; ++k) {
      for (int side = 0; side < 2; ++side) {
        auto& slot = mesh.cell_faces_[c][2 * k + side];
        if (slot != unset) continue;
        Face f;
        f.cells = {static_cast<std::ptrdiff_t>(c), kNoCell};
        f.direction = k;
        f.side = side;
        f.position = side ? cells[c].upper(k) : cells[c].lower(k);
        if (dim == 2) {
          const int t = 1 - k;
          f.extent = {cells[c].lower(t), cells[c].upper(t)};
        }
        slot = mesh.faces_.size();
        mesh.faces_.push_back(f);
      }
    }
  }

  // Vertices, deduplicated up to the geometric tolerance.
  const int corners = 1 << dim;
  mesh.cell_vertices_.assign(n, {});
  for (std::size_t c = 0; c < n; ++c) {
    for (int corner = 0; corner < corners; ++corner) {
      std::array<double, kMaxDim> x{0.0, 0.0};
      for (int k = 0; k < dim; ++k)
        x[k] = (corner >> k) & 1 ? cells[c].upper(k) : cells[c].lower(k);
      std::size_t id = mesh.vertices_.size();
      for (std::size_t v = 0; v < mesh.vertices_.size(); ++v) {
        bool same = true;
        for (int k = 0; k < dim; ++k) same = same && std::abs(mesh.vertices_[v].coords[k] - x[k]) <= tol;
        if (same) {
          id = v;
          break;
        }
      }
      if (id == mesh.vertices_.size()) {
        Vertex vert;
        vert.coords = x;
        mesh.vertices_.push_back(vert);
      }
      mesh.vertices_[id].cells.push_back({c, corner});
      mesh.cell_vertices_[c][corner] = id;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (int k = 0; k < dim; ++k) {
      for (int side = 0; side < 2; ++side) {
        if (!mesh.faces_[mesh.cell_faces_[c][2 * k + side]].is_boundary()) continue;
        for (int corner = 0; corner < corners; ++corner)
          if (((corner >> k) & 1) == side) mesh.vertices_[mesh.cell_vertices_[c][corner]].on_boundary = true;
      }
    }
  }

  const std::size_t root = components.find(0);
  for (std::size_t c = 1; c < n; ++c)
    if (components.find(c) != root) throw ConformityError(0, c, "mesh is not connected");

  mesh.cells_ = std::move(cells);
  return mesh;
}

RectMesh uniform_mesh(int dim, int nx, int ny, double hx, double hy, std::array<int, 2> p,
                      std::array<double, 2> origin) {
  std::vector<RectCell> cells;
  const int rows = dim == 1 ? 1 : ny;
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < nx; ++i) {
      RectCell c;
      c.origin = {origin[0] + i * hx, origin[1] + j * hy};
      c.sides = {hx, hy};
      c.degrees = p;
      cells.push_back(c);
    }
  }
  return build_mesh(std::move(cells), dim);
}

RectMesh with_degrees(const RectMesh& mesh, const std::vector<std::array<int, 2>>& degrees) {
  if (degrees.size() != mesh.num_cells()) throw DimensionMismatch(mesh.num_cells(), degrees.size());
  auto cells = mesh.cells();
  for (std::size_t c = 0; c < cells.size(); ++c) cells[c].degrees = degrees[c];
  return build_mesh(std::move(cells), mesh.dim());
}

GradingReport check_grading(const RectMesh& mesh, double max_ratio) {
  GradingReport report;
  const double slack = 1e-12;
  for (std::size_t f = 0; f < mesh.faces().size(); ++f) {
    const Face& face = mesh.face(f);
    if (face.is_boundary()) continue;
    const RectCell& a = mesh.cell(static_cast<std::size_t>(face.cells[0]));
    const RectCell& b = mesh.cell(static_cast<std::size_t>(face.cells[1]));
    bool violated = false;
    for (int k = 0; k < mesh.dim(); ++k) {
      const double pa = a.degrees[k], pb = b.degrees[k];
      const double dr = std::max(pa, pb) / std::min(pa, pb);
      const double sr = std::max(a.sides[k], b.sides[k]) / std::min(a.sides[k], b.sides[k]);
      report.max_degree_ratio = std::max(report.max_degree_ratio, dr);
      report.max_size_ratio = std::max(report.max_size_ratio, sr);
      violated = violated || dr > max_ratio * (1 + slack) || sr > max_ratio * (1 + slack);
    }
    if (violated) report.violations.push_back(f);
  }
  return report;
}

}  // namespace hpasm
