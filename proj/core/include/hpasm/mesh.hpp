#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace hpasm {

inline constexpr int kMaxDim = 2;

/// Axis-aligned cell with its own anisotropic degree vector. Components beyond
/// the mesh dimension are ignored.
struct RectCell {
  std::array<double, kMaxDim> origin{0.0, 0.0};
  std::array<double, kMaxDim> sides{1.0, 1.0};
  std::array<int, kMaxDim> degrees{1, 1};

  double lower(int k) const { return origin[k]; }
  double upper(int k) const { return origin[k] + sides[k]; }
};

inline constexpr std::ptrdiff_t kNoCell = -1;

/// A (d-1)-dimensional facet. Interior faces have cells[0] on the low side
/// (the face lies on its upper boundary in `direction`) and cells[1] on the high
/// side. Boundary faces have cells[1] == kNoCell and `side` telling which
/// boundary of cells[0] they cover (0 = lower, 1 = upper).
struct Face {
  std::array<std::ptrdiff_t, 2> cells{kNoCell, kNoCell};
  int direction = 0;
  int side = 1;
  double position = 0.0;
  std::array<double, 2> extent{0.0, 0.0};  // tangential interval, 2D only

  bool is_boundary() const { return cells[1] == kNoCell; }
};

struct VertexIncidence {
  std::size_t cell;
  int corner;  // bit k set <=> upper end in direction k
};

struct Vertex {
  std::array<double, kMaxDim> coords{0.0, 0.0};
  std::vector<VertexIncidence> cells;
  bool on_boundary = false;
};

/// Geometrically conforming mesh of rectangles (d = 2) or intervals (d = 1).
/// Immutable once built.
class RectMesh {
 public:
  int dim() const { return dim_; }
  std::size_t num_cells() const { return cells_.size(); }
  const RectCell& cell(std::size_t c) const { return cells_[c]; }
  const std::vector<RectCell>& cells() const { return cells_; }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(std::size_t f) const { return faces_[f]; }
  std::size_t num_interior_faces() const;
  std::size_t num_boundary_faces() const;

  const std::vector<Vertex>& vertices() const { return vertices_; }

  /// Face id of side `side` (0 lower, 1 upper) of cell `c` in direction `k`.
  std::size_t cell_face(std::size_t c, int k, int side) const {
    return cell_faces_[c][2 * k + side];
  }
  /// Vertex id of corner `corner` of cell `c`.
  std::size_t cell_vertex(std::size_t c, int corner) const { return cell_vertices_[c][corner]; }

  int corners_per_cell() const { return 1 << dim_; }
  double diameter() const { return diameter_; }

 private:
  friend RectMesh build_mesh(std::vector<RectCell> cells, int dim);

  int dim_ = 2;
  double diameter_ = 0.0;
  std::vector<RectCell> cells_;
  std::vector<Face> faces_;
  std::vector<Vertex> vertices_;
  std::vector<std::array<std::size_t, 2 * kMaxDim>> cell_faces_;
  std::vector<std::array<std::size_t, 1 << kMaxDim>> cell_vertices_;
};

/// Derives faces and vertex incidence and validates conformity.
/// Throws EmptyMesh, ConformityError, or Error for invalid cells.
RectMesh build_mesh(std::vector<RectCell> cells, int dim);

/// nx-by-ny array of equal cells of size hx-by-hy starting at (x0, y0), all of
/// degree p. For dim == 1 the y arguments are ignored.
RectMesh uniform_mesh(int dim, int nx, int ny, double hx, double hy, std::array<int, 2> p,
                      std::array<double, 2> origin = {0.0, 0.0});

/// Same cell layout with degrees replaced.
RectMesh with_degrees(const RectMesh& mesh, const std::vector<std::array<int, 2>>& degrees);

struct GradingReport {
  double max_degree_ratio = 1.0;
  double max_size_ratio = 1.0;
  std::vector<std::size_t> violations;  // interior face ids

  bool ok() const { return violations.empty(); }
};

inline constexpr double kDefaultGradingRatio = 2.0;

/// Neighbor ratios of degrees and side lengths, per direction, over all
/// interior faces.
GradingReport check_grading(const RectMesh& mesh, double max_ratio = kDefaultGradingRatio);

/// Reads the line-oriented cell format: `x0 y0 Hx Hy px py` per line in 2D or
/// `x0 Hx px` in 1D; `#` starts a comment.
RectMesh read_mesh(std::istream& in);
RectMesh read_mesh_file(const std::string& path);
void write_mesh(std::ostream& out, const RectMesh& mesh);

}  // namespace hpasm
