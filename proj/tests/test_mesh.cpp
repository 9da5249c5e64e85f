#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include <gtest/gtest.h>

#include "hpasm/errors.hpp"
#include "hpasm/mesh.hpp"
#include "support.hpp"

namespace hpasm {
namespace {

using testing::square;

TEST(BuildMesh, SingleSquareHasFourBoundaryFaces) {
  const RectMesh m = build_mesh({square(0, 0, 1, 3)}, 2);
  EXPECT_EQ(m.num_boundary_faces(), 4u);
  EXPECT_EQ(m.num_interior_faces(), 0u);
  EXPECT_EQ(m.vertices().size(), 4u);
  for (const auto& v : m.vertices()) EXPECT_TRUE(v.on_boundary);
}

TEST(BuildMesh, TwoByOneArray) {
  const RectMesh m = build_mesh({square(0, 0, 1, 2), square(1, 0, 1, 2)}, 2);
  EXPECT_EQ(m.num_interior_faces(), 1u);
  EXPECT_EQ(m.num_boundary_faces(), 6u);
  for (const auto& f : m.faces()) {
    if (f.is_boundary()) continue;
    EXPECT_EQ(f.direction, 0);
    EXPECT_DOUBLE_EQ(f.position, 1.0);
    EXPECT_EQ(f.cells[0], 0);
    EXPECT_EQ(f.cells[1], 1);
  }
}

TEST(BuildMesh, HalfSideOverlapIsRejected) {
  try {
    build_mesh({square(0, 0, 1, 2), square(1, 0.5, 1, 2)}, 2);
    FAIL() << "expected ConformityError";
  } catch (const ConformityError& e) {
    EXPECT_EQ(std::min(e.first, e.second), 0u);
    EXPECT_EQ(std::max(e.first, e.second), 1u);
  }
}

TEST(BuildMesh, OverlappingInteriorsAreRejected) {
  EXPECT_THROW(build_mesh({square(0, 0, 1, 2), square(0.5, 0.5, 1, 2)}, 2), ConformityError);
}

TEST(BuildMesh, HangingNodeIsRejected) {
  EXPECT_THROW(build_mesh({square(0, 0, 2, 2), square(2, 0, 1, 2), square(2, 1, 1, 2)}, 2), ConformityError);
}

TEST(BuildMesh, DisconnectedIsRejected) {
  EXPECT_THROW(build_mesh({square(0, 0, 1, 2), square(3, 0, 1, 2)}, 2), ConformityError);
}

TEST(BuildMesh, InvalidCells) {
  EXPECT_THROW(build_mesh({}, 2), EmptyMesh);
  RectCell bad = square(0, 0, 1, 2);
  bad.sides[1] = 0.0;
  EXPECT_THROW(build_mesh({bad}, 2), Error);
  RectCell p0 = square(0, 0, 1, 2);
  p0.degrees[0] = 0;
  EXPECT_THROW(build_mesh({p0}, 2), Error);
  EXPECT_THROW(build_mesh({square(0, 0, 1, 2)}, 3), Error);
}

TEST(BuildMesh, VertexContactOnlyIsConforming) {
  const RectMesh m = build_mesh({square(0, 0, 1, 1), square(1, 0, 1, 1), square(1, 1, 1, 1)}, 2);
  EXPECT_EQ(m.num_interior_faces(), 2u);
}

TEST(BuildMesh, OneDimensional) {
  const RectMesh m = uniform_mesh(1, 3, 1, 0.5, 0.0, {2, 1});
  EXPECT_EQ(m.num_interior_faces(), 2u);
  EXPECT_EQ(m.num_boundary_faces(), 2u);
  EXPECT_EQ(m.vertices().size(), 4u);
  EXPECT_EQ(m.corners_per_cell(), 2);
}

TEST(BuildMesh, UniformGridCounts) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k) {
      const RectMesh m = uniform_mesh(2, n, k, 1.0, 0.5, {1, 1});
      EXPECT_EQ(m.num_interior_faces(), static_cast<std::size_t>(n * (k - 1) + k * (n - 1)));
      EXPECT_EQ(m.vertices().size(), static_cast<std::size_t>((n + 1) * (k + 1)));
      EXPECT_EQ(m.num_boundary_faces(), static_cast<std::size_t>(2 * (n + k)));
    }
}

TEST(BuildMesh, CellFaceAndVertexLookup) {
  const RectMesh m = uniform_mesh(2, 2, 2, 1.0, 1.0, {1, 1});
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    for (int k = 0; k < 2; ++k)
      for (int side = 0; side < 2; ++side) {
        const Face& f = m.face(m.cell_face(c, k, side));
        EXPECT_EQ(f.direction, k);
        EXPECT_DOUBLE_EQ(f.position, side ? m.cell(c).upper(k) : m.cell(c).lower(k));
      }
    for (int corner = 0; corner < 4; ++corner) {
      const Vertex& v = m.vertices()[m.cell_vertex(c, corner)];
      for (int k = 0; k < 2; ++k)
        EXPECT_DOUBLE_EQ(v.coords[k], (corner >> k) & 1 ? m.cell(c).upper(k) : m.cell(c).lower(k));
    }
  }
}

using FaceKey = std::tuple<int, double, double, double, int>;

std::set<FaceKey> face_keys(const RectMesh& m) {
  std::set<FaceKey> keys;
  for (const auto& f : m.faces()) keys.insert({f.direction, f.position, f.extent[0], f.extent[1], f.is_boundary()});
  return keys;
}

TEST(BuildMeshProperty, FacesIndependentOfCellOrder) {
  std::mt19937_64 rng(testing::kSeed);
  for (int trial = 0; trial < 50; ++trial) {
    const RectMesh m = testing::random_graded_mesh(rng, 2, 4, 1);
    auto cells = m.cells();
    std::shuffle(cells.begin(), cells.end(), rng);
    const RectMesh shuffled = build_mesh(cells, 2);
    EXPECT_EQ(face_keys(m), face_keys(shuffled));
    EXPECT_EQ(m.num_interior_faces(), shuffled.num_interior_faces());
    for (const auto& f : shuffled.faces()) {
      if (f.is_boundary()) continue;
      EXPECT_NE(f.cells[0], f.cells[1]);
      EXPECT_LT(shuffled.cell(static_cast<std::size_t>(f.cells[0])).lower(f.direction),
                shuffled.cell(static_cast<std::size_t>(f.cells[1])).lower(f.direction));
    }
  }
}

TEST(Grading, UniformDegrees) {
  const GradingReport r = check_grading(uniform_mesh(2, 3, 3, 1.0, 1.0, {4, 4}));
  EXPECT_DOUBLE_EQ(r.max_degree_ratio, 1.0);
  EXPECT_TRUE(r.ok());
}

TEST(Grading, RatioTwoIsAdmissible) {
  const RectMesh m = build_mesh({square(0, 0, 1, 4), square(1, 0, 1, 8)}, 2);
  const GradingReport r = check_grading(m, 2.0);
  EXPECT_DOUBLE_EQ(r.max_degree_ratio, 2.0);
  EXPECT_TRUE(r.ok());
}

TEST(Grading, RatioFourIsViolation) {
  const RectMesh m = build_mesh({square(0, 0, 1, 2), square(1, 0, 1, 8)}, 2);
  const GradingReport r = check_grading(m, 2.0);
  EXPECT_DOUBLE_EQ(r.max_degree_ratio, 4.0);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_FALSE(m.face(r.violations[0]).is_boundary());
}

TEST(Grading, SizeRatio) {
  RectCell a = square(0, 0, 1, 2);
  RectCell b = square(1, 0, 1, 2);
  b.sides[0] = 3.0;
  const GradingReport r = check_grading(build_mesh({a, b}, 2));
  EXPECT_DOUBLE_EQ(r.max_size_ratio, 3.0);
  EXPECT_FALSE(r.ok());
}

TEST(GradingProperty, InvariantUnderRelabeling) {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int trial = 0; trial < 50; ++trial) {
    RectMesh m = testing::random_graded_mesh(rng, 2, 4, 2);
    auto cells = m.cells();
    std::uniform_int_distribution<int> deg(1, 9);
    for (auto& c : cells) c.degrees = {deg(rng), deg(rng)};
    m = build_mesh(cells, 2);
    std::shuffle(cells.begin(), cells.end(), rng);
    const RectMesh relabeled = build_mesh(cells, 2);
    const GradingReport a = check_grading(m);
    const GradingReport b = check_grading(relabeled);
    EXPECT_DOUBLE_EQ(a.max_degree_ratio, b.max_degree_ratio);
    EXPECT_DOUBLE_EQ(a.max_size_ratio, b.max_size_ratio);
    EXPECT_EQ(a.violations.size(), b.violations.size());
    EXPECT_GE(a.max_degree_ratio, 1.0);
    EXPECT_EQ(a.ok(), a.max_degree_ratio <= 2.0 && a.max_size_ratio <= 2.0);
  }
}

TEST(MeshIo, RoundTrip) {
  std::mt19937_64 rng(testing::kSeed + 2);
  for (int dim = 1; dim <= 2; ++dim) {
    const RectMesh m = testing::random_graded_mesh(rng, dim, 4, 3);
    std::stringstream ss;
    write_mesh(ss, m);
    const RectMesh back = read_mesh(ss);
    ASSERT_EQ(back.num_cells(), m.num_cells());
    EXPECT_EQ(back.dim(), dim);
    for (std::size_t c = 0; c < m.num_cells(); ++c)
      for (int k = 0; k < dim; ++k) {
        EXPECT_EQ(back.cell(c).origin[k], m.cell(c).origin[k]);
        EXPECT_EQ(back.cell(c).sides[k], m.cell(c).sides[k]);
        EXPECT_EQ(back.cell(c).degrees[k], m.cell(c).degrees[k]);
      }
  }
}

TEST(MeshIo, CommentsAndBlankLines) {
  std::istringstream in("# two cells\n0 0 1 1 2 3\n\n1 0 1 1 2 3  # right\n");
  const RectMesh m = read_mesh(in);
  EXPECT_EQ(m.num_cells(), 2u);
  EXPECT_EQ(m.cell(1).degrees[1], 3);
}

TEST(MeshIo, OneDimensionalLines) {
  std::istringstream in("0 0.5 4\n0.5 0.5 4\n");
  const RectMesh m = read_mesh(in);
  EXPECT_EQ(m.dim(), 1);
  EXPECT_EQ(m.num_interior_faces(), 1u);
}

TEST(MeshIo, FormatErrorsCarryLineNumbers) {
  std::istringstream bad_count("0 0 1 1 2 2\n0 1 1\n1 0 1 1 2\n");
  try {
    read_mesh(bad_count);
    FAIL();
  } catch (const MeshFormatError& e) {
    EXPECT_EQ(e.line_number, 2u);
  }
  std::istringstream bad_number("0 0 1 x 2 2\n");
  EXPECT_THROW(read_mesh(bad_number), MeshFormatError);
  std::istringstream bad_degree("0 0 1 1 2.5 2\n");
  EXPECT_THROW(read_mesh(bad_degree), MeshFormatError);
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(read_mesh(empty), EmptyMesh);
}

TEST(Mesh, WithDegrees) {
  const RectMesh m = uniform_mesh(2, 2, 1, 1.0, 1.0, {1, 1});
  const RectMesh d = with_degrees(m, {{3, 4}, {5, 6}});
  EXPECT_EQ(d.cell(1).degrees[0], 5);
  EXPECT_THROW(with_degrees(m, {{3, 4}}), DimensionMismatch);
}

}  // namespace
}  // namespace hpasm
