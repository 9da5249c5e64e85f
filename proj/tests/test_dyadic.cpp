#include <cmath>

#include <gtest/gtest.h>

#include "hpasm/dyadic.hpp"
#include "hpasm/errors.hpp"
#include "hpasm/lgl.hpp"

namespace hpasm {
namespace {

std::vector<double> coords(const DyadicGrid& g) { return g.coordinates(); }

DyadicGrid grid_of(std::vector<DyadicPoint> pts) { return make_dyadic_grid(std::move(pts)); }

TEST(DyadicPoint, NormalizesToLowestTerms) {
  const DyadicPoint a(4, 3);
  EXPECT_EQ(a.numerator(), 1);
  EXPECT_EQ(a.level(), 1);
  EXPECT_EQ(a, DyadicPoint(1, 1));
  EXPECT_DOUBLE_EQ(a.coordinate(), 0.0);
  EXPECT_LT(DyadicPoint(1, 2), DyadicPoint(1, 1));
  EXPECT_LT(DyadicPoint(1, 1), DyadicPoint(3, 2));
  EXPECT_THROW(DyadicPoint(5, 2), Error);
}

TEST(DyadicFromLgl, DegreeOne) {
  EXPECT_EQ(coords(dyadic_grid(1, 1.2)), (std::vector<double>{-1, 1}));
}

TEST(DyadicFromLgl, DegreeTwo) {
  EXPECT_EQ(coords(dyadic_grid(2, 1.2)), (std::vector<double>{-1, 0, 1}));
}

TEST(DyadicFromLgl, DegreeFour) {
  EXPECT_EQ(coords(dyadic_grid(4, 1.2)), (std::vector<double>{-1, -0.75, -0.5, 0, 0.5, 0.75, 1}));
  const auto& b = dyadic_grid(4, 1.2).breakpoints;
  EXPECT_EQ(b[1], DyadicPoint(1, 3));
  EXPECT_EQ(b[5], DyadicPoint(7, 3));
}

TEST(DyadicFromLgl, RejectsAlphaAtMostOne) {
  EXPECT_THROW(dyadic_from_lgl(lgl_nodes(4), 1.0), Error);
}

TEST(DyadicFromLgl, MinOverlapIgnoresTouchingIntervals) {
  const LglGrid& g = lgl_nodes(2);
  EXPECT_DOUBLE_EQ(min_overlapping_lgl(g, 0.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(min_overlapping_lgl(g, -1.0, 1.0), 1.0);
}

TEST(DyadicProperty, ResolutionMinimalitySymmetry) {
  for (double alpha : {1.2, 1.5, 2.0}) {
    for (int p = 1; p <= 96; ++p) {
      const LglGrid& lgl = lgl_nodes(p);
      const DyadicGrid& g = dyadic_grid(p, alpha);
      const auto x = g.coordinates();
      ASSERT_EQ(x.front(), -1.0);
      ASSERT_EQ(x.back(), 1.0);
      for (std::size_t i = 1; i < x.size(); ++i) {
        ASSERT_LT(x[i - 1], x[i]);
        const double len = x[i] - x[i - 1];
        EXPECT_LE(len, alpha * min_overlapping_lgl(lgl, x[i - 1], x[i]) * (1 + 1e-14));
        // every interval is a dyadic cell: length 2^(1-l) at an aligned position
        const double level = std::log2(2.0 / len);
        EXPECT_EQ(level, std::round(level));
        EXPECT_EQ(std::fmod(x[i - 1] + 1.0, len), 0.0);
      }
      for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], -x[x.size() - 1 - i]);
      // merging any sibling pair would violate the resolution rule
      for (std::size_t i = 2; i < x.size(); ++i) {
        const double l1 = x[i - 1] - x[i - 2], l2 = x[i] - x[i - 1];
        if (l1 != l2) continue;
        const double merged = 2 * l1;
        if (std::fmod(x[i - 2] + 1.0, merged) != 0.0) continue;
        EXPECT_GT(merged, alpha * min_overlapping_lgl(lgl, x[i - 2], x[i])) << "p=" << p << " i=" << i;
      }
    }
  }
}

TEST(DyadicProperty, SizeControl) {
  for (int p = 1; p <= 256; ++p) EXPECT_LE(static_cast<double>(dyadic_grid(p).num_intervals()) / p, 8.0);
}

TEST(CheckNested, Examples) {
  const auto g101 = grid_of({{0, 0}, {1, 1}, {1, 0}});
  const auto fine = grid_of({{0, 0}, {1, 2}, {1, 1}, {3, 2}, {1, 0}});
  EXPECT_TRUE(check_nested(g101, fine));
  const auto quarter = grid_of({{0, 0}, {3, 3}, {1, 0}});  // -1/4
  const auto halves = grid_of({{0, 0}, {1, 2}, {1, 1}, {1, 0}});
  EXPECT_DOUBLE_EQ(quarter.breakpoints[1].coordinate(), -0.25);
  EXPECT_FALSE(check_nested(quarter, halves));
  EXPECT_TRUE(check_nested(fine, fine));
}

TEST(Join, Examples) {
  const auto a = grid_of({{0, 0}, {1, 1}, {1, 0}});
  const auto b = grid_of({{0, 0}, {1, 2}, {1, 0}});
  EXPECT_EQ(coords(join(a, b)), (std::vector<double>{-1, -0.5, 0, 1}));
  EXPECT_EQ(join(a, a).breakpoints, a.breakpoints);
  EXPECT_EQ(coords(join(dyadic_grid(2), dyadic_grid(4))), (std::vector<double>{-1, -0.75, -0.5, 0, 0.5, 0.75, 1}));
}

TEST(Meet, CommonBreakpoints) {
  const auto a = grid_of({{0, 0}, {1, 1}, {1, 0}});
  const auto b = grid_of({{0, 0}, {1, 2}, {1, 0}});
  EXPECT_EQ(coords(meet(a, b)), (std::vector<double>{-1, 1}));
  EXPECT_EQ(coords(meet(dyadic_grid(2), dyadic_grid(4))), (std::vector<double>{-1, 0, 1}));
}

TEST(DyadicProperty, JoinMeetLattice) {
  for (int p = 1; p <= 40; ++p)
    for (int q = 1; q <= 40; q += 3) {
      const DyadicGrid& a = dyadic_grid(p);
      const DyadicGrid& b = dyadic_grid(q);
      const DyadicGrid j = join(a, b);
      const DyadicGrid m = meet(a, b);
      EXPECT_TRUE(check_nested(a, j));
      EXPECT_TRUE(check_nested(b, j));
      EXPECT_TRUE(check_nested(m, a));
      EXPECT_TRUE(check_nested(m, b));
      EXPECT_EQ(join(a, b).breakpoints, join(b, a).breakpoints);
    }
}

TEST(MakeDyadicGrid, RequiresEndpoints) {
  EXPECT_THROW(make_dyadic_grid({{0, 0}, {1, 1}}), Error);
  const auto g = make_dyadic_grid({{1, 0}, {1, 1}, {0, 0}, {1, 1}});
  EXPECT_EQ(coords(g), (std::vector<double>{-1, 0, 1}));
}

}  // namespace
}  // namespace hpasm
