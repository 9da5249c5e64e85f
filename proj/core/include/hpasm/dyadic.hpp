#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "hpasm/lgl.hpp"

namespace hpasm {

inline constexpr double kDefaultAlpha = 1.2;

/// Exact dyadic rational x = -1 + 2 * numerator / 2^level on [-1, 1], kept in
/// lowest terms (numerator odd unless level == 0).
class DyadicPoint {
 public:
  DyadicPoint() = default;
  DyadicPoint(std::int64_t numerator, int level);

  std::int64_t numerator() const { return numerator_; }
  int level() const { return level_; }
  double coordinate() const;

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
  friend std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b);

 private:
  std::int64_t numerator_ = 0;
  int level_ = 0;
};

/// Partition of [-1, 1] by dyadic breakpoints, generated from an LGL grid by
/// bisection with resolution parameter alpha.
struct DyadicGrid {
  double alpha = kDefaultAlpha;
  int source_degree = 0;
  std::vector<DyadicPoint> breakpoints;

  std::size_t num_intervals() const { return breakpoints.size() - 1; }
  std::vector<double> coordinates() const;
};

/// Bisects every interval I while |I| > alpha * (shortest LGL subinterval
/// overlapping I with positive measure). Requires alpha > 1.
DyadicGrid dyadic_from_lgl(const LglGrid& grid, double alpha = kDefaultAlpha);

/// Memoized dyadic_from_lgl(lgl_nodes(p), alpha).
const DyadicGrid& dyadic_grid(int p, double alpha = kDefaultAlpha);

/// Shortest LGL subinterval having positive-measure overlap with [a, b].
double min_overlapping_lgl(const LglGrid& grid, double a, double b);

/// True iff every breakpoint of `coarse` is a breakpoint of `fine`.
bool check_nested(const DyadicGrid& coarse, const DyadicGrid& fine);

/// Union of breakpoints.
DyadicGrid join(const DyadicGrid& a, const DyadicGrid& b);

/// Intersection of breakpoints; always contains the endpoints.
DyadicGrid meet(const DyadicGrid& a, const DyadicGrid& b);

/// Builds a grid from arbitrary breakpoints (sorted, deduplicated, must contain
/// both endpoints).
DyadicGrid make_dyadic_grid(std::vector<DyadicPoint> points, double alpha = kDefaultAlpha,
                            int source_degree = 0);

}  // namespace hpasm
