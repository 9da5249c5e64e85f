#include "hpasm/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iterator>
#include <map>
#include <memory>
#include <mutex>

#include "hpasm/errors.hpp"

namespace hpasm {

namespace {

constexpr int kMaxLevel = 60;

}  // namespace

DyadicPoint::DyadicPoint(std::int64_t numerator, int level) : numerator_(numerator), level_(level) {
  if (level < 0 || level > kMaxLevel) throw Error("dyadic level out of range");
  if (numerator < 0 || numerator > (std::int64_t{1} << level))
    throw Error("dyadic point outside [-1, 1]");
  while (level_ > 0 && numerator_ % 2 == 0) {
    numerator_ /= 2;
    --level_;
  }
}

double DyadicPoint::coordinate() const {
  return -1.0 + std::ldexp(static_cast<double>(numerator_), 1 - level_);
}

std::strong_ordering operator<=>(const DyadicPoint& a, const DyadicPoint& b) {
  const int level = std::max(a.level_, b.level_);
  const std::int64_t na = a.numerator_ << (level - a.level_);
  const std::int64_t nb = b.numerator_ << (level - b.level_);
  return na <=> nb;
}

std::vector<double> DyadicGrid::coordinates() const {
  std::vector<double> x;
  x.reserve(breakpoints.size());
  for (const auto& b : breakpoints) x.push_back(b.coordinate());
  return x;
}

double min_overlapping_lgl(const LglGrid& grid, double a, double b) {
  const auto& x = grid.nodes;
  // First LGL subinterval [x_{i-1}, x_i] with x_i > a.
  auto it = std::upper_bound(x.begin(), x.end(), a);
  std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(1, std::distance(x.begin(), it)));
  double shortest = INFINITY;
  for (; i < x.size() && x[i - 1] < b; ++i) {
    if (std::min(b, x[i]) - std::max(a, x[i - 1]) > 0.0) shortest = std::min(shortest, x[i] - x[i - 1]);
  }
  return shortest;
}

DyadicGrid dyadic_from_lgl(const LglGrid& grid, double alpha) {
  if (!(alpha > 1.0)) throw Error("dyadic grid parameter alpha must exceed 1");
  DyadicGrid out;
  out.alpha = alpha;
  out.source_degree = grid.degree;
  out.breakpoints.emplace_back(0, 0);

  // Depth-first over (left numerator, level); emits left-to-right.
  struct Interval {
    std::int64_t numerator;
    int level;
  };
  std::vector<Interval> stack{{0, 0}};
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const double a = DyadicPoint(iv.numerator, iv.level).coordinate();
    const double b = DyadicPoint(iv.numerator + 1, iv.level).coordinate();
    const double length = b - a;
    if (length > alpha * min_overlapping_lgl(grid, a, b)) {
      if (iv.level == kMaxLevel) throw Error("dyadic bisection exceeded maximum depth");
      stack.push_back({2 * iv.numerator + 1, iv.level + 1});
      stack.push_back({2 * iv.numerator, iv.level + 1});
    } else {
      out.breakpoints.emplace_back(iv.numerator + 1, iv.level);
    }
  }
  return out;
}

const DyadicGrid& dyadic_grid(int p, double alpha) {
  struct Entry {
    std::once_flag once;
    DyadicGrid grid;
  };
  static std::mutex mutex;
  static std::map<std::pair<int, std::uint64_t>, std::unique_ptr<Entry>> table;

  std::uint64_t bits = 0;
  std::memcpy(&bits, &alpha, sizeof bits);
  Entry* entry = nullptr;
  {
    std::lock_guard lock(mutex);
    auto& slot = table[{p, bits}];
    if (!slot) slot = std::make_unique<Entry>();
    entry = slot.get();
  }
  std::call_once(entry->once, [&] { entry->grid = dyadic_from_lgl(lgl_nodes(p), alpha); });
  return entry->grid;
}

bool check_nested(const DyadicGrid& coarse, const DyadicGrid& fine) {
  return std::includes(fine.breakpoints.begin(), fine.breakpoints.end(), coarse.breakpoints.begin(),
                       coarse.breakpoints.end());
}

DyadicGrid make_dyadic_grid(std::vector<DyadicPoint> points, double alpha, int source_degree) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 2 || points.front() != DyadicPoint(0, 0) || points.back() != DyadicPoint(1, 0))
    throw Error("dyadic grid must contain both endpoints -1 and 1");
  DyadicGrid g;
  g.alpha = alpha;
  g.source_degree = source_degree;
  g.breakpoints = std::move(points);
  return g;
}

DyadicGrid join(const DyadicGrid& a, const DyadicGrid& b) {
  DyadicGrid g;
  g.alpha = std::min(a.alpha, b.alpha);
  g.source_degree = std::max(a.source_degree, b.source_degree);
  std::set_union(a.breakpoints.begin(), a.breakpoints.end(), b.breakpoints.begin(), b.breakpoints.end(),
                 std::back_inserter(g.breakpoints));
  return g;
}

DyadicGrid meet(const DyadicGrid& a, const DyadicGrid& b) {
  DyadicGrid g;
  g.alpha = std::max(a.alpha, b.alpha);
  g.source_degree = std::min(a.source_degree, b.source_degree);
  std::set_intersection(a.breakpoints.begin(), a.breakpoints.end(), b.breakpoints.begin(),
                        b.breakpoints.end(), std::back_inserter(g.breakpoints));
  return g;
}

}  // namespace hpasm
