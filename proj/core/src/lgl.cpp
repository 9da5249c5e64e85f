#include "hpasm/lgl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "hpasm/errors.hpp"

namespace hpasm {

std::pair<double, double> legendre_eval(int p, double x) {
  if (p == 0) return {1.0, 0.0};
  // L_{n+1} = ((2n+1) x L_n - n L_{n-1}) / (n+1),  L'_{n+1} = L'_{n-1} + (2n+1) L_n
  double l_prev = 1.0, l_cur = x;
  double d_prev = 0.0, d_cur = 1.0;
  for (int n = 1; n < p; ++n) {
    const double l_next = ((2 * n + 1) * x * l_cur - n * l_prev) / (n + 1);
    const double d_next = d_prev + (2 * n + 1) * l_cur;
    l_prev = l_cur;
    l_cur = l_next;
    d_prev = d_cur;
    d_cur = d_next;
  }
  return {l_cur, d_cur};
}

LglGrid compute_lgl(int p) {
  if (p < 1) throw DegreeTooSmall("LGL grids need degree >= 1");
  LglGrid g;
  g.degree = p;
  g.nodes.assign(p + 1, 0.0);
  g.weights.assign(p + 1, 0.0);
  g.nodes[0] = -1.0;
  g.nodes[p] = 1.0;

  const double pp1 = static_cast<double>(p) * (p + 1);
  // Only the lower half is solved for; the rest follows by symmetry.
  for (int i = 1; i <= p / 2; ++i) {
    double x = -std::cos(std::numbers::pi * i / p);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const auto [l, dl] = legendre_eval(p, x);
      // (1 - x^2) L'' = 2 x L' - p (p+1) L
      const double d2l = (2.0 * x * dl - pp1 * l) / (1.0 - x * x);
      const double dx = dl / d2l;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NonConvergence(p, i);
    g.nodes[i] = x;
  }
  for (int i = 1; i <= p / 2; ++i) g.nodes[p - i] = -g.nodes[i];
  if (p % 2 == 0) g.nodes[p / 2] = 0.0;

  for (int i = 0; i <= p / 2; ++i) {
    const double l = legendre_eval(p, g.nodes[i]).first;
    g.weights[i] = 2.0 / (pp1 * l * l);
    g.weights[p - i] = g.weights[i];
  }
  return g;
}

const LglGrid& lgl_nodes(int p) {
  struct Entry {
    std::once_flag once;
    LglGrid grid;
  };
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<Entry>> table;

  Entry* entry = nullptr;
  {
    std::lock_guard lock(mutex);
    auto& slot = table[p];
    if (!slot) slot = std::make_unique<Entry>();
    entry = slot.get();
  }
  std::call_once(entry->once, [&] { entry->grid = compute_lgl(p); });
  return entry->grid;
}

double quasi_uniformity_ratio(const LglGrid& grid) {
  if (grid.degree < 2) throw DegreeTooSmall("quasi-uniformity ratio needs p >= 2");
  double worst = 1.0;
  for (int i = 1; i < grid.degree; ++i) {
    const double r = grid.spacing(i + 1) / grid.spacing(i);
    worst = std::max({worst, r, 1.0 / r});
  }
  return worst;
}

}  // namespace hpasm
