#pragma once

#include <memory>
#include <utility>
#include <vector>

namespace hpasm {

/// Legendre-Gauss-Lobatto nodes and weights of degree p on [-1, 1]:
/// the endpoints together with the zeros of L_p'. The rule is exact for
/// polynomials of degree 2p - 1.
struct LglGrid {
  int degree = 1;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  /// Length of subinterval [x_{i-1}, x_i], 1 <= i <= p.
  double spacing(int i) const { return nodes[i] - nodes[i - 1]; }
};

/// Values (L_p(x), L_p'(x)) from the three-term recurrence.
std::pair<double, double> legendre_eval(int p, double x);

/// Computes a fresh grid. Throws NonConvergence if Newton stalls.
LglGrid compute_lgl(int p);

/// Memoized grid for degree p >= 1; safe under concurrent access.
const LglGrid& lgl_nodes(int p);

/// max_i max(h_{i+1}/h_i, h_i/h_{i+1}); throws DegreeTooSmall for p < 2.
double quasi_uniformity_ratio(const LglGrid& grid);

}  // namespace hpasm
