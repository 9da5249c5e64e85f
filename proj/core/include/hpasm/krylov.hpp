#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hpasm/errors.hpp"
#include "hpasm/tensor_ops.hpp"

namespace hpasm {

using OperatorFn = std::function<Vector(const Vector&)>;

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

struct SolveReport {
  int iterations = 0;
  double final_relative_residual = 0.0;
  double lambda_min_est = 1.0;
  double lambda_max_est = 1.0;
  double kappa_est = 1.0;
  bool converged = false;
  /// sqrt(r^T C r) after each iteration, relative to the initial value.
  std::vector<double> residual_history;
};

struct PcgResult {
  Vector solution;
  SolveReport report;
};

/// Thrown when the iteration budget runs out; carries the partial result.
class MaxIterReached : public Error {
 public:
  explicit MaxIterReached(PcgResult partial)
      : Error("PCG reached the iteration limit"), result(std::move(partial)) {}
  PcgResult result;
};

/// Preconditioned conjugate gradients from a zero initial guess. The
/// extreme eigenvalues of C A are estimated from the Lanczos tridiagonal
/// built out of the CG coefficients. Throws BreakdownError on a nonpositive
/// r^T C r or p^T A p, and MaxIterReached when max_iter is exhausted.
PcgResult pcg(const OperatorFn& a, const OperatorFn& c, const Vector& rhs, double tol, int max_iter);

/// Deterministic standard normal vector.
Vector random_vector(Eigen::Index n, std::uint64_t seed = kDefaultSeed);

}  // namespace hpasm
