#include "hpasm/krylov.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace hpasm {

namespace {

void lanczos_estimates(const std::vector<double>& alphas, const std::vector<double>& betas, SolveReport& report) {
  const auto m = static_cast<Eigen::Index>(alphas.size());
  if (m == 0) return;
  // T_jj = 1/a_j + b_{j-1}/a_{j-1},  T_{j,j+1} = sqrt(b_j)/a_j
  Vector diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
  for (Eigen::Index j = 0; j < m; ++j) {
    diag[j] = 1.0 / alphas[static_cast<std::size_t>(j)];
    if (j > 0) diag[j] += betas[static_cast<std::size_t>(j - 1)] / alphas[static_cast<std::size_t>(j - 1)];
    if (j + 1 < m) sub[j] = std::sqrt(betas[static_cast<std::size_t>(j)]) / alphas[static_cast<std::size_t>(j)];
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  report.lambda_min_est = es.eigenvalues().minCoeff();
  report.lambda_max_est = es.eigenvalues().maxCoeff();
  report.kappa_est = report.lambda_max_est / report.lambda_min_est;
}

}  // namespace

PcgResult pcg(const OperatorFn& a, const OperatorFn& c, const Vector& rhs, double tol, int max_iter) {
  if (!(tol > 0.0)) throw Error("PCG tolerance must be positive");
  PcgResult out;
  out.solution = Vector::Zero(rhs.size());
  SolveReport& report = out.report;

  Vector r = rhs;
  Vector z = c(r);
  double rz = r.dot(z);
  if (rhs.norm() == 0.0) {
    report.converged = true;
    return out;
  }
  if (!(rz > 0.0)) throw BreakdownError("nonpositive r^T C r: preconditioner is not positive definite");
  const double rz0 = rz;
  Vector p = z;

  std::vector<double> alphas, betas;
  for (int it = 0; it < max_iter; ++it) {
    const Vector ap = a(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) throw BreakdownError("nonpositive p^T A p: operator is not positive definite");
    const double alpha = rz / pap;
    out.solution += alpha * p;
    r -= alpha * ap;
    alphas.push_back(alpha);
    report.iterations = it + 1;

    z = c(r);
    const double rz_next = r.dot(z);
    const double rel = std::sqrt(std::max(rz_next, 0.0) / rz0);
    report.residual_history.push_back(rel);
    report.final_relative_residual = rel;
    if (rel <= tol || rz_next <= 0.0) {
      // An exactly zero residual ends the Krylov space; a negative one signals C breakdown.
      if (rz_next < 0.0 && r.norm() > 0.0)
        throw BreakdownError("nonpositive r^T C r: preconditioner is not positive definite");
      report.converged = true;
      break;
    }
    const double beta = rz_next / rz;
    betas.push_back(beta);
    p = z + beta * p;
    rz = rz_next;
  }
  lanczos_estimates(alphas, betas, report);
  if (!report.converged) throw MaxIterReached(std::move(out));
  return out;
}

Vector random_vector(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector v(n);
  for (auto& e : v) e = normal(rng);
  return v;
}

}  // namespace hpasm
