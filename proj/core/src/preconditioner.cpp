#include <Eigen/SparseCholesky>

#include "hpasm/asm.hpp"
#include "hpasm/errors.hpp"
#include "hpasm/krylov.hpp"

namespace hpasm {

namespace {

void check_size(Eigen::Index expected, const Vector& x) {
  if (x.size() != expected) throw DimensionMismatch(static_cast<std::size_t>(expected), static_cast<std::size_t>(x.size()));
}

}  // namespace

DiagonalInverse::DiagonalInverse(const Vector& diagonal) : inv_(diagonal.size()) {
  for (Eigen::Index i = 0; i < diagonal.size(); ++i) {
    if (!(diagonal[i] > 0.0)) throw Error("diagonal smoother needs positive entries");
    inv_[i] = 1.0 / diagonal[i];
  }
}

Vector DiagonalInverse::apply(const Vector& x) const {
  check_size(size(), x);
  Vector y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = inv_[i] * x[i];
  touches_ += static_cast<std::size_t>(x.size());
  return y;
}

struct CholeskySolve::Impl {
  Eigen::SimplicialLLT<SparseMatrix, Eigen::Lower> llt;
};

CholeskySolve::CholeskySolve(const SymSparseMatrix& a) : n_(a.dimension()), impl_(std::make_unique<Impl>()) {
  if (n_ == 0) return;
  impl_->llt.compute(SparseMatrix(a.lower()));
  if (impl_->llt.info() != Eigen::Success) throw CholeskyFailure("sparse Cholesky failed: matrix is not positive definite");
}

CholeskySolve::~CholeskySolve() = default;

Vector CholeskySolve::apply(const Vector& x) const {
  check_size(n_, x);
  if (n_ == 0) return Vector();
  return impl_->llt.solve(x);
}

JacobiCgSolve::JacobiCgSolve(SymSparseMatrix a, double tol, int max_iter)
    : a_(std::move(a)), inv_diag_(a_.diagonal().cwiseInverse()), tol_(tol), max_iter_(max_iter) {}

Vector JacobiCgSolve::apply(const Vector& x) const {
  check_size(size(), x);
  if (x.size() == 0) return Vector();
  const OperatorFn op = [this](const Vector& v) { return a_.multiply(v); };
  const OperatorFn jac = [this](const Vector& v) { return Vector(inv_diag_.cwiseProduct(v)); };
  try {
    return pcg(op, jac, x, tol_, max_iter_).solution;
  } catch (const MaxIterReached& e) {
    return e.result.solution;
  }
}

PrecondStack::PrecondStack(std::string stage, std::shared_ptr<const Preconditioner> smoother,
                           std::shared_ptr<const Transfer> transfer, std::shared_ptr<const Preconditioner> inner)
    : stage_(std::move(stage)), smoother_(std::move(smoother)), transfer_(std::move(transfer)), inner_(std::move(inner)) {
  if (!smoother_ || !transfer_ || !inner_) throw Error("incomplete preconditioner stack");
  if (transfer_->rows() != smoother_->size())
    throw DimensionMismatch(static_cast<std::size_t>(smoother_->size()), static_cast<std::size_t>(transfer_->rows()));
  if (transfer_->cols() != inner_->size())
    throw DimensionMismatch(static_cast<std::size_t>(inner_->size()), static_cast<std::size_t>(transfer_->cols()));
}

Vector PrecondStack::apply(const Vector& x) const {
  check_size(size(), x);
  Vector y = smoother_->apply(x);
  if (inner_->size() > 0) y += transfer_->apply(inner_->apply(transfer_->apply_transpose(x)));
  return y;
}

Vector stage1_apply(const PrecondStack& stack, const Vector& residual) {
  check_size(stack.size(), residual);
  return stack.apply(residual);
}

std::shared_ptr<PrecondStack> compose_stage2(const RectMesh& mesh, const AsmConfig& config) {
  const CellClassification cls = classify_cells(mesh, config.c_aspect);
  const DiscreteSystem b = stage2_bform(mesh, cls, true);
  std::shared_ptr<const Preconditioner> smoother;
  if (config.stage2_smoother == Stage2Smoother::Cholesky) smoother = std::make_shared<CholeskySolve>(b.matrix);
  else smoother = std::make_shared<DiagonalInverse>(b.matrix.diagonal());

  std::shared_ptr<const Transfer> q = stage2_transfer(mesh, config.alpha, true);
  DiscreteSystem tilde = dyadic_stiffness(mesh, config.alpha, true);
  std::shared_ptr<const Preconditioner> inner;
  if (config.inner == InnerKind::Exact) inner = std::make_shared<CholeskySolve>(tilde.matrix);
  else inner = std::make_shared<JacobiCgSolve>(std::move(tilde.matrix), config.inner_cg_tol, config.inner_cg_max_iter);
  return std::make_shared<PrecondStack>("stage2", std::move(smoother), std::move(q), std::move(inner));
}

std::shared_ptr<PrecondStack> compose_preconditioner(const RectMesh& mesh, const AsmConfig& config) {
  const SmootherWeights weights = stage1_smoother(mesh, config);
  const DofMap dg = make_dg_dofmap(mesh);
  const DofMap cg = make_cg_dofmap(mesh, NodeFamily::Spectral, true);
  auto s = std::make_shared<SparseTransfer>(injection_matrix(cg, dg));
  std::shared_ptr<const Preconditioner> inner;
  if (config.two_stage) inner = compose_stage2(mesh, config);
  else inner = std::make_shared<CholeskySolve>(assemble_cg_sem(mesh, true).matrix);
  return std::make_shared<PrecondStack>("stage1", std::make_shared<DiagonalInverse>(weights.diagonal), std::move(s),
                                        std::move(inner));
}

}  // namespace hpasm
