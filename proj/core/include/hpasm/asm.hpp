#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hpasm/dofmap.hpp"
#include "hpasm/mesh.hpp"
#include "hpasm/sipg.hpp"
#include "hpasm/sym_sparse.hpp"

namespace hpasm {

inline constexpr double kDefaultAspect = 10.0;

/// Innermost solver on the dyadic space.
enum class InnerKind { Exact, Cg };

/// Realization of the stage-2 smoother.
enum class Stage2Smoother { Cholesky, Diagonal };

struct AsmConfig {
  double gamma = kDefaultGamma;
  double beta1 = 1.0;
  double c1 = 1.0;
  double rho1 = 1.0;
  double alpha = kDefaultAlpha;
  double c_aspect = kDefaultAspect;
  InnerKind inner = InnerKind::Exact;
  Stage2Smoother stage2_smoother = Stage2Smoother::Cholesky;
  /// false: stage 1 only, with an exact solve on the conforming spectral space.
  bool two_stage = true;
  double inner_cg_tol = 1e-10;
  int inner_cg_max_iter = 1000;
};

// ---------------------------------------------------------------- stage 1

struct SmootherWeights {
  Vector diagonal;  // c_xi * W_xi per DG dof
  Vector interior;  // beta1 * c1^2 * W_xi, the part without face terms
  double beta1 = 1.0;
  double c1 = 1.0;
  double rho1 = 1.0;
};

/// Diagonal of the stage-1 form on the DG space of `mesh`.
SmootherWeights stage1_smoother(const RectMesh& mesh, const AsmConfig& config = {});

// ---------------------------------------------------------------- stage 2

/// Per cell and direction k, flags over the LGL subcells (index a + nsx * b
/// with nsx = p_x subintervals along x); true marks the strongly anisotropic
/// class.
struct CellClassification {
  double c_aspect = kDefaultAspect;
  int dim = 2;
  std::vector<std::array<int, 2>> subcells;  // per cell, subintervals per direction
  std::vector<std::array<std::vector<bool>, 2>> anisotropic;

  std::size_t num_subcells(std::size_t c) const {
    return static_cast<std::size_t>(subcells[c][0]) * static_cast<std::size_t>(subcells[c][1]);
  }
  std::size_t count_anisotropic(std::size_t c, int k) const;
  std::size_t count_isotropic(std::size_t c, int k) const { return num_subcells(c) - count_anisotropic(c, k); }
};

CellClassification classify_cells(const RectMesh& mesh, double c_aspect = kDefaultAspect);

/// Cell matrix of the relaxed form b in the cell-local tensor LGL basis.
SparseMatrix stage2_cell_bform(const RectMesh& mesh, const CellClassification& cls, std::size_t c);

/// Relaxed form b on the conforming spectral space.
DiscreteSystem stage2_bform(const RectMesh& mesh, const CellClassification& cls, bool dirichlet = true);

/// Q1 stiffness of the conforming dyadic space.
DiscreteSystem dyadic_stiffness(const RectMesh& mesh, double alpha = kDefaultAlpha, bool dirichlet = true);

/// Linear map between coefficient spaces, possibly matrix-free.
class Transfer {
 public:
  virtual ~Transfer() = default;
  virtual Eigen::Index rows() const = 0;
  virtual Eigen::Index cols() const = 0;
  virtual Vector apply(const Vector& x) const = 0;
  virtual Vector apply_transpose(const Vector& y) const = 0;
};

class SparseTransfer final : public Transfer {
 public:
  explicit SparseTransfer(SparseMatrix m) : m_(std::move(m)) {}
  Eigen::Index rows() const override { return m_.rows(); }
  Eigen::Index cols() const override { return m_.cols(); }
  Vector apply(const Vector& x) const override;
  Vector apply_transpose(const Vector& y) const override;
  const SparseMatrix& matrix() const { return m_; }

 private:
  SparseMatrix m_;
};

/// Vertex-wise transfer Q from the conforming dyadic space to the conforming
/// spectral space, applied through per-cell 1D factors.
class TensorTransfer final : public Transfer {
 public:
  TensorTransfer(const RectMesh& mesh, double alpha, bool dirichlet);

  Eigen::Index rows() const override { return spectral_.num_dofs(); }
  Eigen::Index cols() const override { return dyadic_.num_dofs(); }
  Vector apply(const Vector& x) const override;
  Vector apply_transpose(const Vector& y) const override;

  /// Cell-local Q_R: dyadic tensor nodal values to LGL tensor nodal values.
  Vector apply_cell(std::size_t c, const Vector& dyadic_local) const;

  /// Componentwise minimum degree over the cells at vertex v.
  std::array<int, 2> vertex_min_degree(std::size_t v) const { return pstar_[v]; }

  const DofMap& spectral() const { return spectral_; }
  const DofMap& dyadic() const { return dyadic_; }

  /// Column by column; intended for small meshes and tests.
  SparseMatrix to_sparse() const;

 private:
  struct OwnedDof {
    Eigen::Index global;
    Vector rx, ry;  // evaluation rows at the dof site
  };
  struct CellFactors {
    std::vector<std::array<DenseMatrix, 2>> corner;  // A_{z,x}, A_{z,y}
    std::vector<OwnedDof> owned;
  };

  int dim_;
  DofMap spectral_;
  DofMap dyadic_;
  std::vector<std::array<int, 2>> pstar_;
  std::vector<CellFactors> cells_;
};

/// Throws GradingError when the mesh is not graded.
std::unique_ptr<TensorTransfer> stage2_transfer(const RectMesh& mesh, double alpha = kDefaultAlpha,
                                                bool dirichlet = true);

// ---------------------------------------------------------------- stacks

/// Symmetric positive definite approximate inverse.
class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual Eigen::Index size() const = 0;
  virtual Vector apply(const Vector& x) const = 0;
};

class DiagonalInverse final : public Preconditioner {
 public:
  explicit DiagonalInverse(const Vector& diagonal);
  Eigen::Index size() const override { return inv_.size(); }
  Vector apply(const Vector& x) const override;
  /// Entries touched by all applications so far.
  std::size_t touches() const { return touches_.load(); }

 private:
  Vector inv_;
  mutable std::atomic<std::size_t> touches_{0};
};

/// Sparse Cholesky solve; throws CholeskyFailure.
class CholeskySolve final : public Preconditioner {
 public:
  explicit CholeskySolve(const SymSparseMatrix& a);
  ~CholeskySolve() override;
  Eigen::Index size() const override { return n_; }
  Vector apply(const Vector& x) const override;

 private:
  struct Impl;
  Eigen::Index n_;
  std::unique_ptr<Impl> impl_;
};

/// Jacobi-preconditioned CG to a fixed tolerance. Not exactly linear.
class JacobiCgSolve final : public Preconditioner {
 public:
  JacobiCgSolve(SymSparseMatrix a, double tol, int max_iter);
  Eigen::Index size() const override { return a_.dimension(); }
  Vector apply(const Vector& x) const override;

 private:
  SymSparseMatrix a_;
  Vector inv_diag_;
  double tol_;
  int max_iter_;
};

class FunctionPreconditioner final : public Preconditioner {
 public:
  FunctionPreconditioner(Eigen::Index n, std::function<Vector(const Vector&)> fn) : n_(n), fn_(std::move(fn)) {}
  Eigen::Index size() const override { return n_; }
  Vector apply(const Vector& x) const override { return fn_(x); }

 private:
  Eigen::Index n_;
  std::function<Vector(const Vector&)> fn_;
};

/// C = C_B + S C_inner S^T.
class PrecondStack final : public Preconditioner {
 public:
  PrecondStack(std::string stage, std::shared_ptr<const Preconditioner> smoother,
               std::shared_ptr<const Transfer> transfer, std::shared_ptr<const Preconditioner> inner);

  Eigen::Index size() const override { return smoother_->size(); }
  Vector apply(const Vector& x) const override;

  const std::string& stage() const { return stage_; }
  const Preconditioner& smoother() const { return *smoother_; }
  const Transfer& transfer() const { return *transfer_; }
  const Preconditioner& inner() const { return *inner_; }

 private:
  std::string stage_;
  std::shared_ptr<const Preconditioner> smoother_;
  std::shared_ptr<const Transfer> transfer_;
  std::shared_ptr<const Preconditioner> inner_;
};

/// Applies a stage-1 stack; throws DimensionMismatch.
Vector stage1_apply(const PrecondStack& stack, const Vector& residual);

/// Stage-2 stack on the conforming spectral space.
std::shared_ptr<PrecondStack> compose_stage2(const RectMesh& mesh, const AsmConfig& config = {});

/// Full stack for the SIPG operator on `mesh`.
std::shared_ptr<PrecondStack> compose_preconditioner(const RectMesh& mesh, const AsmConfig& config = {});

}  // namespace hpasm
