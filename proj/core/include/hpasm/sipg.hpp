#pragma once

#include <functional>

#include "hpasm/dofmap.hpp"
#include "hpasm/mesh.hpp"
#include "hpasm/sym_sparse.hpp"

namespace hpasm {

inline constexpr double kDefaultGamma = 3.0;

struct PenaltyConfig {
  double gamma = kDefaultGamma;
};

enum class GradingPolicy { Strict, Warn, Ignore };

/// Discrete operator together with the dof layout it acts on.
struct DiscreteSystem {
  SymSparseMatrix matrix;
  DofMap dofs;
};

using ScalarField = std::function<double(double x, double y)>;

/// One-sided weight p_k (p_k + 1) / H_k of `cell` for a face normal to k.
double one_sided_penalty(const RectCell& cell, int k);

/// omega_F: maximum of the one-sided weights of the adjacent cells.
double penalty_weight(const RectMesh& mesh, std::size_t face);

/// Exact cell stiffness (grad u, grad v)_R in the tensor LGL nodal basis.
DenseMatrix cell_stiffness(const RectCell& cell, int dim);

/// Symmetric interior penalty DG operator with Dirichlet conditions imposed
/// through the boundary faces.
DiscreteSystem assemble_sipg(const RectMesh& mesh, const PenaltyConfig& config = {},
                             GradingPolicy grading = GradingPolicy::Strict);

/// Conforming spectral element stiffness on V_delta intersected with H^1
/// (with zero traces when `dirichlet`).
DiscreteSystem assemble_cg_sem(const RectMesh& mesh, bool dirichlet = true);

/// Representation of the embedding of the conforming space into the DG space
/// (rows: DG dofs, columns: CG dofs).
SparseMatrix injection_matrix(const DofMap& cg, const DofMap& dg);

/// Load vector (f, v) on a nodal map, integrated with LGL of degree p + 2.
Vector assemble_load(const RectMesh& mesh, const DofMap& dofs, const ScalarField& f);

/// Evaluates the function represented by `coeffs` at a physical point inside
/// cell c.
double evaluate(const RectMesh& mesh, const DofMap& dofs, const Vector& coeffs, std::size_t c, double x,
                double y = 0.0);

/// L2 error against an exact solution, by high-order quadrature.
double l2_error(const RectMesh& mesh, const DofMap& dofs, const Vector& coeffs, const ScalarField& exact);

}  // namespace hpasm
