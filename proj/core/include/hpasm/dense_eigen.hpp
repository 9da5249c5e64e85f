#pragma once

#include <cstdint>

#include "hpasm/tensor_ops.hpp"

namespace hpasm {

struct SymmetricEigen {
  Vector values;        // ascending
  DenseMatrix vectors;  // orthonormal columns
  int sweeps = 0;
};

/// Cyclic Jacobi rotations. Stops when the off-diagonal Frobenius norm is
/// below tol * ||A||_F or after max_sweeps sweeps.
SymmetricEigen jacobi_eigen(const DenseMatrix& a, double tol = 1e-12, int max_sweeps = 100);

/// Lower Cholesky factor of an SPD matrix; throws CholeskyFailure.
DenseMatrix cholesky_lower(const DenseMatrix& m);

struct GeneralizedEigen {
  Vector values;        // ascending
  DenseMatrix vectors;  // M-orthonormal, in the original coordinates
};

/// A v = lambda M v with A symmetric and M SPD, by M = L L^T reduction of
/// L^{-1} A L^{-T} and a Jacobi eigensolve.
GeneralizedEigen generalized_eigen(const DenseMatrix& a, const DenseMatrix& m);

/// Largest eigenvalue of L^{-1} A L^{-T} by power iteration with a Rayleigh
/// quotient stopping rule; A must be positive semidefinite. Independent of
/// the Jacobi path.
double power_iteration_max(const DenseMatrix& a, const DenseMatrix& m, double tol = 1e-14,
                           int max_iter = 200000, std::uint64_t seed = 0x5EED);

}  // namespace hpasm
