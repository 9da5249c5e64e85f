#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "hpasm/dense_eigen.hpp"
#include "hpasm/errors.hpp"
#include "support.hpp"

namespace hpasm {
namespace {

DenseMatrix random_spd(std::mt19937_64& rng, Eigen::Index n, double shift) {
  DenseMatrix b(n, n);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) b(i, j) = normal(rng);
  return b * b.transpose() + shift * DenseMatrix::Identity(n, n);
}

TEST(Jacobi, MatchesReferenceSolver) {
  std::mt19937_64 rng(testing::kSeed);
  for (Eigen::Index n : {1, 2, 5, 17, 40}) {
    DenseMatrix a = random_spd(rng, n, 0.0) - DenseMatrix::Identity(n, n) * 3.0;
    const SymmetricEigen je = jacobi_eigen(a);
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> ref(a);
    EXPECT_LE((je.values - ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10 * a.norm());
    EXPECT_LE((je.vectors.transpose() * je.vectors - DenseMatrix::Identity(n, n)).norm(), 1e-12 * n);
    EXPECT_LE((a * je.vectors - je.vectors * je.values.asDiagonal()).norm(), 1e-10 * a.norm());
    for (Eigen::Index i = 1; i < n; ++i) EXPECT_LE(je.values[i - 1], je.values[i]);
  }
}

TEST(Jacobi, DiagonalInputNeedsNoSweeps) {
  const DenseMatrix d = Vector::LinSpaced(4, 4.0, 1.0).asDiagonal();
  const SymmetricEigen je = jacobi_eigen(d);
  EXPECT_EQ(je.sweeps, 0);
  EXPECT_EQ(je.values, Vector::LinSpaced(4, 1.0, 4.0));
}

TEST(Jacobi, RejectsNonSquare) { EXPECT_THROW(jacobi_eigen(DenseMatrix::Zero(2, 3)), DimensionMismatch); }

TEST(Cholesky, FactorsAndFails) {
  std::mt19937_64 rng(testing::kSeed + 1);
  const DenseMatrix m = random_spd(rng, 12, 1.0);
  const DenseMatrix l = cholesky_lower(m);
  EXPECT_LE((l * l.transpose() - m).norm(), 1e-12 * m.norm());
  EXPECT_TRUE(l.isLowerTriangular());
  DenseMatrix bad = DenseMatrix::Identity(3, 3);
  bad(2, 2) = -1.0;
  EXPECT_THROW(cholesky_lower(bad), CholeskyFailure);
}

TEST(GeneralizedEigen, ResidualAndMOrthonormality) {
  std::mt19937_64 rng(testing::kSeed + 2);
  for (Eigen::Index n : {3, 10, 30}) {
    const DenseMatrix a = random_spd(rng, n, 0.0);
    const DenseMatrix m = random_spd(rng, n, 0.5);
    const GeneralizedEigen ge = generalized_eigen(a, m);
    EXPECT_LE((a * ge.vectors - m * ge.vectors * ge.values.asDiagonal()).norm(), 1e-9 * a.norm());
    EXPECT_LE((ge.vectors.transpose() * m * ge.vectors - DenseMatrix::Identity(n, n)).norm(), 1e-9 * n);
  }
  EXPECT_THROW(generalized_eigen(DenseMatrix::Identity(2, 2), DenseMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST(GeneralizedEigenProperty, PowerIterationAgrees) {
  std::mt19937_64 rng(testing::kSeed + 3);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = size(rng);
    const DenseMatrix a = random_spd(rng, n, 0.0);
    const DenseMatrix m = random_spd(rng, n, 1.0);
    const double top = generalized_eigen(a, m).values[n - 1];
    const double power = power_iteration_max(a, m);
    EXPECT_NEAR(power, top, 1e-8 * top) << "n=" << n;
  }
}

}  // namespace
}  // namespace hpasm
