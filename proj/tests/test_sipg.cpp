#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include "hpasm/errors.hpp"
#include "hpasm/sipg.hpp"
#include "support.hpp"

namespace hpasm {
namespace {

using testing::square;

RectMesh pair_mesh(int p0, int p1) { return build_mesh({square(0, 0, 1, p0), square(1, 0, 1, p1)}, 2); }

std::array<double, 2> site_coords(const RectMesh& mesh, const DofSite& s) {
  const RectCell& c = mesh.cell(s.cell);
  return {c.origin[0] + 0.5 * (s.ref[0] + 1.0) * c.sides[0], c.origin[1] + 0.5 * (s.ref[1] + 1.0) * c.sides[1]};
}

TEST(PenaltyWeight, Examples) {
  RectCell a = square(0, 0, 2, 3), b = square(2, 0, 2, 3);
  RectMesh m = build_mesh({a, b}, 2);
  for (std::size_t f = 0; f < m.faces().size(); ++f)
    if (!m.face(f).is_boundary()) EXPECT_DOUBLE_EQ(penalty_weight(m, f), 6.0);

  m = pair_mesh(2, 4);
  for (std::size_t f = 0; f < m.faces().size(); ++f)
    if (!m.face(f).is_boundary()) EXPECT_DOUBLE_EQ(penalty_weight(m, f), 20.0);

  m = build_mesh({square(0, 0, 1, 1)}, 2);
  for (std::size_t f = 0; f < m.faces().size(); ++f) EXPECT_DOUBLE_EQ(penalty_weight(m, f), 2.0);
}

TEST(PenaltyWeightProperty, ScalesInverselyWithSize) {
  std::mt19937_64 rng(testing::kSeed);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    const RectMesh m = testing::random_graded_mesh(rng, 2, 3, 2);
    const double s = scale(rng);
    auto cells = m.cells();
    for (auto& c : cells)
      for (int k = 0; k < 2; ++k) {
        c.origin[k] *= s;
        c.sides[k] *= s;
      }
    const RectMesh scaled = build_mesh(cells, 2);
    ASSERT_EQ(scaled.faces().size(), m.faces().size());
    for (std::size_t f = 0; f < m.faces().size(); ++f)
      EXPECT_NEAR(penalty_weight(scaled, f), penalty_weight(m, f) / s, 1e-12 * penalty_weight(m, f) / s);
  }
}

TEST(Sipg, OneDimensionalHandAssembly) {
  const RectMesh m = uniform_mesh(1, 1, 1, 1.0, 1.0, {1, 1});
  const DiscreteSystem sys = assemble_sipg(m, {1.0});
  const DenseMatrix expected = (DenseMatrix(2, 2) << 1, 1, 1, 1).finished();
  EXPECT_LE((sys.matrix.dense() - expected).cwiseAbs().maxCoeff(), 1e-14) << sys.matrix.dense();
}

TEST(Sipg, ConstantsOnlySeeBoundaryPenalty) {
  std::mt19937_64 rng(testing::kSeed + 1);
  for (int trial = 0; trial < 10; ++trial) {
    const RectMesh m = testing::random_graded_mesh(rng, 2, 3, 2);
    const PenaltyConfig cfg{3.0};
    const DiscreteSystem sys = assemble_sipg(m, cfg);
    double expected = 0.0;
    for (std::size_t f = 0; f < m.faces().size(); ++f) {
      const Face& face = m.face(f);
      if (face.is_boundary()) expected += cfg.gamma * penalty_weight(m, f) * (face.extent[1] - face.extent[0]);
    }
    const Vector one = Vector::Ones(sys.dofs.num_dofs());
    EXPECT_NEAR(sys.matrix.quadratic_form(one), expected, 1e-10 * expected);
  }
}

TEST(Sipg, SymmetricStorage) {
  const DiscreteSystem sys = assemble_sipg(pair_mesh(2, 3));
  const DenseMatrix d = sys.matrix.dense();
  EXPECT_EQ(d, d.transpose());
  EXPECT_EQ(sys.matrix.lower().rows(), sys.dofs.num_dofs());
}

TEST(SipgProperty, CoercivityWitness) {
  std::mt19937_64 rng(testing::kSeed + 2);
  for (int trial = 0; trial < 10; ++trial) {
    const RectMesh m = testing::random_graded_mesh(rng, 2, 3, 1 + trial % 4);
    const DenseMatrix a = assemble_sipg(m, {3.0}).matrix.dense();
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(a, Eigen::EigenvaluesOnly);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Sipg, GradingPolicy) {
  const RectMesh m = pair_mesh(2, 8);
  EXPECT_THROW(assemble_sipg(m), GradingError);
  EXPECT_NO_THROW(assemble_sipg(m, {}, GradingPolicy::Ignore));
  EXPECT_THROW(assemble_sipg(pair_mesh(2, 2), {0.0}), Error);
}

TEST(Sipg, ManufacturedSolutionConverges) {
  const double pi = std::numbers::pi;
  const ScalarField u = [pi](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); };
  const ScalarField f = [pi, u](double x, double y) { return 2 * pi * pi * u(x, y); };
  double previous = 0.0;
  for (int p = 8; p <= 16; p += 2) {
    const RectMesh m = uniform_mesh(2, 2, 2, 0.5, 0.5, {p, p});
    const DiscreteSystem sys = assemble_sipg(m, {3.0});
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(sys.matrix.full());
    const Vector x = ldlt.solve(assemble_load(m, sys.dofs, f));
    const double err = l2_error(m, sys.dofs, x, u);
    if (p > 8 && previous > 1e-10) EXPECT_LT(err, 0.1 * previous) << p;
    if (p >= 12) EXPECT_LT(err, 1e-10);
    previous = err;
  }
}

TEST(CgSem, SingleLinearCellHasNoFreeDofs) {
  EXPECT_EQ(assemble_cg_sem(build_mesh({square(0, 0, 1, 1)}, 2)).dofs.num_dofs(), 0);
}

TEST(CgSem, BubbleStiffness) {
  const DiscreteSystem sys = assemble_cg_sem(build_mesh({square(0, 0, 1, 2)}, 2));
  ASSERT_EQ(sys.dofs.num_dofs(), 1);
  EXPECT_NEAR(sys.matrix.coeff(0, 0), 256.0 / 45.0, 1e-13);
}

TEST(CgSem, SharedFaceUsesMinimumDegree) {
  const RectMesh m = pair_mesh(2, 4);
  const DiscreteSystem sys = assemble_cg_sem(m, false);
  int on_face = 0;
  for (Eigen::Index g = 0; g < sys.dofs.num_dofs(); ++g)
    if (std::abs(site_coords(m, sys.dofs.site(g))[0] - 1.0) < 1e-14) ++on_face;
  EXPECT_EQ(on_face, (2 - 1) + 2);
  EXPECT_EQ(sys.dofs.num_dofs(), 29);
}

TEST(CgSem, ConstantsInKernelWithoutDirichlet) {
  const DiscreteSystem sys = assemble_cg_sem(pair_mesh(3, 5), false);
  EXPECT_LE(sys.matrix.multiply(Vector::Ones(sys.dofs.num_dofs())).norm(), 1e-11);
}

TEST(Injection, EqualDegreesDuplicate) {
  const RectMesh m = uniform_mesh(2, 2, 2, 0.5, 0.5, {3, 3});
  const DofMap cg = make_cg_dofmap(m, NodeFamily::Spectral, true);
  const SparseMatrix s = injection_matrix(cg, make_dg_dofmap(m));
  for (Eigen::Index j = 0; j < s.outerSize(); ++j)
    for (SparseMatrix::InnerIterator it(s, j); it; ++it) EXPECT_EQ(it.value(), 1.0);
  const SparseMatrix st = s.transpose();
  const Vector per_row = SparseMatrix(s) * Vector::Ones(s.cols());
  for (Eigen::Index i = 0; i < per_row.size(); ++i) EXPECT_LE(per_row[i], 1.0);
  EXPECT_EQ(st.rows(), cg.num_dofs());
}

TEST(InjectionProperty, ConformingInputsSeeNoJumps) {
  std::mt19937_64 rng(testing::kSeed + 3);
  for (int trial = 0; trial < 15; ++trial) {
    const RectMesh m = testing::random_graded_mesh(rng, 1 + trial % 2, 3, 1 + trial % 3);
    const DiscreteSystem dg = assemble_sipg(m);
    const DiscreteSystem cg = assemble_cg_sem(m, true);
    const SparseMatrix s = injection_matrix(cg.dofs, dg.dofs);
    const Vector c = testing::random_vector(rng, cg.dofs.num_dofs());
    const double a_cg = cg.matrix.quadratic_form(c);
    EXPECT_NEAR(dg.matrix.quadratic_form(s * c), a_cg, 1e-11 * std::max(1.0, a_cg));
  }
}

TEST(Injection, MixedDegreesPointwise) {
  const RectMesh m = pair_mesh(2, 4);
  const DofMap cg = make_cg_dofmap(m, NodeFamily::Spectral, false);
  const DofMap dg = make_dg_dofmap(m);
  const SparseMatrix s = injection_matrix(cg, dg);
  std::mt19937_64 rng(testing::kSeed + 4);
  const Vector c = testing::random_vector(rng, cg.num_dofs());
  const Vector d = s * c;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t cell = static_cast<std::size_t>(i % 2);
    const double x = cell + u(rng), y = u(rng);
    EXPECT_NEAR(evaluate(m, cg, c, cell, x, y), evaluate(m, dg, d, cell, x, y), 1e-12);
  }
  // traces agree on the shared face
  for (int i = 0; i < 100; ++i) {
    const double y = u(rng);
    EXPECT_NEAR(evaluate(m, cg, c, 0, 1.0, y), evaluate(m, cg, c, 1, 1.0, y), 1e-12);
  }
}

TEST(Load, IntegratesPolynomialsExactly) {
  const RectMesh m = pair_mesh(3, 3);
  const DofMap dg = make_dg_dofmap(m);
  const Vector b = assemble_load(m, dg, [](double x, double y) { return x * y; });
  // sum of all nodal basis functions is 1, so the total equals the integral
  EXPECT_NEAR(b.sum(), 2.0 * 0.5, 1e-13);
}

TEST(L2Error, ZeroForInterpolatedPolynomial) {
  const RectMesh m = pair_mesh(3, 3);
  const DofMap dg = make_dg_dofmap(m);
  const ScalarField poly = [](double x, double y) { return x * x * y - 3 * y * y * y + 1; };
  Vector v(dg.num_dofs());
  for (Eigen::Index g = 0; g < v.size(); ++g) {
    const auto xy = site_coords(m, dg.site(g));
    v[g] = poly(xy[0], xy[1]);
  }
  EXPECT_LT(l2_error(m, dg, v, poly), 1e-13);
  EXPECT_GT(l2_error(m, dg, v, [](double, double) { return 0.0; }), 0.1);
}

}  // namespace
}  // namespace hpasm
