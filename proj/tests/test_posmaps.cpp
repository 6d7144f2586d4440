#include <gtest/gtest.h>

#include "abssep/posmaps.hpp"

using namespace abssep;

namespace {

std::vector<MapSpec> some_maps() {
  return {MapSpec::identity(3), MapSpec::transpose(3),
          MapSpec::reduction(3), MapSpec::choi(),
          MapSpec::generalized_choi(0.3, 0.9), MapSpec::breuer_hall(4)};
}

}  // namespace

TEST(MapSpec, ChoiAction) {
  ComplexMatrix x = ComplexMatrix::Zero(3, 3);
  x(0, 0) = 1.0;
  x(0, 1) = 2.0;
  const ComplexMatrix y = MapSpec::choi()(x);
  EXPECT_NEAR(y(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(y(1, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(y(2, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(y(0, 1).real(), -1.0, 1e-15);
}

TEST(MapSpec, ReductionEqualsPhiOneOne) {
  Rng rng(1);
  const ComplexMatrix x = ginibre(3, 3, rng);
  EXPECT_LT((MapSpec::reduction(3)(x) - MapSpec::generalized_choi(1, 1)(x)).norm(), 1e-14);
}

TEST(MapSpec, DualIsHilbertSchmidtAdjoint) {
  Rng rng(2);
  for (const MapSpec& phi : some_maps()) {
    const int n = phi.in_dim();
    const ComplexMatrix x = ginibre(n, n, rng), y = ginibre(n, n, rng);
    const ComplexMatrix lhs = (phi(x).adjoint() * y);
    const ComplexMatrix rhs = (x.adjoint() * dual_map(phi)(y));
    EXPECT_NEAR(std::abs(lhs.trace() - rhs.trace()), 0.0, 1e-12) << phi.describe();
  }
}

TEST(MapSpec, TracePreservingDuals) {
  Rng rng(3);
  for (const MapSpec& phi : {MapSpec::choi(), MapSpec::generalized_choi(0.4, 0.1), MapSpec::breuer_hall(6)}) {
    const int n = phi.in_dim();
    const ComplexMatrix x = ginibre(n, n, rng);
    EXPECT_NEAR(std::abs(dual_map(phi)(x).trace() - x.trace()), 0.0, 1e-12) << phi.describe();
  }
}

TEST(MapSpec, PositiveOnPureStates) {
  Rng rng(4);
  for (const MapSpec& phi : {MapSpec::choi(), MapSpec::reduction(3), MapSpec::generalized_choi(0.5, 0.5),
                             MapSpec::breuer_hall(4), MapSpec::breuer_hall(6)}) {
    for (int k = 0; k < 200; ++k) {
      const ComplexVector v = haar_vector(phi.in_dim(), rng);
      EXPECT_GE(eigvalsh(HermitianMatrix(phi(projector(v))))(phi.in_dim() - 1), -1e-12) << phi.describe();
    }
  }
}

TEST(MapSpec, NotCompletelyPositive) {
  for (const MapSpec& phi : {MapSpec::choi(), MapSpec::reduction(3), MapSpec::breuer_hall(4)}) {
    const RealVector ev = eigvalsh(choi_matrix(phi).hermitian());
    EXPECT_LT(ev(ev.size() - 1), -1e-3) << phi.describe();
  }
  const RealVector ev = eigvalsh(choi_matrix(MapSpec::identity(3)).hermitian());
  EXPECT_GE(ev(ev.size() - 1), -1e-14);
}

TEST(MapSpec, ApplyIdTensorMatchesBlockwise) {
  Rng rng(5);
  const MapSpec phi = MapSpec::choi();
  const ComplexMatrix x = ginibre(6, 6, rng);
  const ComplexMatrix y = apply_id_tensor(phi, x, Dims{2, 3});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_LT((y.block(3 * i, 3 * j, 3, 3) - phi(x.block(3 * i, 3 * j, 3, 3))).norm(), 1e-14);
  EXPECT_THROW(apply_id_tensor(phi, x, Dims{3, 2}), Error);
}

TEST(MapSpec, Validation) {
  EXPECT_THROW(MapSpec::breuer_hall(3), Error);
  EXPECT_THROW(MapSpec::breuer_hall(4, ComplexMatrix(ComplexMatrix::Identity(4, 4))), Error);
  EXPECT_THROW(MapSpec::generalized_choi(-0.1, 0.0), Error);
  EXPECT_THROW(MapSpec::reduction(1), Error);
}

TEST(Witness, ChoiAtMaxEntangled) {
  const HermitianMatrix w = witness_from_map(MapSpec::choi(), max_entangled(3));
  EXPECT_NEAR(w.trace(), 1.0, 1e-13);
  const RealVector ev = eigvalsh(w);
  EXPECT_NEAR(ev(8), -1.0 / 6.0, 1e-12);
}

TEST(Witness, FromSchmidtHasUnitTrace) {
  Rng rng(6);
  const BipartiteOperator rho(Dims{3, 3}, random_density(9, rng));
  const HermitianMatrix w = witness_from_schmidt(operator_schmidt(rho));
  EXPECT_NEAR(w.trace(), 1.0, 1e-12);
}

TEST(BcRegion, ClosedForms) {
  EXPECT_TRUE(is_positive_bc(1.0, 0.0));
  EXPECT_TRUE(is_positive_bc(1.0, 1.0));
  EXPECT_TRUE(is_positive_bc(0.5, 0.5));
  EXPECT_FALSE(is_positive_bc(1.2, 1.2));
  EXPECT_FALSE(is_positive_bc(0.0, 1.3));
  EXPECT_TRUE(is_completely_positive_bc(0.0, 0.0));
  EXPECT_FALSE(is_positive_not_cp_bc(0.0, 0.0));
  EXPECT_TRUE(is_indecomposable_bc(1.0, 0.0));
  EXPECT_FALSE(is_indecomposable_bc(1.0, 1.0));
  // bc = (b + c - 1)^2 at t = 1/2 of the boundary parametrization
  const double den = 1.0 - 0.5 + 0.25;
  EXPECT_TRUE(is_exposed_bc(0.25 / den, 1.0 / den));
  EXPECT_FALSE(is_exposed_bc(0.5, 0.5));
}

TEST(BcRegion, TheoremHull) {
  const double r = 3.0 * (std::sqrt(2.0) - 1.0);
  EXPECT_TRUE(in_theorem_hull_bc(1.0, 0.0));
  EXPECT_TRUE(in_theorem_hull_bc(0.0, 1.0));
  EXPECT_TRUE(in_theorem_hull_bc(1.0, 1.0));
  EXPECT_TRUE(in_theorem_hull_bc(1.2, 1.2));
  EXPECT_TRUE(in_theorem_hull_bc(r, 0.0));
  EXPECT_FALSE(in_theorem_hull_bc(1.3, 0.0));
  EXPECT_FALSE(in_theorem_hull_bc(1.25, 1.25));
}

TEST(BcRegion, PositivityBoundaryIsTight) {
  const double b = 0.0, c = 1.3;
  ASSERT_FALSE(is_positive_bc(b, c));
  const MapSpec phi = MapSpec::generalized_choi(b, c);
  Rng rng(7);
  double worst = 1.0;
  for (int k = 0; k < 4000; ++k) {
    const ComplexVector v = haar_vector(3, rng);
    worst = std::min(worst, eigvalsh(HermitianMatrix(phi(projector(v))))(2));
  }
  EXPECT_LT(worst, 0.0);
}
