#include <gtest/gtest.h>

#include "abssep/bipartite.hpp"
#include "abssep/matcore.hpp"

using namespace abssep;

namespace {

ComplexMatrix random_hermitian(int n, Rng& rng) {
  const ComplexMatrix g = ginibre(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

}  // namespace

TEST(HermitianMatrix, SymmetrizesSmallNoise) {
  ComplexMatrix a(2, 2);
  a << 1.0, Complex(0.5, 1e-12), Complex(0.5, 0.0), 2.0;
  const HermitianMatrix h(a);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(HermitianMatrix{a}, Error);
  EXPECT_THROW(HermitianMatrix{ComplexMatrix(2, 3)}, Error);
}

TEST(Eigh, PauliY) {
  ComplexMatrix y(2, 2);
  y << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  const auto e = eigh(HermitianMatrix(y));
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values(1), -1.0, 1e-14);
}

TEST(Eigh, ReconstructsRandomMatrices) {
  Rng rng(7);
  for (int n : {1, 2, 3, 5, 9, 16}) {
    const ComplexMatrix a = random_hermitian(n, rng);
    const auto e = eigh(HermitianMatrix(a));
    const ComplexMatrix& v = e.vectors;
    const ComplexMatrix back = v * e.values.cast<Complex>().asDiagonal() * v.adjoint();
    EXPECT_LT((back - a).norm(), 1e-12 * (1.0 + a.norm())) << "n=" << n;
    EXPECT_LT((v.adjoint() * v - ComplexMatrix::Identity(n, n)).norm(), 1e-12);
    for (int i = 0; i + 1 < n; ++i) EXPECT_GE(e.values(i), e.values(i + 1));
  }
}

TEST(Eigh, MatchesEigenSolver) {
  Rng rng(11);
  const ComplexMatrix a = random_hermitian(12, rng);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(a);
  const RealVector ours = eigvalsh(HermitianMatrix(a));
  for (int i = 0; i < 12; ++i) EXPECT_NEAR(ours(i), ref.eigenvalues()(11 - i), 1e-12);
}

TEST(Eigh, RepeatedEigenvalues) {
  const RealVector ev = eigvalsh(HermitianMatrix::identity(6) * 0.25);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(ev(i), 0.25, 1e-15);
  const RealVector sw = eigvalsh(swap_operator(3));
  EXPECT_NEAR(sw(0), 1.0, 1e-13);
  EXPECT_NEAR(sw(5), 1.0, 1e-13);
  EXPECT_NEAR(sw(6), -1.0, 1e-13);
}

TEST(Norms, TraceNormOfDiagonal) {
  RealMatrix d = RealMatrix::Zero(3, 3);
  d.diagonal() << 1.0, -2.0, 0.5;
  const ComplexMatrix c = d.cast<Complex>();
  EXPECT_NEAR(trace_norm(c), 3.5, 1e-14);
  EXPECT_NEAR(trace_norm(HermitianMatrix(c)), 3.5, 1e-14);
  EXPECT_NEAR(operator_norm(c), 2.0, 1e-14);
  EXPECT_NEAR(schatten_norm(c, Norm::Frobenius), std::sqrt(5.25), 1e-14);
}

TEST(Norms, SingularValuesOfRectangular) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 3);
  a(0, 0) = 3.0;
  a(1, 2) = Complex(0, 4.0);
  const RealVector s = singular_values(a);
  EXPECT_NEAR(s(0), 4.0, 1e-14);
  EXPECT_NEAR(s(1), 3.0, 1e-14);
}

TEST(Psd, Tolerance) {
  RealMatrix m = RealMatrix::Identity(2, 2);
  m(1, 1) = -1e-12;
  EXPECT_TRUE(is_psd(HermitianMatrix(m)).psd);
  m(1, 1) = -1e-6;
  const auto r = is_psd(HermitianMatrix(m));
  EXPECT_FALSE(r.psd);
  EXPECT_NEAR(r.min_eigenvalue, -1e-6, 1e-18);
}

TEST(Psd, MinMaxEigenvalue) {
  RealMatrix m(2, 2);
  m << 2.0, 1.0, 1.0, 2.0;
  EXPECT_NEAR(min_eigenvalue(m), 1.0, 1e-14);
  EXPECT_NEAR(max_eigenvalue(HermitianMatrix(m)), 3.0, 1e-14);
}
