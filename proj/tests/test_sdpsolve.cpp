#include <gtest/gtest.h>

#include "abssep/sdpsolve.hpp"
#include "abssep/witness.hpp"

using namespace abssep;

namespace {

ComplexMatrix m2(double a, double b, double c, double d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST(Solve, ScalarLmi) {
  // min x  s.t.  [[x, 1], [1, x]] >= 0  ->  x = 1
  SdpProblem p(1);
  p.c(0) = 1.0;
  p.blocks.push_back({m2(0, 1, 1, 0), {{0, m2(1, 0, 0, 1)}}});
  const SdpResult r = solve(p, {.x0 = RealVector::Constant(1, 3.0)});
  EXPECT_NEAR(r.primal_value, 1.0, 1e-6);
  EXPECT_LE(r.dual_value, r.primal_value);
  EXPECT_GE(r.dual_value, 1.0 - 1e-6);
}

TEST(Solve, LinearProgramWithEquality) {
  // min -x0 - 2 x1  s.t.  x0 + x1 = 1, x >= 0  ->  -2 at (0, 1)
  SdpProblem p(2);
  p.c << -1.0, -2.0;
  p.add_eq(RealVector::Ones(2), 1.0);
  p.add_ineq((RealVector(2) << -1.0, 0.0).finished(), 0.0);
  p.add_ineq((RealVector(2) << 0.0, -1.0).finished(), 0.0);
  const SdpResult r = solve(p);
  EXPECT_NEAR(r.primal_value, -2.0, 1e-6);
  EXPECT_NEAR(r.x(1), 1.0, 1e-6);
}

TEST(Solve, InfeasibleStartIsRepaired) {
  // Start outside the cone: min x s.t. x >= 2 as a 1x1 LMI
  SdpProblem p(1);
  p.c(0) = 1.0;
  ComplexMatrix f0(1, 1), f1(1, 1);
  f0(0, 0) = -2.0;
  f1(0, 0) = 1.0;
  p.blocks.push_back({f0, {{0, f1}}});
  EXPECT_NEAR(solve(p).primal_value, 2.0, 1e-6);
}

TEST(Solve, DetectsInfeasibility) {
  SdpProblem p(1);
  p.c(0) = 1.0;
  p.add_ineq(RealVector::Constant(1, -1.0), -1.0);  // x >= 1
  p.add_ineq(RealVector::Constant(1, 1.0), 0.0);    // x <= 0
  try {
    solve(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoInteriorPoint);
  }
}

TEST(Solve, ValidatesShapes) {
  SdpProblem p(2);
  p.blocks.push_back({m2(1, 0, 0, 1), {{5, m2(1, 0, 0, 1)}}});
  EXPECT_THROW(solve(p), Error);
}

TEST(HermitianVariable, RoundTrip) {
  Rng rng(3);
  const ComplexMatrix g = ginibre(3, 3, rng);
  const ComplexMatrix h = (g + g.adjoint()) / 2.0;
  const HermitianVariable v{3, 2, true};
  RealVector x = RealVector::Zero(v.offset + v.count());
  v.assign(h, x);
  EXPECT_LT((v.value(x) - h).norm(), 1e-14);
  EXPECT_EQ((HermitianVariable{4, 0, false}.count()), 10);
}

// Values frozen from an independent cvxpy/SCS model of the same reduced problem.
TEST(MinWitness, MatchesOracle) {
  const auto a = extremal_witness_spectrum(-0.4, 0.62, 9);
  const auto b = extremal_witness_spectrum(-0.4, 0.65, 9);
  EXPECT_NEAR(min_witness_over_abs_ppt(a, Dims{3, 3}, LmiMode::Full), -0.0040074344, 1e-6);
  EXPECT_NEAR(min_witness_over_abs_ppt(b, Dims{3, 3}, LmiMode::Full), -0.0104818758, 1e-6);
  EXPECT_NEAR(min_witness_over_abs_ppt(a, Dims{3, 3}, LmiMode::Submatrix2x2), -0.0040074344, 1e-6);
}

TEST(MinWitness, NonnegativeAtTheBound) {
  for (double ell : {-0.45, -0.3, -0.1}) {
    const auto mu = extremal_witness_spectrum(ell, f_lemma2(ell), 9);
    const SdpResult r = min_witness_solve(mu, Dims{3, 3}, LmiMode::Full);
    EXPECT_GE(r.primal_value, -1e-9) << ell;
    EXPECT_GE(r.dual_value, -1e-6) << ell;
  }
}

TEST(MinWitness, RejectsUnsortedOrLargeFull) {
  std::vector<double> mu(9, 1.0 / 9.0);
  mu[0] = 0.0;
  EXPECT_THROW(min_witness_over_abs_ppt(mu, Dims{3, 3}, LmiMode::Full), Error);
  EXPECT_THROW(min_witness_over_abs_ppt(std::vector<double>(16, 1.0 / 16), Dims{4, 4}, LmiMode::Full), Error);
}

TEST(Diamond, ChoiSdpMatchesCertificate) {
  const SdpResult r = diamond_norm_solve(MapSpec::choi());
  EXPECT_NEAR(r.primal_value, 4.0 / 3.0, 1e-6);
  EXPECT_NEAR(diamond_norm_ub(MapSpec::choi(), choi_diamond_certificate()), 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(min_eig_lb_from_diamond(4.0 / 3.0), -1.0 / 6.0, 1e-15);
}

TEST(LambdaMax, ChoiSdpMatchesCertificate) {
  const SdpResult r = max_eig_solve(MapSpec::choi());
  EXPECT_NEAR(r.primal_value, 2.0 / 3.0, 1e-6);
  EXPECT_GE(r.dual_value, r.primal_value);
  EXPECT_NEAR(max_eig_ub(MapSpec::choi(), choi_lambda_max_certificate()), 2.0 / 3.0, 1e-12);
}

TEST(LambdaMax, BreuerHallSdp) {
  EXPECT_NEAR(max_eig_solve(MapSpec::breuer_hall(4)).primal_value, 0.5, 1e-6);
}

TEST(Certificates, RejectsNonPsd) {
  DiamondCertificate c = choi_diamond_certificate();
  c.y0(0, 0) -= 0.5;
  try {
    diamond_norm_ub(MapSpec::choi(), c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CertificateRejected);
  }
  ComplexMatrix y = choi_lambda_max_certificate();
  y(1, 1) = -0.1;
  EXPECT_THROW(max_eig_ub(MapSpec::choi(), y), Error);
}

TEST(Certificates, GeneralizedChoiCorners) {
  const double r = 3.0 * (std::sqrt(2.0) - 1.0);
  const auto lm = generalized_choi_lambda_max_certificate(0.0, r);
  EXPECT_NEAR(check_lambda_max_certificate(MapSpec::generalized_choi(0.0, r), lm.y).objective,
              (9.0 - 3.0 * std::sqrt(2.0)) / 7.0, 1e-12);
  const auto c = generalized_choi_lambda_max_certificate(1.2, 1.2);
  EXPECT_NEAR(check_lambda_max_certificate(MapSpec::generalized_choi(1.2, 1.2), c.y).objective, 0.6, 1e-12);
  EXPECT_TRUE(generalized_choi_lambda_max_certificate(1.3, 0.5).case_one);
}

TEST(Certificates, BreuerHall) {
  for (int n : {4, 6, 8}) {
    const MapSpec bh = MapSpec::breuer_hall(n);
    EXPECT_NEAR(diamond_norm_ub(bh, breuer_hall_diamond_certificate(n)), (n + 2.0) / n, 1e-12);
    EXPECT_NEAR(max_eig_ub(bh, breuer_hall_lambda_max_certificate(n)), 1.0 / (n - 2.0), 1e-12);
  }
}
