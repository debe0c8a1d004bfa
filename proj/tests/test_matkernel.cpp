#include <cmath>
#include <numbers>

#include "algpaths/matrix_polynomial.hpp"
#include "algpaths/random.hpp"
#include "test_support.hpp"

using namespace algpaths;
using algpaths::testing::diag;
using algpaths::testing::dist;
using algpaths::testing::mat;

TEST(OperatorNorm, Identity) { EXPECT_NEAR(operator_norm(Matrix::Identity(3, 3)), 1.0, 1e-15); }

TEST(OperatorNorm, SingleSingularValue) { EXPECT_NEAR(operator_norm(mat({{0, 2}, {0, 0}})), 2.0, 1e-15); }

TEST(OperatorNorm, GoldenRatio) {
  // largest root of s^4 - 3 s^2 + 1
  EXPECT_NEAR(operator_norm(mat({{1, 1}, {0, 1}})), 1.6180339887, 1e-10);
  EXPECT_NEAR(operator_norm(mat({{1, 1}, {0, 1}})), std::numbers::phi, 1e-14);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::Zero(4, 4)), 0);
  EXPECT_EQ(rank(diag({1, 1, 0})), 2);
  EXPECT_EQ(rank(diag({1, 1e-14})), 1);
}

TEST(MatExp, Examples) {
  EXPECT_LE(dist(mat_exp(Matrix::Zero(3, 3)), Matrix::Identity(3, 3)), 1e-15);
  EXPECT_LE(dist(mat_exp(mat({{0, 1}, {0, 0}})), mat({{1, 1}, {0, 1}})), 1e-15);
  EXPECT_LE(dist(mat_exp(diag({std::log(2.0), 0})), diag({2, 1})), 1e-15);
}

TEST(MatExp, LargeArgumentMatchesScalar) {
  EXPECT_LE(dist(mat_exp(diag({10.0, Scalar(0, std::numbers::pi)})), diag({std::exp(10.0), -1})), 1e-9 * std::exp(10.0));
}

TEST(MatLog, Examples) {
  EXPECT_LE(operator_norm(mat_log_near_identity(Matrix::Identity(2, 2))), 1e-15);
  EXPECT_LE(dist(mat_log_near_identity(mat({{1, 0.5}, {0, 1}})), mat({{0, 0.5}, {0, 0}})), 1e-15);
  EXPECT_LE(dist(mat_log_near_identity(diag({1.5, 1})), diag({std::log(1.5), 0})), 1e-14);
}

TEST(MatLog, RejectsFarFromIdentity) {
  try {
    mat_log_near_identity(diag({2.5, 1}));
    FAIL() << "expected NotNearIdentity";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNearIdentity);
  }
}

TEST(MatLog, RoundTripProperty) {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Index m = 1 + k % 8;
    Matrix x = random_gaussian(m, rng);
    x *= 0.5 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / operator_norm(x);
    EXPECT_LE(dist(mat_log_near_identity(mat_exp(x)), x), 1e-9);
  }
}

TEST(PolyEval, Examples) {
  const std::vector<Scalar> idem{0, -1, 1};  // z^2 - z
  EXPECT_LE(operator_norm(poly_eval_scalar_coeffs(idem, diag({1, 0}))), 0.0);
  EXPECT_LE(dist(poly_eval_scalar_coeffs(idem, mat({{0, 1}, {0, 0}})), -mat({{0, 1}, {0, 0}})), 0.0);
  const std::vector<Scalar> pm{-1, 0, 1};  // (z - 1)(z + 1)
  EXPECT_LE(operator_norm(poly_eval_scalar_coeffs(pm, diag({1, -1, 1}))), 0.0);
}

TEST(Polar, FactorsAreUnitaryAndPositive) {
  Rng rng(5);
  for (int k = 0; k < 20; ++k) {
    const Matrix a = random_gaussian(1 + k % 6, rng);
    const auto f = polar_decomposition(a);
    const Eigen::Index m = a.rows();
    EXPECT_LE(dist(f.unitary.adjoint() * f.unitary, Matrix::Identity(m, m)), 1e-13);
    EXPECT_LE(hermitian_defect(f.positive), 0.0);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(f.positive).eigenvalues().minCoeff(), -1e-13);
    EXPECT_LE(dist(f.unitary * f.positive, a), 1e-12 * (1 + operator_norm(a)));
  }
}

TEST(RangeBasis, SpansTheRange) {
  const Matrix e = mat({{1, 1}, {0, 0}});
  const Matrix b = range_basis(e);
  ASSERT_EQ(b.cols(), 1);
  EXPECT_NEAR(std::abs(b(1, 0)), 0.0, 1e-15);
}

TEST(MatrixPolynomial, ComposeIdempotentConstant) {
  const std::vector<Scalar> idem{0, -1, 1};
  const auto q = matpoly_compose_p(idem, MatPoly::constant(diag({1, 0})));
  EXPECT_TRUE(matpoly_is_zero(q, {}).is_zero);
  EXPECT_EQ(matpoly_is_zero(q, {}).max_coeff_norm, 0.0);
}

TEST(MatrixPolynomial, ComposeLineIsZero) {
  const std::vector<Scalar> idem{0, -1, 1};
  const Matrix e22 = diag({0, 1}), e12 = mat({{0, 1}, {0, 0}});
  const auto q = matpoly_compose_p(idem, MatPoly::line(e22, e12));
  const ZeroTest zt = matpoly_is_zero(q, {});
  EXPECT_TRUE(zt.is_zero);
  EXPECT_EQ(zt.max_coeff_norm, 0.0);
}

TEST(MatrixPolynomial, ComposeSegmentIsNotZero) {
  const std::vector<Scalar> idem{0, -1, 1};
  const auto q = matpoly_compose_p(idem, MatPoly::segment(diag({1, 0}), diag({0, 1})));
  // ((1-t)e + t f)^2 - ((1-t)e + t f) = (t^2 - t) 1 for e + f = 1
  ASSERT_EQ(q.degree(), 2);
  EXPECT_LE(operator_norm(q.coeff(0)), 0.0);
  EXPECT_NEAR(operator_norm(q.coeff(1)), 1.0, 1e-15);
  EXPECT_NEAR(operator_norm(q.coeff(2)), 1.0, 1e-15);
  EXPECT_FALSE(matpoly_is_zero(q, {}).is_zero);
}

TEST(MatrixPolynomial, ZeroPolynomial) {
  const ZeroTest zt = matpoly_is_zero(MatPoly(3, 2), {});
  EXPECT_TRUE(zt.is_zero);
  EXPECT_EQ(zt.max_coeff_norm, 0.0);
}

TEST(MatrixPolynomial, CompositionAgreesWithPointwise) {
  Rng rng(17);
  for (int k = 0; k < 50; ++k) {
    const Eigen::Index m = 1 + k % 5;
    std::vector<Matrix> c;
    for (int j = 0; j <= 1 + k % 3; ++j) c.push_back(random_gaussian(m, rng) / std::sqrt(double(m)));
    const MatPoly x(c);
    std::vector<Scalar> p{Scalar(0.3, -0.2), Scalar(-1, 0.5), Scalar(0.25), 1.0};
    const MatPoly q = matpoly_compose_p(p, x);
    for (double t : {-0.5, 0.0, 0.7, 1.0})
      EXPECT_LE(dist(q(Scalar(t)), poly_eval_scalar_coeffs(p, x(Scalar(t)))), 1e-10);
  }
}

TEST(MatrixPolynomial, DerivativeAndProduct) {
  const Matrix a = mat({{1, 2}, {3, 4}}), b = mat({{0, 1}, {1, 0}});
  const MatPoly x = MatPoly::line(a, b);
  const MatPoly sq = x * x;
  ASSERT_EQ(sq.degree(), 2);
  EXPECT_LE(dist(sq.coeff(1), a * b + b * a), 0.0);
  const MatPoly d = sq.derivative();
  EXPECT_LE(dist(d.coeff(1), 2.0 * b * b), 0.0);
}
