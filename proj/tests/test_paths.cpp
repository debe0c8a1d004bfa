#include <cmath>
#include <numbers>

#include "algpaths/components.hpp"
#include "algpaths/paths.hpp"
#include "test_support.hpp"

using namespace algpaths;
using algpaths::testing::diag;
using algpaths::testing::dist;
using algpaths::testing::kind_of;
using algpaths::testing::mat;

namespace {

const Scalar I(0, 1);

RootSystem r01() { return validate_roots({0.0, 1.0}); }

}  // namespace

TEST(ExpLocal, ShearOfProjection) {
  const auto a = certify(diag({1, 0}), r01());
  const auto b = certify(mat({{1, 0.5}, {0, 0}}), r01());
  const auto p = connect_exp_local(a, b);
  ASSERT_EQ(p.generators.size(), 1u);
  EXPECT_LE(dist(p.generators[0], mat({{0, -0.5}, {0, 0}})), 1e-15);
  for (double t : {0.0, 0.3, 1.0}) EXPECT_LE(dist(p.at(t), mat({{1, 0.5 * t}, {0, 0}})), 1e-15);
  EXPECT_TRUE(verify_path(p, r01()).passed);
}

TEST(ExpLocal, EqualEndpointsGiveZeroGenerator) {
  const auto a = random_element(ComponentSignature::from_ranks({2, 1}), r01(), 4, false);
  const auto p = connect_exp_local(a, a);
  EXPECT_LE(operator_norm(p.generators[0]), 1e-14);
}

TEST(ExpLocal, Preconditions) {
  const auto a = certify(diag({1, 0}), r01());
  EXPECT_EQ(kind_of([&] { connect_exp_local(a, certify(diag({0, 1}), r01())); }), ErrorKind::NotLocallyClose);
  EXPECT_EQ(kind_of([&] { connect_exp_local(a, certify(diag({1, 1}), r01())); }), ErrorKind::NotSameComponent);
}

TEST(ExpGlobal, AntipodalProjections) {
  const auto a = certify(diag({1, 0}), r01());
  const auto b = certify(diag({0, 1}), r01());
  const auto p = connect_exp_global(a, b);
  EXPECT_EQ(p.generators.size(), 2u);
  EXPECT_EQ(p.at(0.0), a.matrix());
  EXPECT_LE(dist(p.at(1.0), b.matrix()), 1e-12);
  EXPECT_TRUE(verify_path(p, r01()).passed);
}

TEST(ExpGlobal, RandomPairsCertify) {
  const RootSystem r = validate_roots({1.0, I, -1.0});
  const auto sig = ComponentSignature::from_ranks({1, 2, 1});
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto a = random_element(sig, r, 100 + s, false);
    const auto b = random_element(sig, r, 200 + s, false);
    const auto p = connect_exp_global(a, b);
    const auto cert = inspect_path(p, r);
    EXPECT_TRUE(cert.passed) << cert.where << " " << cert.worst;
    EXPECT_LE(cert.membership, 1e-9);
  }
}

TEST(SelfAdjoint, QuarterTurn) {
  const auto a = certify(diag({1, 0}), r01());
  const auto b = certify(diag({0, 1}), r01());
  const auto p = connect_selfadjoint(a, b);
  ASSERT_EQ(p.generators.size(), 1u);
  const double h = std::numbers::pi / 2;
  EXPECT_LE(dist(p.generators[0], mat({{0, -h * I}, {h * I, 0}})), 1e-12);
  for (double t : {0.25, 0.5, 0.75}) EXPECT_LE(hermitian_defect(p.at(t)), 1e-14);
  EXPECT_TRUE(verify_path(p, r01()).passed);
}

TEST(SelfAdjoint, RejectsObliqueEndpoint) {
  const auto a = certify(diag({1, 0}), r01());
  EXPECT_EQ(kind_of([&] { connect_selfadjoint(a, certify(mat({{0, 1}, {0, 1}}), r01())); }),
            ErrorKind::NotSelfAdjoint);
}

TEST(Polygonal, TwoExactSegments) {
  const auto a = certify(diag({1, 0}), r01());
  const auto b = certify(mat({{1, 0.5}, {0, 0}}), r01());
  const auto p = connect_polygonal(a, b);
  EXPECT_EQ(p.segments(), 2u);
  for (double c : p.segment_certificates) EXPECT_LE(c, 1e-15);
  EXPECT_EQ(p.breakpoints.front().matrix(), a.matrix());
  EXPECT_EQ(p.breakpoints.back().matrix(), b.matrix());
}

TEST(Polygonal, EqualEndpoints) {
  const auto a = certify(diag({1, 0}), r01());
  EXPECT_EQ(connect_polygonal(a, a).segments(), 0u);
}

TEST(Polygonal, AntipodalPairUsesMidpoint) {
  const auto a = certify(diag({1, 0}), r01());
  const auto b = certify(diag({0, 1}), r01());
  const auto p = connect_polygonal(a, b);
  EXPECT_EQ(p.segments(), 4u);
  EXPECT_TRUE(verify_path(p, r01()).passed);
}

TEST(Polygonal, CloseIdempotentsTakeTwoSegments) {
  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    const auto a = random_element(ComponentSignature::from_ranks({2, 2}), r01(), rng, false);
    const Matrix z = 0.05 * random_gaussian(4, rng);
    const Matrix g = mat_exp(z);
    const auto b = certify(g * a.matrix() * g.inverse(), r01());
    const auto p = connect_polygonal(a, b);
    EXPECT_EQ(p.segments(), 2u);
    EXPECT_TRUE(verify_path(p, r01()).passed);
  }
}

TEST(MinDegree, StraightSegment) {
  // ef = f and fe = e make the segment between them idempotent.
  const auto e = certify(mat({{1, 0}, {0, 0}}), r01());
  const auto f = certify(mat({{1, 1}, {0, 0}}), r01());
  const auto res = min_degree_search(e, f, 3, 1);
  ASSERT_TRUE(res.path.has_value());
  EXPECT_EQ(res.degree, 1);
  EXPECT_LE(res.path->certificate, 1e-8);
}

TEST(MinDegree, RandomIdempotentsJoinAtLowDegree) {
  const auto sig = ComponentSignature::from_ranks({2, 2});
  const auto a = random_element(sig, r01(), 31, false);
  const auto b = random_element(sig, r01(), 32, false);
  const auto res = min_degree_search(a, b, 3, 5);
  ASSERT_TRUE(res.path.has_value());
  EXPECT_LE(res.degree, 3);
  EXPECT_TRUE(verify_path(*res.path, r01()).passed);
  EXPECT_LE(dist(res.path->x(0.0), a.matrix()), 1e-12);
  EXPECT_LE(dist(res.path->x(1.0), b.matrix()), 1e-9 * (1 + operator_norm(b.matrix())));
}

TEST(MinDegree, SelfAdjointAntipodalHasNoLowDegreePath) {
  const auto a = certify(diag({1, 0}), r01());
  const auto b = certify(diag({0, 1}), r01());
  MinDegreeOptions opt;
  opt.self_adjoint = true;
  opt.restarts = 4;
  opt.min_motion = 0.1;
  const auto res = min_degree_search(a, b, 2, 3, opt);
  EXPECT_FALSE(res.path.has_value());
  ASSERT_EQ(res.best_residual_per_degree.size(), 2u);
  EXPECT_GE(res.best_residual_per_degree[0], 1e-3);
  EXPECT_GE(res.best_residual_per_degree[1], 1e-3);
}

TEST(CompositionObjective, GradientMatchesFiniteDifferences) {
  Rng rng(2);
  const std::vector<Scalar> p = validate_roots({0.0, 1.0, I}).coefficients();
  std::vector<Matrix> cs;
  for (int k = 0; k < 3; ++k) cs.push_back(0.5 * random_gaussian(3, rng));
  const MatPoly x(cs);
  std::vector<Matrix> grad;
  composition_objective(p, x, &grad);
  ASSERT_EQ(grad.size(), cs.size());
  const double h = 1e-6;
  for (std::size_t k = 0; k < cs.size(); ++k)
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j < 3; ++j)
        for (const Scalar dir : {Scalar(1), I}) {
          auto plus = cs, minus = cs;
          plus[k](i, j) += h * dir;
          minus[k](i, j) -= h * dir;
          const double fd =
              (composition_objective(p, MatPoly(plus)) - composition_objective(p, MatPoly(minus))) / (2 * h);
          // gradient is d/d(re) + i d/d(im)
          const double analytic = dir == Scalar(1) ? grad[k](i, j).real() : grad[k](i, j).imag();
          EXPECT_NEAR(analytic, fd, 1e-5 * (1 + std::abs(fd)));
        }
}

TEST(VerifyPath, AcceptsAffineProjectionFamily) {
  const Path path = PolynomialPath{MatPoly({diag({0, 1}), mat({{0, 1}, {0, 0}})}), r01(), 0.0};
  EXPECT_TRUE(verify_path(path, r01()).passed);
}

TEST(VerifyPath, RejectsStraightLineBetweenProjections) {
  const Path path = PolynomialPath{MatPoly({diag({1, 0}), diag({-1, 1})}), r01(), 0.0};
  EXPECT_FALSE(inspect_path(path, r01()).passed);
  EXPECT_EQ(kind_of([&] { verify_path(path, r01()); }), ErrorKind::CertificationFailed);
}

TEST(UnitaryLogFactors, MinusIdentitySplits) {
  const Matrix u = -Matrix::Identity(2, 2);
  const auto ks = unitary_log_factors(u, 5);
  ASSERT_EQ(ks.size(), 2u);
  Matrix prod = Matrix::Identity(2, 2);
  for (const auto& k : ks) {
    EXPECT_LE(hermitian_defect(k), 1e-12);
    prod = mat_exp((I * k).eval()) * prod;
  }
  EXPECT_LE(dist(prod, u), 1e-12);
}

TEST(UnitaryLogFactors, GenericUnitaryOneFactor) {
  Rng rng(6);
  const Matrix u = random_unitary(4, rng);
  const auto ks = unitary_log_factors(u);
  ASSERT_EQ(ks.size(), 1u);
  EXPECT_LE(dist(mat_exp((I * ks[0]).eval()), u), 1e-12);
}
