#include <cmath>

#include "algpaths/algebraic.hpp"
#include "algpaths/components.hpp"
#include "test_support.hpp"

using namespace algpaths;
using algpaths::testing::diag;
using algpaths::testing::dist;
using algpaths::testing::kind_of;
using algpaths::testing::mat;

namespace {

const Scalar I(0, 1);

}  // namespace

TEST(RootSystem, Examples) {
  const RootSystem r01 = validate_roots({0.0, 1.0});
  EXPECT_EQ(r01.min_gap(), 1.0);
  EXPECT_TRUE(r01.all_real());

  const RootSystem tri = validate_roots({1.0, I, -1.0});
  EXPECT_NEAR(tri.min_gap(), std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(tri.all_real());

  EXPECT_EQ(kind_of([] { validate_roots({0.0, 0.0}); }), ErrorKind::MultipleRoots);
  EXPECT_EQ(kind_of([] { validate_roots({}); }), ErrorKind::InvalidArgument);
}

TEST(RootSystem, MonicCoefficients) {
  const RootSystem r = validate_roots({1.0, -1.0});
  const auto& c = r.coefficients();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], Scalar(-1));
  EXPECT_EQ(c[1], Scalar(0));
  EXPECT_EQ(c[2], Scalar(1));
}

TEST(Certify, Examples) {
  const RootSystem r = validate_roots({0.0, 1.0});
  EXPECT_EQ(certify(diag({0, 1}), r).residual(), 0.0);
  EXPECT_LE(certify(mat({{0, 1}, {0, 1}}), r).residual(), 1e-15);
  EXPECT_EQ(kind_of([&] { certify(mat({{0, 1}, {0, 0}}), r); }), ErrorKind::NotAlgebraic);
}

TEST(QReduction, Examples) {
  EXPECT_TRUE(q_reduction(validate_roots({0.0, 1.0, I})) == validate_roots({0.0, 1.0}));
  EXPECT_TRUE(q_reduction(validate_roots({0.0, 1.0})) == validate_roots({0.0, 1.0}));
  EXPECT_EQ(kind_of([] { q_reduction(validate_roots({I, -I})); }), ErrorKind::EmptyRealPart);
}

TEST(SpectralResolution, TwoPointLagrange) {
  const RootSystem r = validate_roots({1.0, -1.0});
  const auto part = spectral_resolution(certify(diag({1, -1}), r));
  EXPECT_LE(dist(part.members[0], diag({1, 0})), 0.0);
  EXPECT_LE(dist(part.members[1], diag({0, 1})), 0.0);
  EXPECT_TRUE(part.self_adjoint);
}

TEST(SpectralResolution, ObliqueIdempotent) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const Matrix a = mat({{0, 1}, {0, 1}});
  const auto part = spectral_resolution(certify(a, r));
  EXPECT_LE(dist(part.members[0], mat({{1, -1}, {0, 0}})), 1e-15);
  EXPECT_LE(dist(part.members[1], a), 1e-15);
  EXPECT_LE(operator_norm((part.members[0] * part.members[1]).eval()), 1e-15);
  EXPECT_FALSE(part.self_adjoint);
}

TEST(SpectralResolution, CentralElement) {
  const Scalar l1(2.0, 1.0), l2(-3.0);
  const RootSystem r = validate_roots({l1, l2});
  const auto part = spectral_resolution(certify(l1 * Matrix::Identity(3, 3), r));
  EXPECT_LE(dist(part.members[0], Matrix::Identity(3, 3)), 1e-15);
  EXPECT_LE(operator_norm(part.members[1]), 1e-15);
}

TEST(Recombine, Examples) {
  const RootSystem r57 = validate_roots({5.0, 7.0});
  EXPECT_LE(dist(recombine({{diag({1, 0}), diag({0, 1})}, r57, true}).matrix(), diag({5, 7})), 0.0);

  const Scalar l1(0.5, -1.0), l2(4.0);
  const RootSystem r = validate_roots({l1, l2});
  const Matrix one = Matrix::Identity(2, 2), zero = Matrix::Zero(2, 2);
  EXPECT_LE(dist(recombine({{one, zero}, r, false}).matrix(), l1 * one), 0.0);

  const RootSystem r01 = validate_roots({0.0, 1.0});
  const Matrix a = mat({{0, 1}, {0, 1}});
  EXPECT_LE(dist(recombine(spectral_resolution(certify(a, r01))).matrix(), a), 1e-15);
}

TEST(RandomElement, CentralSignature) {
  const RootSystem r = validate_roots({2.0, 0.0, -1.0});
  const auto el = random_element(ComponentSignature::from_ranks({3, 0, 0}), r, 1, false);
  EXPECT_EQ(el.matrix(), (2.0 * Matrix::Identity(3, 3)).eval());
}

TEST(RandomElement, RankOneOrthogonalProjection) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto el = random_element(ComponentSignature::from_ranks({1, 1}), r, 9, true);
  const Matrix& a = el.matrix();
  EXPECT_LE(hermitian_defect(a), 1e-15);
  EXPECT_LE(dist(a * a, a), 1e-14);
  EXPECT_NEAR(a.trace().real(), 1.0, 1e-14);
}

TEST(RandomElement, Preconditions) {
  const RootSystem r = validate_roots({0.0, 1.0});
  EXPECT_EQ(kind_of([&] { random_element(ComponentSignature::from_ranks({1, 1, 1}), r, 1, false); }),
            ErrorKind::BadSignature);
  const RootSystem c = validate_roots({I, 1.0});
  EXPECT_EQ(kind_of([&] { random_element(ComponentSignature::from_ranks({1, 1}), c, 1, true); }),
            ErrorKind::InvalidArgument);
}

TEST(RandomElement, Deterministic) {
  const RootSystem r = validate_roots({0.0, 1.0, I});
  const auto sig = ComponentSignature::from_ranks({2, 1, 2});
  EXPECT_EQ(random_element(sig, r, 42, false).matrix(), random_element(sig, r, 42, false).matrix());
}

// Partition invariants and the self-adjoint norm identity over random samples.
TEST(SpectralResolution, InvariantsOnSamples) {
  const std::vector<std::vector<Scalar>> sets{{0.0, 1.0}, {1.0, I, -1.0}, {0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0, 2.0}};
  Rng rng(3);
  for (int k = 0; k < 200; ++k) {
    const RootSystem roots = validate_roots(sets[static_cast<std::size_t>(k) % sets.size()]);
    const Eigen::Index m = 2 + k % 6;
    std::vector<int> ranks(roots.size(), 0);
    for (Eigen::Index i = 0; i < m; ++i) ++ranks[static_cast<std::size_t>((i * 7 + k) % roots.size())];
    const auto sig = ComponentSignature::from_ranks(ranks);
    const bool sa = roots.all_real() && k % 2 == 0;
    const auto el = random_element(sig, roots, rng, sa);
    EXPECT_LE(el.residual(), 1e-9);
    const auto part = spectral_resolution(el);
    const auto res = partition_residuals(part, &el.matrix());
    const double na = operator_norm(el.matrix());
    EXPECT_LE(res.reconstruction, 1e-9 * (1 + na));
    EXPECT_LE(res.annihilation, 1e-9);
    EXPECT_LE(res.sum, 1e-9);
    EXPECT_LE(res.commutation, 1e-9 * (1 + na));
    EXPECT_EQ(signature(part), sig);
    if (sa) {
      EXPECT_LE(res.hermiticity, 1e-9);
      double occupied = 0;
      for (std::size_t i = 0; i < roots.size(); ++i)
        if (ranks[i] > 0) occupied = std::max(occupied, std::abs(roots[i]));
      EXPECT_LE(na, roots.max_modulus() + 1e-9);
      EXPECT_NEAR(na, occupied, 1e-9);
    }
  }
}

TEST(Certify, ConjugationInvariance) {
  const RootSystem r = validate_roots({0.0, 1.0, -1.0});
  Rng rng(8);
  const auto el = random_element(ComponentSignature::from_ranks({1, 2, 1}), r, rng, false);
  for (int k = 0; k < 10; ++k) {
    const Matrix g = random_invertible(4, 10.0, rng);
    const Matrix b = g * el.matrix() * g.inverse();
    const double kappa = operator_norm(g) * operator_norm(g.inverse().eval());
    EXPECT_LE(algebraic_residual(b, r), 1e-13 * kappa * kappa * std::pow(1 + operator_norm(b), 3));
  }
}
