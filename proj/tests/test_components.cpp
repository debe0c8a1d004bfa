#include "algpaths/components.hpp"
#include "test_support.hpp"

using namespace algpaths;
using algpaths::testing::diag;
using algpaths::testing::dist;
using algpaths::testing::kind_of;
using algpaths::testing::mat;

namespace {

ComponentSignature sig_of(const Matrix& a, const RootSystem& r) { return signature(certify(a, r)); }

}  // namespace

TEST(Signature, Examples) {
  const RootSystem r01 = validate_roots({0.0, 1.0});
  EXPECT_EQ(sig_of(diag({0, 1, 1}), r01).ranks, (std::vector<int>{1, 2}));
  EXPECT_EQ(sig_of(mat({{0, 1}, {0, 1}}), r01).ranks, (std::vector<int>{1, 1}));
  const RootSystem r = validate_roots({1.0, 2.0});
  EXPECT_EQ(sig_of(2.0 * Matrix::Identity(3, 3), r).ranks, (std::vector<int>{0, 3}));
}

TEST(Signature, ParseAndRender) {
  const auto s = ComponentSignature::parse("1, 2,0");
  EXPECT_EQ(s.ranks, (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(s.dim, 3);
  EXPECT_EQ(s.to_string(), "1,2,0");
  EXPECT_EQ(kind_of([] { ComponentSignature::parse("1,-1"); }), ErrorKind::BadSignature);
}

TEST(SameComponent, Examples) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto e = certify(diag({1, 0}), r);
  EXPECT_TRUE(same_component(e, certify(diag({0, 1}), r)));
  EXPECT_TRUE(same_component(e, certify(mat({{0, 1}, {0, 1}}), r)));
  EXPECT_FALSE(same_component(e, certify(diag({1, 1}), r)));
  EXPECT_EQ(kind_of([&] { same_component(e, certify(diag({1, 0, 0}), r)); }), ErrorKind::DimMismatch);
  EXPECT_EQ(kind_of([&] { same_component(e, certify(diag({1, 0}), validate_roots({1.0, 0.0}))); }),
            ErrorKind::RootMismatch);
}

TEST(IsIsolated, AgreesWithMatrixUnitCommutation) {
  const RootSystem r = validate_roots({0.0, 1.0, -1.0});
  Rng rng(17);
  const std::vector<std::vector<int>> sigs{{3, 0, 0}, {0, 0, 3}, {1, 2, 0}, {1, 1, 1}, {0, 2, 1}};
  for (const auto& ranks : sigs)
    for (int k = 0; k < 5; ++k) {
      const auto el = random_element(ComponentSignature::from_ranks(ranks), r, rng, k % 2 == 0);
      EXPECT_EQ(is_isolated(el), commutes_with_matrix_units(el.matrix(), 1e-9));
    }
}

TEST(LineDirection, RankOneProjection) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto w = line_direction(certify(diag({0, 1}), r));
  EXPECT_LE(dist(w.direction, mat({{0, 1}, {0, 0}})), 1e-15);
  EXPECT_LE(w.certificate, 1e-15);
}

TEST(LineDirection, CentralElementThrows) {
  const RootSystem r = validate_roots({0.0, 1.0});
  EXPECT_EQ(kind_of([&] { line_direction(certify(Matrix::Identity(2, 2), r)); }),
            ErrorKind::CentralElement);
}

// Points a + s b stay algebraic for every s, including large ones.
TEST(LineDirection, RandomThreeRootElement) {
  const RootSystem r = validate_roots({0.0, 1.0, 2.0});
  const auto el = random_element(ComponentSignature::from_ranks({2, 1, 1}), r, 5, false);
  const auto w = line_direction(el);
  EXPECT_LE(w.certificate, 1e-9);
  EXPECT_NEAR(operator_norm(w.direction), 1.0, 1e-12);
  for (double s : {1.0, 1e3, 1e6}) {
    const Matrix x = el.matrix() + s * w.direction;
    EXPECT_NO_THROW(certify_scaled(x, r));
  }
  EXPECT_GE(operator_norm((el.matrix() + 1e6 * w.direction).eval()), 1e6 - operator_norm(el.matrix()));
}

TEST(DistanceScan, SwappedRankPairs) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto s12 = ComponentSignature::from_ranks({1, 2});
  const auto s21 = ComponentSignature::from_ranks({2, 1});
  const auto rep = distance_scan(s12, s21, r, 8, 7, true);
  EXPECT_GE(rep.best_distance, 1.0 - 1e-6);
  EXPECT_EQ(signature(rep.witness.first), s12);
  EXPECT_EQ(signature(rep.witness.second), s21);
  EXPECT_NEAR(dist(rep.witness.first.matrix(), rep.witness.second.matrix()), rep.best_distance, 1e-12);
}

TEST(DistanceScan, CentralPairIsExact) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto rep = distance_scan(ComponentSignature::from_ranks({2, 0}), ComponentSignature::from_ranks({0, 2}),
                                 r, 4, 1, false);
  EXPECT_NEAR(rep.best_distance, 1.0, 1e-12);
}

TEST(DistanceScan, SerialMatchesThreaded) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto s1 = ComponentSignature::from_ranks({1, 2});
  const auto s2 = ComponentSignature::from_ranks({2, 1});
  DistanceScanOptions serial, threaded;
  serial.threads = 1;
  threaded.threads = 3;
  const auto a = distance_scan(s1, s2, r, 6, 99, false, serial);
  const auto b = distance_scan(s1, s2, r, 6, 99, false, threaded);
  EXPECT_EQ(a.best_distance, b.best_distance);
  EXPECT_EQ(a.best_restart, b.best_restart);
  EXPECT_EQ(a.witness.first.matrix(), b.witness.first.matrix());
}

TEST(DistanceScan, LargerBudgetNeverWorse) {
  const RootSystem r = validate_roots({0.0, 1.0});
  const auto s1 = ComponentSignature::from_ranks({1, 2});
  const auto s2 = ComponentSignature::from_ranks({2, 1});
  const double small = distance_scan(s1, s2, r, 3, 11, false).best_distance;
  const double large = distance_scan(s1, s2, r, 9, 11, false).best_distance;
  EXPECT_LE(large, small);
}

TEST(DistanceScan, Preconditions) {
  const RootSystem r = validate_roots({0.0, 1.0});
  EXPECT_EQ(kind_of([&] {
              distance_scan(ComponentSignature::from_ranks({1, 1}), ComponentSignature::from_ranks({1, 2}), r, 2,
                            1, false);
            }),
            ErrorKind::BadSignature);
  EXPECT_EQ(kind_of([&] {
              distance_scan(ComponentSignature::from_ranks({1, 1, 0}), ComponentSignature::from_ranks({0, 1, 1}),
                            r, 2, 1, false);
            }),
            ErrorKind::BadSignature);
}
