#include <gtest/gtest.h>

#include "quadrank/wab_checks.hpp"

using namespace quadrank;

TEST(Decomposition, BinaryQuarticsOverF7AreAllWitnessed) {
  const auto rep = decomposition_check(VeroneseModel(1, 4), PrimeField(7));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.path, "membership");
  EXPECT_EQ(rep.scanned, 19608U);
  EXPECT_EQ(rep.rank3, 106U);
  EXPECT_EQ(rep.witnessed_base + rep.witnessed_extension, 106U);
  // frozen: 49 witnesses with ell = 1 and 57 with ell = 2
  EXPECT_EQ(rep.by_ell, (std::map<unsigned, std::uint64_t>{{1, 49}, {2, 57}}));
}

TEST(Decomposition, BinaryCubicsOverF7) {
  const auto rep = decomposition_check(VeroneseModel(1, 3), PrimeField(7));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.rank3, 8U);
}

TEST(Decomposition, PlaneConicsUseTheForwardImage) {
  const auto rep = decomposition_check(VeroneseModel(2, 2), PrimeField(5));
  EXPECT_EQ(rep.path, "forward");
  EXPECT_TRUE(rep.sets_equal);
  EXPECT_EQ(rep.forward_count, 31U);
  EXPECT_EQ(rep.rank3, 31U);
  EXPECT_TRUE(rep.ok());
}

TEST(Decomposition, SampledModeIsSeedDeterministic) {
  DecompositionOptions opt;
  opt.exhaustive = false;
  opt.samples = 300;
  opt.span_draws = 20'000;
  opt.seed = 9;
  const VeroneseModel model(1, 5);
  const auto a = decomposition_check(model, PrimeField(7), opt);
  const auto b = decomposition_check(model, PrimeField(7), opt);
  EXPECT_TRUE(a.ok());
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.rank3, 300U);
  EXPECT_EQ(a.from_span + a.from_forward, a.rank3);
  EXPECT_EQ(a.by_ell, b.by_ell);
  EXPECT_EQ(a.from_span, b.from_span);
  EXPECT_EQ(a.forward_rejected, b.forward_rejected);
}

TEST(Decomposition, UnsupportedInstancesThrow) {
  EXPECT_THROW(decomposition_check(VeroneseModel(1, 5), PrimeField(5)), UnsupportedCharacteristic);
  EXPECT_THROW(decomposition_check(VeroneseModel(2, 3), PrimeField(7)), UnsupportedModel);
}

TEST(Span, RankThreeImagesSpanTheQuadrics) {
  const std::vector<std::tuple<unsigned, unsigned, std::size_t>> cases{
      {1, 3, 3}, {1, 4, 6}, {1, 5, 10}, {2, 2, 6}, {2, 3, 27}, {3, 2, 20}};
  for (const auto& [n, d, dim] : cases) {
    const auto rep = qr3_span_check(VeroneseModel(n, d), PrimeField(101), 0);
    EXPECT_TRUE(rep.full()) << n << "," << d;
    EXPECT_EQ(rep.target, dim);
  }
}

TEST(Roundtrip, RecoversParametersOnBinaryForms) {
  for (const auto& [d, ell] : std::vector<std::pair<unsigned, unsigned>>{{4, 1}, {4, 2}, {5, 2}}) {
    const VeroneseModel model(1, d);
    SigmaEntry e;
    for (const auto& x : model.sigma_list())
      if (x.ell == ell) e = x;
    const auto rep = uniqueness_roundtrip(model, e, PrimeField(101), 50, 1);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
    EXPECT_EQ(rep.passed, 50U);
    EXPECT_GT(rep.injectivity_pairs, 0U);
  }
}

TEST(Grassmannian, QuadraticVeroneseOfThePlane) {
  const auto rep = veronese_g2_check(2);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.independent, 6);
  EXPECT_EQ(rep.kernel_dim, 6U);
  EXPECT_EQ(rep.representation_count, 6U);
  EXPECT_EQ(rep.certified, 6U);
  EXPECT_EQ(rep.displayed_product, 18U);
  ASSERT_TRUE(rep.counted);
  EXPECT_EQ(rep.phi3_count, 31U);
  EXPECT_EQ(rep.parameter_count, 31U);
}

TEST(Grassmannian, QuadraticVeroneseOfThreeSpace) {
  const auto rep = veronese_g2_check(3);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.independent, 20);
  EXPECT_EQ(rep.kernel_dim, 20U);
  EXPECT_EQ(rep.representation_count, 20U);
  EXPECT_EQ(rep.displayed_product, 60U);
  EXPECT_FALSE(rep.counted);
}

TEST(Identities, AllHoldOverAPrimeAndOverQ) {
  const VeroneseModel model(1, 4);
  const PrimeField k(31);
  for (const auto& t : identity_suite(model, quad_ideal_basis(model, k), k, 120, 4)) {
    EXPECT_EQ(t.failures, 0U) << t.identity;
    EXPECT_GT(t.instances, 0U) << t.identity;
  }
  const RationalField q;
  const VeroneseModel plane(2, 2);
  for (const auto& t : identity_suite(plane, quad_ideal_basis(plane, q), q, 20, 4)) EXPECT_EQ(t.failures, 0U) << t.identity;
}

TEST(Identities, CoversEveryNamedLaw) {
  const VeroneseModel model(1, 4);
  const PrimeField k(31);
  std::set<std::string> names;
  for (const auto& t : identity_suite(model, quad_ideal_basis(model, k), k, 40, 0)) names.insert(t.identity);
  for (const char* want : {"symmetry", "scaling", "determinant", "vanishing", "polarization-t", "polarization-h",
                           "rank-at-most-3"})
    EXPECT_TRUE(names.count(want)) << want;
}

TEST(Identities, ConicVanishingIsExhaustiveOverF3) {
  const auto t = vanishing_exhaustive_p1_2(PrimeField(3));
  EXPECT_EQ(t.failures, 0U);
  EXPECT_EQ(t.instances, 243U);
}

TEST(PointString, RendersProjectiveCoordinates) {
  EXPECT_EQ(point_string({1, 0, 4}), "[1:0:4]");
}
