#include <gtest/gtest.h>

#include <set>

#include "quadrank/rank_locus.hpp"

using namespace quadrank;

namespace {

using Histogram = std::map<unsigned, std::uint64_t>;

SymLinearMatrix<Fp> veronese_matrix(unsigned n, unsigned d, const PrimeField& k) {
  return assemble_m(quad_ideal_basis(VeroneseModel(n, d), k));
}

struct HistogramCase {
  std::string label;
  unsigned n, d;  // n == 0 selects the elliptic quintic fixture
  std::uint64_t p;
  Histogram counts;
};

// frozen oracle: rank histograms of M(y) over all of P^m(F_p), from the independent scan
const HistogramCase kHistograms[] = {
    {"P2_O2_F5", 2, 2, 5, {{3, 31}, {4, 775}, {6, 3100}}},
    {"P1_O4_F7", 1, 4, 7, {{3, 106}, {4, 5145}, {5, 14357}}},
    {"P1_O3_F7", 1, 3, 7, {{3, 8}, {4, 49}}},
    {"Fixture_F7", 0, 0, 7, {{3, 12}, {4, 624}, {5, 2165}}},
    {"Fixture_F11", 0, 0, 11, {{3, 7}, {4, 959}, {5, 15139}}},
    {"Fixture_F13", 0, 0, 13, {{3, 18}, {4, 3204}, {5, 27719}}},
};

SymLinearMatrix<Fp> matrix_for(const HistogramCase& c, const PrimeField& k) {
  return c.n == 0 ? assemble_m(fixture_elliptic_quintic(k)) : veronese_matrix(c.n, c.d, k);
}

}  // namespace

class RankHistogram : public ::testing::TestWithParam<HistogramCase> {};

TEST_P(RankHistogram, ExhaustiveScanMatchesOracle) {
  const auto& c = GetParam();
  const PrimeField k(c.p);
  ScanOptions opt;
  opt.threads = 2;
  const auto report = enumerate_phi(matrix_for(c, k), k, 3, opt);
  EXPECT_EQ(report.rank_counts, c.counts);
  EXPECT_EQ(report.scanned, report.total);
  EXPECT_EQ(report.points.size(), c.counts.at(3));
  EXPECT_EQ(report.at_most(2), 0U);
}

INSTANTIATE_TEST_SUITE_P(Oracle, RankHistogram, ::testing::ValuesIn(kHistograms),
                         [](const auto& info) { return info.param.label; });

TEST(ProjectiveIndex, RoundTripsOverP3F5) {
  const std::uint64_t total = projective_count(5, 4);
  EXPECT_EQ(total, 156U);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::uint32_t> pt(4);
  for (std::uint64_t i = 0; i < total; ++i) {
    projective_point(5, 4, i, pt.data());
    EXPECT_EQ(projective_index(5, 4, pt.data()), i);
    // normalized: the first nonzero coordinate is 1
    auto first = std::find_if(pt.begin(), pt.end(), [](std::uint32_t x) { return x != 0; });
    ASSERT_NE(first, pt.end());
    EXPECT_EQ(*first, 1U);
    seen.insert(pt);
  }
  EXPECT_EQ(seen.size(), total);
}

TEST(FpRankKernel, AgreesWithGenericRank) {
  const PrimeField k(7);
  const auto m = veronese_matrix(1, 4, k);
  const FpRankKernel kernel(m);
  std::vector<std::uint64_t> scratch(kernel.size() * kernel.size());
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::uint32_t> raw(m.forms());
    Vector<Fp> y(Index(m.forms()));
    for (std::size_t i = 0; i < raw.size(); ++i) {
      raw[i] = std::uint32_t(rng() % 7);
      y(Index(i)) = k.element(raw[i]);
    }
    EXPECT_EQ(Index(kernel.rank(raw.data(), scratch.data())), rank_at(m, y));
  }
}

TEST(Scan, ThreadCountDoesNotChangeTheResult) {
  const PrimeField k(7);
  const auto m = veronese_matrix(1, 4, k);
  ScanOptions one, many;
  many.threads = 4;
  const auto a = enumerate_phi(m, k, 3, one), b = enumerate_phi(m, k, 3, many);
  EXPECT_EQ(a.rank_counts, b.rank_counts);
  EXPECT_EQ(a.points, b.points);
}

TEST(Scan, SampledModeIsSeedDeterministic) {
  const PrimeField k(11);
  const auto m = assemble_m(fixture_elliptic_quintic(k));
  ScanOptions opt;
  opt.exhaustive = false;
  opt.samples = 5000;
  opt.seed = 42;
  const auto a = enumerate_phi(m, k, 3, opt);
  opt.threads = 3;
  const auto b = enumerate_phi(m, k, 3, opt);
  EXPECT_EQ(a.rank_counts, b.rank_counts);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(a.scanned, 5000U);
  EXPECT_FALSE(a.exhaustive);
}

TEST(Scan, OverBudgetThrows) {
  const PrimeField k(7);
  ScanOptions opt;
  opt.budget = 1000;
  EXPECT_THROW(enumerate_phi(veronese_matrix(1, 4, k), k, 3, opt), BudgetExceeded);
}

TEST(Scan, ListedPointsHaveTheReportedRank) {
  const PrimeField k(7);
  const auto m = assemble_m(fixture_elliptic_quintic(k));
  const auto report = enumerate_phi(m, k, 3, {});
  for (const auto& pt : report.points) {
    Vector<Fp> y(Index(pt.coords.size()));
    for (std::size_t i = 0; i < pt.coords.size(); ++i) y(Index(i)) = k.element(pt.coords[i]);
    EXPECT_EQ(rank_at(m, y), Index(pt.rank));
  }
}

TEST(Phi2, EmptyForTheFixtureAndVeronese) {
  for (std::uint64_t p : {7U, 11U}) {
    const PrimeField k(p);
    EXPECT_TRUE(phi2_empty_check(assemble_m(fixture_elliptic_quintic(k)), k));
    EXPECT_TRUE(phi2_empty_check(veronese_matrix(1, 4, k), k));
  }
}

TEST(MatrixCheck, FixtureMatchesDisplayedMatrix) {
  const RationalField q;
  const auto check = fixture_matrix_check(fixture_elliptic_quintic(q), q);
  EXPECT_TRUE(check.match);
  EXPECT_TRUE(check.diffs.empty());
  EXPECT_EQ(check.actual[1][1], "0");
}

TEST(MatrixCheck, PerturbedQuadricIsCaught) {
  const RationalField q;
  std::vector<std::string> quadrics(std::begin(kEllipticQuinticQuadrics), std::end(kEllipticQuinticQuadrics));
  quadrics[3] += " + 2*z3*z4";
  const auto check = fixture_matrix_check(quadric_space_from_text(quadrics, 5, q), q);
  EXPECT_FALSE(check.match);
  EXPECT_EQ(check.diffs.size(), 2U);
  for (const auto& d : check.diffs) EXPECT_EQ(d.row + d.col, 7);
}

TEST(SymLinearMatrix, EntriesAreLinearForms) {
  const RationalField q;
  const auto m = assemble_m(fixture_elliptic_quintic(q));
  for (Index i = 0; i < m.size(); ++i)
    for (Index j = 0; j < m.size(); ++j) {
      const auto e = m.entry(i, j);
      EXPECT_TRUE(e.is_zero() || e.degree() == 1);
      EXPECT_EQ(e, m.entry(j, i));
    }
}
