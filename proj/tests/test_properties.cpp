#include <gtest/gtest.h>

#include "quadrank/rank_locus.hpp"
#include "quadrank/wab.hpp"

using namespace quadrank;

namespace {

const std::vector<std::pair<unsigned, unsigned>> kModels{{1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 2}, {2, 3}, {3, 2}};

Vector<Fp> random_vector(const PrimeField& k, std::size_t n, Rng& rng) {
  Vector<Fp> v(static_cast<Index>(n));
  for (Index i = 0; i < v.size(); ++i) v(i) = k.random(rng);
  return v;
}

}  // namespace

TEST(LocusProperties, UnitVectorsSpecializeToTheBasisQuadrics) {
  const PrimeField k(11);
  for (const auto& [n, d] : kModels) {
    const auto qs = quad_ideal_basis(VeroneseModel(n, d), k);
    const auto m = assemble_m(qs);
    for (std::size_t j = 0; j < qs.dimension(); ++j) {
      Vector<Fp> e = Vector<Fp>::Constant(Index(qs.dimension()), k(0));
      e(Index(j)) = k(1);
      EXPECT_EQ(m.at(e), qs.hessian(j).hessian());
      EXPECT_EQ(rank_at(m, e), form_rank(qs.hessian(j)));
    }
  }
}

TEST(LocusProperties, RankIsScaleInvariant) {
  const PrimeField k(13);
  Rng rng(31);
  for (const auto& [n, d] : kModels) {
    const auto m = assemble_m(quad_ideal_basis(VeroneseModel(n, d), k));
    for (int i = 0; i < 40; ++i) {
      const auto y = random_vector(k, m.forms(), rng);
      if (is_zero_section(std::vector<Fp>(y.begin(), y.end()))) continue;
      const Fp c = k.random_nonzero(rng);
      EXPECT_EQ(rank_at(m, Vector<Fp>(y * c)), rank_at(m, y));
    }
  }
}

TEST(LocusProperties, FiltrationIsNestedAndTotalsAddUp) {
  const PrimeField k(5);
  for (const auto& [n, d] : std::vector<std::pair<unsigned, unsigned>>{{1, 3}, {1, 4}, {2, 2}}) {
    const auto m = assemble_m(quad_ideal_basis(VeroneseModel(n, d), k));
    std::uint64_t previous = 0;
    std::set<PhiPoint> prior;
    for (unsigned r = 2; r <= 4; ++r) {
      const auto rep = enumerate_phi(m, k, r, {});
      std::uint64_t sum = 0;
      for (const auto& [rk, c] : rep.rank_counts) sum += c;
      EXPECT_EQ(sum, projective_count(5, m.forms()));
      EXPECT_GE(rep.points.size(), previous);
      std::set<std::vector<std::uint32_t>> now;
      for (const auto& pt : rep.points) now.insert(pt.coords);
      for (const auto& pt : prior) EXPECT_TRUE(now.count(pt.coords));
      prior = {rep.points.begin(), rep.points.end()};
      previous = rep.points.size();
    }
  }
}

TEST(EmbeddingProperties, SigmaListHasFloorHalfDEntries) {
  for (unsigned n = 1; n <= 3; ++n)
    for (unsigned d = 1; d <= 6; ++d) {
      if (binomial(n + d, n) > 36) continue;
      const VeroneseModel model(n, d);
      const auto sigma = model.sigma_list();
      EXPECT_EQ(sigma.size(), d / 2);
      for (const auto& e : sigma) {
        EXPECT_GE(e.ell, 1U);
        EXPECT_LE(2 * e.ell, d);
        EXPECT_GE(e.p, 1U);
        EXPECT_EQ(e.b_power, d - 2 * e.ell);
      }
    }
}

TEST(EmbeddingProperties, DimensionCountMatchesKernelRank) {
  const PrimeField k(101);
  for (unsigned n = 1; n <= 5; ++n)
    for (unsigned d = 2; d <= 6; ++d) {
      if (binomial(n + d, n) > 21) continue;
      const VeroneseModel model(n, d);
      EXPECT_EQ(quad_ideal_basis(model, k).dimension(), sym2_size(model.sections()) - model.h0(2 * d));
    }
}

TEST(WabProperties, CertificatesReExpandToTheirPolynomials) {
  const RationalField q;
  for (const auto& [n, d] : kModels) {
    const VeroneseModel model(n, d);
    const auto qs = quad_ideal_basis(model, q);
    for (const auto& e : model.sigma_list()) {
      auto sys = coefficient_polys(model, qs, e);
      const auto cert = plucker_certify(sys, q(1));
      for (std::size_t j = 0; j < sys.g.size(); ++j) {
        MultiPoly<Rational> sum(sys.arity());
        for (const auto& t : cert.expressions[j]) {
          MultiPoly<Rational> z = MultiPoly<Rational>::constant(sys.arity(), t.coeff);
          for (std::size_t a = 0; a < t.z.size(); ++a)
            for (unsigned r = 0; r < t.z[a]; ++r) z = z * MultiPoly<Rational>::variable(sys.arity(), sys.z_var(unsigned(a)), q(1));
          sum = sum + z * detail::plucker(sys, t.first[0], t.first[1], q(1)) * detail::plucker(sys, t.second[0], t.second[1], q(1));
        }
        EXPECT_EQ(sum, sys.g[j]) << model.name() << " ell " << e.ell << " G" << j;
      }
    }
  }
}

TEST(WabProperties, MultidegreeNeverExceedsTwoTwoTwo) {
  const PrimeField k(101);
  for (const auto& [n, d] : kModels) {
    const VeroneseModel model(n, d);
    const auto qs = quad_ideal_basis(model, k);
    for (const auto& e : model.sigma_list()) {
      const auto deg = coefficient_polys(model, qs, e).max_multidegree();
      EXPECT_LE(deg[0], 2U);
      EXPECT_LE(deg[1], 2U);
      EXPECT_LE(deg[2], 2U);
    }
  }
}

TEST(WabProperties, WitnessScalarReproducesTheQuadric) {
  const PrimeField k(17);
  for (unsigned d : {3U, 4U, 5U, 6U}) {
    const VeroneseModel model(1, d);
    const auto qs = quad_ideal_basis(model, k);
    const P1Membership<Fp> member(model, qs);
    Rng rng(d);
    for (const auto& e : model.sigma_list())
      for (int i = 0; i < 30; ++i) {
        const auto img = q_ab(model, qs, e, random_section(model, e.ell, k, rng), random_section(model, e.ell, k, rng),
                              random_section(model, e.b_power, k, rng));
        const Fp c = k.random_nonzero(rng);
        const Vector<Fp> target = img.coords * c;
        const auto r = member(target);
        if (r.rank != 3) continue;
        ASSERT_EQ(r.status, MembershipStatus::witnessed) << r.detail;
        const auto& w = *r.witness;
        const auto& ext = member.extension_field();
        const SigmaEntry we{w.ell, d - 2 * w.ell, w.ell, 0};
        const auto re = q_ab(model, member.lifted_space(), we, binary_coefficients(w.s, w.ell, ext(0)),
                             binary_coefficients(w.t, w.ell, ext(0)), binary_coefficients(w.h, we.b_power, ext(0)));
        EXPECT_EQ(Vector<Fp2>(re.coords * w.scalar), member.lift(target));
        EXPECT_GE(w.ell, e.ell);
      }
  }
}

TEST(WabProperties, ImageRankIsExactlyThreeWhenTheFormsAreIndependent) {
  const PrimeField k(23);
  Rng rng(77);
  for (const auto& [n, d] : kModels) {
    const VeroneseModel model(n, d);
    const auto qs = quad_ideal_basis(model, k);
    for (const auto& e : model.sigma_list())
      for (int i = 0; i < 20; ++i) {
        const auto r = q_ab(model, qs, e, random_section(model, e.ell, k, rng), random_section(model, e.ell, k, rng),
                            random_section(model, e.b_power, k, rng));
        const Index rk = form_rank(qs.form(r.coords));
        EXPECT_LE(rk, 3);
        Matrix<Fp> forms(3, r.forms[0].size());
        for (int j = 0; j < 3; ++j) forms.row(j) = r.forms[std::size_t(j)].transpose();
        if (!r.is_zero() && rank<Fp>(forms) == 3) EXPECT_EQ(rk, 3);
      }
  }
}
