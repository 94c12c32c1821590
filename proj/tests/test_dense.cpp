#include <gtest/gtest.h>

#include "quadrank/dense.hpp"

using namespace quadrank;

namespace {

struct Term {
  int a, b;
  std::int64_t c;
};

/// Hessian of sum c * z_a * z_b.
template <class Field>
SymmetricForm<typename Field::element_type> form(const Field& k, Index n, std::initializer_list<Term> terms) {
  Matrix<typename Field::element_type> h = Matrix<typename Field::element_type>::Constant(n, n, k(0));
  for (const auto& t : terms) {
    if (t.a == t.b) {
      h(t.a, t.a) += k(2 * t.c);
    } else {
      h(t.a, t.b) += k(t.c);
      h(t.b, t.a) += k(t.c);
    }
  }
  return SymmetricForm(h);
}

template <class F>
Vector<F> vec(std::initializer_list<F> xs) {
  Vector<F> v(Index(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

template <class F>
void expect_splits(const SymmetricForm<F>& s, const LinearSplit<F>& l) {
  EXPECT_EQ(split_form(l.x, l.y, l.z).hessian(), s.hessian());
}

}  // namespace

TEST(Rref, IdentityHasFullRankAndNoKernel) {
  const PrimeField k(7);
  const auto r = rref(identity<Fp>(3, k(1)), k(1));
  EXPECT_EQ(r.rank, 3);
  EXPECT_TRUE(r.kernel_basis.empty());
}

TEST(Rref, ZeroMatrixKernelIsEverything) {
  const RationalField q;
  const Matrix<Rational> z = Matrix<Rational>::Constant(2, 4, q(0));
  const auto r = rref(z, q(1));
  EXPECT_EQ(r.rank, 0);
  EXPECT_EQ(r.kernel_basis.size(), 4U);
}

TEST(Rref, KernelVectorsAreAnnihilated) {
  const PrimeField k(11);
  Rng rng(3);
  Matrix<Fp> m(4, 7);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 7; ++j) m(i, j) = k.random(rng);
  m.row(3) = m.row(0) + m.row(1) * k(2);
  const auto r = rref(m, k(1));
  EXPECT_EQ(r.rank, 3);
  ASSERT_EQ(r.kernel_basis.size(), 4U);
  for (const auto& v : r.kernel_basis) EXPECT_EQ(detail::nonzero_count<Fp>(m * v), 0);
}

TEST(Rref, MixedFieldsAreRejected) {
  Matrix<Fp> m(2, 2);
  m << PrimeField(5)(1), PrimeField(5)(2), PrimeField(7)(3), PrimeField(7)(1);
  EXPECT_THROW(rank<Fp>(m), FieldMismatch);
}

TEST(Determinant, MatchesRankCriterion) {
  const PrimeField k(13);
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix<Fp> m(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) m(i, j) = k.element(std::uniform_int_distribution<int>(0, 2)(rng));
    EXPECT_EQ(determinant<Fp>(m).is_zero(), rank<Fp>(m) < 3);
  }
}

TEST(Inverse, ProductIsIdentity) {
  const RationalField q;
  Matrix<Rational> m(2, 2);
  m << q(2), q(1), q(7), q(4);
  const auto inv = inverse(m, q(1));
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(Matrix<Rational>(m * *inv), identity<Rational>(2, q(1)));
  Matrix<Rational> sing(2, 2);
  sing << q(1), q(2), q(2), q(4);
  EXPECT_FALSE(inverse(sing, q(1)).has_value());
}

TEST(Solve, ConsistentAndInconsistentSystems) {
  const PrimeField k(7);
  Matrix<Fp> a(2, 2);
  a << k(1), k(2), k(2), k(4);
  EXPECT_FALSE(solve<Fp>(a, vec<Fp>({k(1), k(1)})).has_value());
  const auto x = solve<Fp>(a, vec<Fp>({k(3), k(6)}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(Vector<Fp>(a * *x), vec<Fp>({k(3), k(6)}));
}

TEST(FormRank, FixtureQuadrics) {
  const RationalField q;
  EXPECT_EQ(form_rank(form(q, 5, {{2, 4, 1}, {3, 3, -1}})), 3);      // z2 z4 - z3^2
  EXPECT_EQ(form_rank(form(q, 5, {{0, 3, 1}, {1, 2, -1}})), 4);      // z0 z3 - z1 z2
  EXPECT_EQ(form_rank(form(q, 5, {})), 0);
}

TEST(FormRank, HessianDoublesTheDiagonal) {
  const PrimeField k(7);
  const auto s = form(k, 2, {{0, 0, 3}, {0, 1, 5}});
  EXPECT_EQ(s.hessian()(0, 0), k(6));
  EXPECT_EQ(s.hessian()(0, 1), k(5));
  EXPECT_EQ(s.evaluate(vec<Fp>({k(1), k(1)}), k(1) / k(2)), k(8));
}

TEST(Congruence, AlreadyDiagonalNeedsNoChange) {
  const PrimeField k(7);
  const auto s = form(k, 3, {{0, 0, 1}, {1, 1, 2}, {2, 2, 3}});
  const auto c = diagonalize_congruence(s, k(1));
  EXPECT_EQ(c.basis_change, identity<Fp>(3, k(1)));
  EXPECT_EQ(c.diagonal, (std::vector<Fp>{k(2), k(4), k(6)}));
}

TEST(Congruence, HyperbolicPlaneOverF7) {
  const PrimeField k(7);
  const auto c = diagonalize_congruence(form(k, 2, {{0, 1, 1}}), k(1));
  ASSERT_EQ(c.diagonal.size(), 2U);
  EXPECT_FALSE(c.diagonal[0].is_zero());
  EXPECT_FALSE(c.diagonal[1].is_zero());
  EXPECT_TRUE(is_square(-(c.diagonal[0] * c.diagonal[1])));
}

TEST(Congruence, RandomFormsAgreeWithRank) {
  const PrimeField k(11);
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 1 + trial % 6;
    Matrix<Fp> h(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = i; j < n; ++j) h(i, j) = h(j, i) = trial % 3 ? k.random(rng) : k(int(rng() % 2));
    const SymmetricForm<Fp> s(h);
    const auto c = diagonalize_congruence(s, k(1));
    const Matrix<Fp> d = c.basis_change.transpose() * h * c.basis_change;
    Index nonzero = 0;
    for (Index i = 0; i < n; ++i) {
      EXPECT_EQ(d(i, i), c.diagonal[std::size_t(i)]);
      nonzero += !c.diagonal[std::size_t(i)].is_zero();
      for (Index j = 0; j < n; ++j)
        if (i != j) EXPECT_TRUE(d(i, j).is_zero());
    }
    EXPECT_EQ(nonzero, form_rank(s));
    EXPECT_FALSE(determinant<Fp>(c.basis_change).is_zero());
    // rank is a congruence invariant
    Matrix<Fp> p(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) p(i, j) = k.random(rng);
    if (!determinant<Fp>(p).is_zero()) EXPECT_EQ(form_rank(SymmetricForm<Fp>(p.transpose() * h * p)), form_rank(s));
    EXPECT_EQ(form_rank(s) == n, !determinant<Fp>(h).is_zero());
  }
}

TEST(Rank3Split, FixtureQuadricSplitsAsItsOwnTerms) {
  const RationalField q;
  const auto s = form(q, 5, {{2, 4, 1}, {3, 3, -1}});
  const auto split = rank3_split(s);
  ASSERT_TRUE(std::holds_alternative<LinearSplit<Rational>>(split));
  const auto& l = std::get<LinearSplit<Rational>>(split);
  expect_splits(s, l);
  // z2 z4 - z3^2: x and y are z2 and z4 in some order and z is z3 up to sign
  const Vector<Rational> e2 = identity<Rational>(5, q(1)).col(2), e4 = identity<Rational>(5, q(1)).col(4);
  EXPECT_TRUE((l.x == e2 && l.y == e4) || (l.x == e4 && l.y == e2));
  EXPECT_EQ(detail::nonzero_count(l.z), 1);
  EXPECT_FALSE(l.z(3).is_zero());
}

TEST(Rank3Split, DifferenceOfSquaresOverF7) {
  const PrimeField k(7);
  const auto s = form(k, 3, {{0, 0, 1}, {1, 1, -1}, {2, 2, -1}});
  const auto split = rank3_split(s);
  ASSERT_TRUE(std::holds_alternative<LinearSplit<Fp>>(split));
  expect_splits(s, std::get<LinearSplit<Fp>>(split));
}

TEST(Rank3Split, RandomRank3FormsSplitExactlyWhenTheDiscriminantIsSquare) {
  const PrimeField k(13);
  const QuadraticExtension e(k);
  Rng rng(17);
  int split_count = 0, lifted_count = 0;
  while (split_count + lifted_count < 300) {
    Matrix<Fp> basis(3, 5);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 5; ++j) basis(i, j) = k.random(rng);
    Vector<Fp> diag(3);
    for (Index i = 0; i < 3; ++i) diag(i) = k.random_nonzero(rng);
    const SymmetricForm<Fp> s(Matrix<Fp>(basis.transpose() * diag.asDiagonal() * basis));
    if (form_rank(s) != 3) continue;
    const auto split = rank3_split(s);
    if (std::holds_alternative<LinearSplit<Fp>>(split)) {
      ++split_count;
      expect_splits(s, std::get<LinearSplit<Fp>>(split));
      continue;
    }
    ++lifted_count;
    EXPECT_FALSE(is_square(std::get<ExtensionRequired<Fp>>(split).discriminant));
    const Matrix<Fp2> lifted = s.hessian().unaryExpr([&](const Fp& x) { return e.lift(x); });
    const SymmetricForm<Fp2> t(lifted);
    const auto over_e = rank3_split(t);
    ASSERT_TRUE(std::holds_alternative<LinearSplit<Fp2>>(over_e));
    expect_splits(t, std::get<LinearSplit<Fp2>>(over_e));
  }
  EXPECT_GT(split_count, 0);
  EXPECT_GT(lifted_count, 0);
}

TEST(Rank3Split, RationalFormMayNeedAnExtension) {
  const RationalField q;
  // x^2 + y^2 + z^2 has no rational isotropic vector
  const auto anisotropic = rank3_split(form(q, 3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}));
  EXPECT_TRUE(std::holds_alternative<ExtensionRequired<Rational>>(anisotropic));
  // x^2 - y^2 - 2 z^2 is isotropic but its discriminant 2 is not a rational square
  EXPECT_TRUE(std::holds_alternative<ExtensionRequired<Rational>>(rank3_split(form(q, 3, {{0, 0, 1}, {1, 1, -1}, {2, 2, -2}}))));
  const auto s = form(q, 3, {{0, 0, 1}, {1, 1, -1}, {2, 2, -1}});
  const auto split = rank3_split(s);
  ASSERT_TRUE(std::holds_alternative<LinearSplit<Rational>>(split));
  expect_splits(s, std::get<LinearSplit<Rational>>(split));
}

TEST(Rank3Split, ExtensionFieldFormsSplit) {
  const QuadraticExtension e(PrimeField(7));
  Matrix<Fp2> h = Matrix<Fp2>::Constant(3, 3, e(0));
  h(0, 0) = e(2);
  h(1, 1) = e.generator() * e(2);
  h(2, 2) = e(2);
  const SymmetricForm<Fp2> s(h);
  const auto split = rank3_split(s);
  ASSERT_TRUE(std::holds_alternative<LinearSplit<Fp2>>(split));
  expect_splits(s, std::get<LinearSplit<Fp2>>(split));
}

TEST(Rank3Split, WrongRankIsAnError) {
  const RationalField q;
  EXPECT_THROW(rank3_split(form(q, 4, {{0, 3, 1}, {1, 2, -1}})), RankMismatch);
  EXPECT_THROW(rank3_split(form(q, 3, {{0, 1, 1}})), RankMismatch);
}
