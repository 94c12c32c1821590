#include <gtest/gtest.h>

#include <set>

#include "quadrank/field.hpp"

using namespace quadrank;

TEST(PrimeField, ArithmeticWrapsModP) {
  const PrimeField k(7);
  EXPECT_EQ(k(5) + k(4), k(2));
  EXPECT_EQ(k(3) - k(5), k(5));
  EXPECT_EQ(k(3) * k(5), k(1));
  EXPECT_EQ(k(1) / k(3), k(5));
  EXPECT_EQ(-k(2), k(5));
  EXPECT_EQ(k(-1).value(), 6);
  EXPECT_EQ(k(6).symmetric(), -1);
}

TEST(PrimeField, EveryNonzeroElementHasAnInverse) {
  const PrimeField k(13);
  for (std::uint64_t i = 1; i < 13; ++i) EXPECT_EQ(k.element(i) * k.element(i).inv(), k(1));
  EXPECT_THROW(k(0).inv(), std::domain_error);
}

TEST(PrimeField, RejectsCompositeEvenAndHugeModuli) {
  EXPECT_THROW(PrimeField(9), UnsupportedField);
  EXPECT_THROW(PrimeField(2), UnsupportedField);
  EXPECT_THROW(PrimeField(1), UnsupportedField);
  EXPECT_NO_THROW(PrimeField(2147483647U));
}

TEST(PrimeField, UnboundLiteralsAdoptTheOtherField) {
  const PrimeField k(11);
  const Fp x = k(4) + Fp(9);
  EXPECT_TRUE(x.bound());
  EXPECT_EQ(x, k(2));
  EXPECT_EQ(Fp(3) * k(4), k(1));
}

TEST(PrimeField, MixingTwoPrimesThrows) {
  EXPECT_THROW(PrimeField(5)(1) + PrimeField(7)(1), FieldMismatch);
  EXPECT_THROW(PrimeField(5)(1) * PrimeField(7)(1), FieldMismatch);
}

TEST(PrimeField, SquaresModSeven) {
  // frozen oracle: the nonzero squares mod 7 are {1, 2, 4}
  const PrimeField k(7);
  std::set<std::int64_t> squares;
  for (std::uint64_t i = 1; i < 7; ++i)
    if (is_square(k.element(i))) squares.insert(k.element(i).value());
  EXPECT_EQ(squares, (std::set<std::int64_t>{1, 2, 4}));
}

TEST(PrimeField, SqrtIsCanonicalAndCorrect) {
  const PrimeField k(31);
  for (std::uint64_t i = 0; i < 31; ++i) {
    const auto r = sqrt(k.element(i));
    if (!r) continue;
    EXPECT_EQ(*r * *r, k.element(i));
    EXPECT_LE(r->value(), (-*r).value());
  }
  EXPECT_FALSE(sqrt(k(3)).has_value());
}

TEST(QuadraticExtension, GeneratorSquaresToTheNonresidue) {
  const PrimeField k(7);
  const QuadraticExtension e(k);
  EXPECT_FALSE(is_square(k(e.nonresidue())));
  EXPECT_EQ(e.generator() * e.generator(), e(e.nonresidue()));
  EXPECT_EQ(e.size(), 49U);
}

TEST(QuadraticExtension, EverySquareRootExists) {
  // every element of F_p is a square in F_{p^2}
  const PrimeField k(11);
  const QuadraticExtension e(k);
  for (std::uint64_t i = 0; i < 11; ++i) {
    const auto r = sqrt(e.lift(k.element(i)));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r * *r, e.lift(k.element(i)));
  }
}

TEST(QuadraticExtension, FieldAxiomsOnAllPairs) {
  const QuadraticExtension e(PrimeField(5));
  for (std::uint64_t i = 1; i < e.size(); ++i) {
    const Fp2 x = e.element(i);
    EXPECT_EQ(x * x.inv(), e(1));
    for (std::uint64_t j = 0; j < e.size(); j += 7) {
      const Fp2 y = e.element(j);
      EXPECT_EQ(x * y, y * x);
      EXPECT_EQ((x + y) - y, x);
    }
  }
}

TEST(QuadraticExtension, RootsOfUnityMod7) {
  // frozen oracle: w^2 + w + 1 = 0 has the roots 2 and 4 in F_7
  const PrimeField k(7);
  std::vector<std::int64_t> roots;
  for (std::uint64_t w = 0; w < 7; ++w)
    if ((k.element(w) * k.element(w) + k.element(w) + k(1)).is_zero()) roots.push_back(std::int64_t(w));
  EXPECT_EQ(roots, (std::vector<std::int64_t>{2, 4}));
}

TEST(Rationals, ExactArithmeticAndSqrt) {
  const RationalField q;
  EXPECT_EQ(q(1, 2) + q(1, 3), q(5, 6));
  EXPECT_EQ(q(2, 3) / q(4, 9), q(3, 2));
  EXPECT_EQ(sqrt(q(9, 4)), q(3, 2));
  EXPECT_FALSE(sqrt(q(2)).has_value());
  EXPECT_FALSE(sqrt(q(-1)).has_value());
  EXPECT_EQ(to_string(q(-3, 4)), "-3/4");
}

TEST(FieldTraits, ExtensionsAndLifts) {
  static_assert(std::is_same_v<extension_t<Fp>, Fp2>);
  static_assert(std::is_same_v<extension_t<Rational>, Rational>);
  static_assert(FiniteField<Fp> && FiniteField<Fp2> && !FiniteField<Rational>);
  const PrimeField k(13);
  const auto e = field_traits<Fp>::extend(k);
  EXPECT_EQ(field_traits<Fp>::lift(e, k(5)), e(5));
  EXPECT_EQ(field_traits<Fp>::field_of(k(3)), k);
}

TEST(Seeds, DerivedSeedsAreDeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(0, 1), derive_seed(0, 1));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 4; ++m)
    for (std::uint64_t s = 0; s < 64; ++s) seen.insert(derive_seed(m, s));
  EXPECT_EQ(seen.size(), 256U);
}

TEST(Primes, PrimalityAndNonresidues) {
  EXPECT_TRUE(is_prime(101));
  EXPECT_FALSE(is_prime(91));
  EXPECT_EQ(pow_mod(3, 6, 7), 1U);
  EXPECT_EQ(smallest_nonresidue(7), 3U);
  EXPECT_EQ(smallest_nonresidue(11), 2U);
}
