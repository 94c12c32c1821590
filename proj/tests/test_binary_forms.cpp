#include <gtest/gtest.h>

#include "quadrank/binary_forms.hpp"

using namespace quadrank;

namespace {

const std::vector<std::string> kUV{"u", "v"};

template <class Field>
MultiPoly<typename Field::element_type> uv(const std::string& text, const Field& k) {
  return parse_poly(text, kUV, k);
}

template <class F>
std::vector<std::pair<std::string, unsigned>> rendered(const SquarefreeDecomposition<F>& d) {
  std::vector<std::pair<std::string, unsigned>> out;
  for (const auto& [g, m] : d.factors) out.emplace_back(to_string(g, kUV), m);
  return out;
}

using Factors = std::vector<std::pair<std::string, unsigned>>;

}  // namespace

TEST(BinaryGcd, Examples) {
  const RationalField q;
  EXPECT_EQ(binary_gcd(uv("u^2*v", q), uv("u*v^2", q)), uv("u*v", q));
  EXPECT_EQ(binary_gcd(uv("u^4 - v^4", q), uv("u^2 - v^2", q)), uv("u^2 - v^2", q));
  EXPECT_EQ(binary_gcd(uv("3*u^2 + 3*v^2", q), MultiPoly<Rational>(2)), uv("u^2 + v^2", q));
}

TEST(BinaryGcd, DividesBothInputs) {
  const PrimeField k(13);
  Rng rng(9);
  auto form = [&](unsigned deg) {
    MultiPoly<Fp> f(2);
    for (unsigned i = 0; i <= deg; ++i) f.add_term(Exponents{std::uint16_t(deg - i), std::uint16_t(i)}, k.random(rng));
    return f;
  };
  for (int i = 0; i < 100; ++i) {
    const auto common = form(2);
    const auto f = form(3) * common, g = form(2) * common;
    if (f.is_zero() || g.is_zero()) continue;
    const auto d = binary_gcd(f, g);
    EXPECT_TRUE(divide_exact(f, d).has_value());
    EXPECT_TRUE(divide_exact(g, d).has_value());
    if (!common.is_zero()) EXPECT_TRUE(divide_exact(d, normalize_form(common)).has_value());
  }
}

TEST(BinaryGcd, RejectsNonBinaryInput) {
  const RationalField q;
  EXPECT_THROW(binary_gcd(uv("u^2 + v", q), uv("u", q)), std::invalid_argument);
  const auto three = parse_poly("x0*x1", {"x0", "x1", "x2"}, q);
  EXPECT_THROW(binary_gcd(three, three), std::invalid_argument);
}

TEST(Squarefree, Examples) {
  const RationalField q;
  EXPECT_EQ(rendered(squarefree(uv("u^4", q))), (Factors{{"u", 4}}));
  EXPECT_EQ(rendered(squarefree(uv("u^3*v^2", q))), (Factors{{"u", 3}, {"v", 2}}));
  // frozen oracle: sqf((u^2+v^2)^2 (u+v)) = [(u^2+v^2, 2), (u+v, 1)]
  const auto f = uv("u^2 + v^2", q) * uv("u^2 + v^2", q) * uv("u + v", q);
  EXPECT_EQ(rendered(squarefree(f)), (Factors{{"u^2 + v^2", 2}, {"u + v", 1}}));
}

TEST(Squarefree, ReassemblesWithItsUnit) {
  const PrimeField k(11);
  const auto f = uv("3*u + v", k) * uv("3*u + v", k) * uv("u^2 + v^2", k) * uv("v", k) * uv("v", k) * uv("v", k);
  const auto d = squarefree(f);
  EXPECT_EQ(d.reassemble(), f);
  EXPECT_EQ(d.unit, k(9));
  for (std::size_t i = 0; i < d.factors.size(); ++i)
    for (std::size_t j = i + 1; j < d.factors.size(); ++j)
      EXPECT_EQ(binary_gcd(d.factors[i].first, d.factors[j].first).degree(), 0);
}

TEST(Squarefree, CharacteristicGuard) {
  const PrimeField k(5);
  EXPECT_THROW(squarefree(uv("u^5 - v^5", k)), UnsupportedCharacteristic);
  EXPECT_NO_THROW(squarefree(uv("u^4 - v^4", k)));
}

TEST(OddEvenSplit, Examples) {
  const RationalField q;
  const auto a = odd_even_split(uv("u^4", q));
  EXPECT_EQ(a.odd, uv("1", q));
  EXPECT_EQ(a.half, uv("u^2", q));
  const auto b = odd_even_split(uv("u^3*v", q));
  EXPECT_EQ(b.odd, uv("u*v", q));
  EXPECT_EQ(b.half, uv("u", q));
  // frozen oracle: (u+v)^2 (u-v)^5 has squarefree multiplicities (2, 5)
  MultiPoly<Rational> f = uv("u + v", q) * uv("u + v", q);
  for (int i = 0; i < 5; ++i) f = f * uv("u - v", q);
  const auto c = odd_even_split(f);
  EXPECT_EQ(c.odd, uv("u - v", q));
  EXPECT_EQ(c.half, uv("u + v", q) * uv("u - v", q) * uv("u - v", q));
}

TEST(OddEvenSplit, ReassemblyOverRandomForms) {
  const PrimeField k(17);
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    MultiPoly<Fp> f = MultiPoly<Fp>::constant(2, k.random_nonzero(rng));
    const int factors = 1 + i % 4;
    for (int j = 0; j < factors; ++j) {
      MultiPoly<Fp> lin(2);
      lin.add_term(Exponents{1, 0}, k.random(rng));
      lin.add_term(Exponents{0, 1}, k.random_nonzero(rng));
      const int mult = 1 + int(rng() % 3);
      for (int m = 0; m < mult; ++m) f = f * lin;
    }
    if (f.degree() >= 17) continue;
    const auto s = odd_even_split(f);
    EXPECT_EQ(MultiPoly<Fp>::constant(2, s.unit) * s.half * s.half * s.odd, f);
    EXPECT_EQ(s.odd.degree() % 2, f.degree() % 2);
    for (const auto& [g, m] : squarefree(s.odd.degree() > 0 ? s.odd : uv("u", k)).factors) EXPECT_EQ(m, 1U);
  }
}

TEST(ExactSqrt, Examples) {
  const RationalField q;
  EXPECT_EQ(exact_sqrt(uv("u^2*v^2", q)), uv("u*v", q));
  EXPECT_FALSE(exact_sqrt(uv("u^3*v", q)).has_value());
  EXPECT_EQ(exact_sqrt(uv("4*u^2 + 8*u*v + 4*v^2", q)), uv("2*u + 2*v", q));
  EXPECT_FALSE(exact_sqrt(uv("2*u^2", q)).has_value());
}

TEST(ExactSqrt, SquaresOfRandomFormsOverF13) {
  const PrimeField k(13);
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    MultiPoly<Fp> g(2);
    for (unsigned j = 0; j <= 3; ++j) g.add_term(Exponents{std::uint16_t(3 - j), std::uint16_t(j)}, k.random(rng));
    if (g.is_zero()) continue;
    const auto r = exact_sqrt(g * g);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(*r * *r, g * g);
  }
}
