#include <gtest/gtest.h>

#include <random>

#include "redei/error.hpp"
#include "redei/poly.hpp"

using namespace redei;

namespace {

Polynomial P(const FieldSpec& f, std::vector<std::uint32_t> codes) {
  std::vector<FieldElement> c;
  for (auto v : codes) c.push_back(FieldElement{v});
  return Polynomial(f, std::move(c));
}

Polynomial random_poly(const FieldSpec& f, std::mt19937_64& rng, std::size_t max_deg) {
  std::vector<FieldElement> c(rng() % (max_deg + 2));
  for (auto& x : c) x = FieldElement{static_cast<std::uint32_t>(rng() % f.q())};
  return Polynomial(f, std::move(c));
}

std::vector<FieldSpec> test_fields() {
  return {FieldSpec::construct(2, 2), FieldSpec::construct(5, 1), FieldSpec::construct(2, 3),
          FieldSpec::construct(3, 2)};
}

}  // namespace

TEST(Polynomial, NormalFormAndDegree) {
  const FieldSpec f = FieldSpec::construct(3, 1);
  EXPECT_EQ(P(f, {1, 2, 0, 0}).degree(), 1);
  EXPECT_TRUE(P(f, {0, 0}).is_zero());
  EXPECT_EQ(Polynomial(f).degree(), kNegInf);
  EXPECT_EQ(add_degrees(kNegInf, 5), kNegInf);
  EXPECT_EQ(add_degrees(2, 3), 5);
  EXPECT_EQ((Polynomial(f) * P(f, {1, 1})).degree(), kNegInf);
  EXPECT_TRUE(P(f, {2, 0, 1}).is_monic());
  EXPECT_FALSE(P(f, {2, 2}).is_monic());
}

TEST(Polynomial, SpecMismatch) {
  const Polynomial a = P(FieldSpec::construct(3, 1), {1, 1});
  const Polynomial b = P(FieldSpec::construct(5, 1), {1, 1});
  try {
    (void)(a + b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpecMismatch);
  }
  EXPECT_THROW((void)(a * b), Error);
  EXPECT_THROW(quotient_rem(a, b), Error);
}

TEST(Polynomial, ArithmeticExamples) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const Polynomial g = P(f5, {1, 2, 3});
  EXPECT_EQ(g * Polynomial::constant(f5, f5.one()), g);
  EXPECT_EQ(g - g, Polynomial(f5));
  EXPECT_EQ(g + (-g), Polynomial(f5));
  EXPECT_EQ(g.scale({2}), P(f5, {2, 4, 1}));
  EXPECT_EQ(g.evaluate({2}), FieldElement{(1 + 4 + 12) % 5});
  EXPECT_EQ(Polynomial::linear(f5, {2}), P(f5, {3, 1}));
  EXPECT_EQ(Polynomial::monomial(f5, {3}, 2), P(f5, {0, 0, 3}));
  EXPECT_EQ(pow(Polynomial::linear(f5, {1}), 2), P(f5, {1, 3, 1}));
}

TEST(Derivative, CharacteristicAware) {
  const FieldSpec f2 = FieldSpec::construct(2, 1);
  EXPECT_EQ(derivative(P(f2, {1, 1, 1})), P(f2, {1}));
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  EXPECT_TRUE(derivative(P(f4, {0, 0, 1, 0, 1})).is_zero());
  const FieldSpec f3 = FieldSpec::construct(3, 1);
  EXPECT_TRUE(derivative(P(f3, {0, 0, 0, 1})).is_zero());
  EXPECT_EQ(derivative(P(f3, {1, 1, 1})), P(f3, {1, 2}));
}

TEST(QuotientRem, Examples) {
  const FieldSpec f3 = FieldSpec::construct(3, 1);
  const DivMod d = quotient_rem(P(f3, {0, 0, 0, 1}), P(f3, {0, 1, 1}));
  EXPECT_EQ(d.quotient, P(f3, {2, 1}));
  EXPECT_EQ(d.remainder, P(f3, {0, 1}));

  const Polynomial g = P(f3, {1, 2, 0, 1});
  const DivMod by_one = quotient_rem(g, P(f3, {1}));
  EXPECT_EQ(by_one.quotient, g);
  EXPECT_TRUE(by_one.remainder.is_zero());

  const Polynomial xq = Polynomial::monomial(f3, f3.one(), 3);
  const DivMod self = quotient_rem(xq, xq);
  EXPECT_EQ(self.quotient, P(f3, {1}));
  EXPECT_TRUE(self.remainder.is_zero());

  try {
    quotient_rem(g, Polynomial(f3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZeroPoly);
  }
}

TEST(QuotientRem, RandomRoundTrip) {
  std::mt19937_64 rng(7);
  for (const FieldSpec& f : test_fields()) {
    for (int t = 0; t < 300; ++t) {
      const Polynomial num = random_poly(f, rng, 12);
      Polynomial den = random_poly(f, rng, 6);
      if (den.is_zero()) den = Polynomial::constant(f, f.one());
      const DivMod d = quotient_rem(num, den);
      ASSERT_EQ(den * d.quotient + d.remainder, num);
      ASSERT_LT(d.remainder.degree(), den.degree());
    }
  }
}

TEST(ExactDivide, DetectsNonDivisibility) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const Polynomial a = P(f5, {1, 1});
  const Polynomial b = P(f5, {2, 1});
  EXPECT_EQ(exact_divide(a * b, a), b);
  EXPECT_FALSE(exact_divide(a * b + P(f5, {1}), a).has_value());
}

TEST(ElementarySymmetric, Examples) {
  const FieldSpec f5 = FieldSpec::construct(5, 1);
  const std::vector<FieldElement> v12{{1}, {2}};
  EXPECT_EQ(elementary_symmetric(f5, v12), (std::vector<FieldElement>{{1}, {3}, {2}}));
  EXPECT_EQ(elementary_symmetric(f5, std::vector<FieldElement>{}), (std::vector<FieldElement>{{1}}));
  const std::vector<FieldElement> v0{{0}};
  EXPECT_EQ(elementary_symmetric(f5, v0), (std::vector<FieldElement>{{1}, {0}}));
}

TEST(ElementarySymmetric, MatchesExpandedProduct) {
  std::mt19937_64 rng(11);
  for (const FieldSpec& f : test_fields()) {
    for (int t = 0; t < 200; ++t) {
      std::vector<FieldElement> vals(rng() % 9);
      for (auto& v : vals) v = FieldElement{static_cast<std::uint32_t>(rng() % f.q())};
      const auto sigma = elementary_symmetric(f, vals);
      const Polynomial prod = from_roots(f, vals);
      const std::size_t n = vals.size();
      ASSERT_EQ(sigma.size(), n + 1);
      for (std::size_t j = 0; j <= n; ++j) {
        FieldElement expected = sigma[j];
        if (j % 2 == 1) expected = f.neg(expected);
        ASSERT_EQ(prod.coeff(n - j), expected);
      }
    }
  }
}

TEST(Roots, Examples) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  EXPECT_EQ(roots_with_multiplicity(P(f4, {0, 0, 1, 0, 1})), (RootMultiset{{{0}, 2}, {{1}, 2}}));
  EXPECT_EQ(roots_with_multiplicity(P(f4, {1, 1, 1})), (RootMultiset{{{2}, 1}, {{3}, 1}}));
  for (const FieldSpec& f : test_fields()) {
    EXPECT_EQ(roots_with_multiplicity(Polynomial::identity(f)), (RootMultiset{{{0}, 1}}));
  }
  try {
    roots_with_multiplicity(Polynomial(f4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPolynomial);
  }
}

TEST(Roots, RandomProductsDivideExactly) {
  std::mt19937_64 rng(13);
  for (const FieldSpec& f : test_fields()) {
    for (int t = 0; t < 200; ++t) {
      Polynomial g = random_poly(f, rng, 10);
      if (g.is_zero()) continue;
      const RootMultiset roots = roots_with_multiplicity(g);
      Polynomial prod = Polynomial::constant(f, f.one());
      std::uint64_t total = 0;
      for (const auto& [r, m] : roots) {
        prod = prod * pow(Polynomial::linear(f, r), m);
        total += m;
        // Multiplicity is maximal.
        ASSERT_FALSE(exact_divide(g, pow(Polynomial::linear(f, r), m + 1)).has_value());
      }
      ASSERT_LE(static_cast<Degree>(total), g.degree());
      ASSERT_TRUE(exact_divide(g, prod).has_value());
    }
  }
}

TEST(LinearSplit, Examples) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  const Polynomial h = P(f4, {0, 0, 1, 0, 1});
  const LinearSplit s = linear_split(h);
  EXPECT_EQ(s.fully_reducible, h);
  EXPECT_EQ(s.nonlinear, P(f4, {1}));
  EXPECT_EQ(s.l1, 1u);

  const FieldSpec f3 = FieldSpec::construct(3, 1);
  const Polynomial c = P(f3, {0, 0, 2, 1});
  const LinearSplit s3 = linear_split(c);
  EXPECT_EQ(s3.fully_reducible, c);
  EXPECT_EQ(s3.nonlinear, P(f3, {1}));
  EXPECT_EQ(s3.l1, 0u);

  const FieldSpec f2 = FieldSpec::construct(2, 1);
  const LinearSplit none = linear_split(P(f2, {1, 1, 1}));
  EXPECT_EQ(none.fully_reducible, P(f2, {1}));
  EXPECT_EQ(none.nonlinear, P(f2, {1, 1, 1}));
  EXPECT_FALSE(none.l1.has_value());

  try {
    linear_split(P(f3, {1, 2}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonMonic);
  }
  EXPECT_THROW(linear_split(Polynomial(f3)), Error);
}

TEST(LinearSplit, RandomRecomposes) {
  std::mt19937_64 rng(17);
  for (const FieldSpec& f : test_fields()) {
    for (int t = 0; t < 200; ++t) {
      Polynomial g = random_poly(f, rng, 10);
      if (g.is_zero()) continue;
      g = g.scale(f.inv(g.leading()));
      const LinearSplit s = linear_split(g);
      ASSERT_EQ(s.fully_reducible * s.nonlinear, g);
      for (FieldElement x : f.elements()) ASSERT_NE(s.nonlinear.evaluate(x), f.zero());
    }
  }
}

TEST(PthContent, Examples) {
  const FieldSpec f4 = FieldSpec::construct(2, 2);
  const PthContent a = pth_content(P(f4, {0, 0, 1}));
  EXPECT_EQ(a.l, 1u);
  EXPECT_EQ(a.reduced, Polynomial::identity(f4));

  for (const FieldSpec& f : test_fields()) {
    const PthContent b = pth_content(Polynomial::identity(f));
    EXPECT_EQ(b.l, 0u);
    EXPECT_EQ(b.reduced, Polynomial::identity(f));
  }

  const PthContent c = pth_content(P(f4, {0, 0, 1, 0, 1}));
  EXPECT_EQ(c.l, 1u);
  EXPECT_EQ(c.reduced, P(f4, {0, 1, 1}));

  const PthContent k = pth_content(P(f4, {3}));
  EXPECT_EQ(k.l, 0u);
  EXPECT_EQ(k.reduced, P(f4, {3}));

  try {
    pth_content(Polynomial(f4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPolynomial);
  }
}

TEST(PthContent, RandomPowersRoundTrip) {
  std::mt19937_64 rng(19);
  for (const FieldSpec& f : test_fields()) {
    for (int t = 0; t < 200; ++t) {
      const Polynomial base = random_poly(f, rng, 4);
      if (base.is_constant()) continue;
      const std::uint32_t l = static_cast<std::uint32_t>(rng() % 3);
      std::uint64_t power = 1;
      for (std::uint32_t i = 0; i < l; ++i) power *= f.p();
      const Polynomial g = pow(base, power);
      const PthContent pc = pth_content(g);
      ASSERT_GE(pc.l, l);
      std::uint64_t back = 1;
      for (std::uint32_t i = 0; i < pc.l; ++i) back *= f.p();
      ASSERT_EQ(pow(pc.reduced, back), g);
      ASSERT_FALSE(derivative(pc.reduced).is_zero());
    }
  }
}

TEST(PAdicValuation, Values) {
  EXPECT_EQ(p_adic_valuation(8, 2), 3u);
  EXPECT_EQ(p_adic_valuation(12, 2), 2u);
  EXPECT_EQ(p_adic_valuation(9, 3), 2u);
  EXPECT_EQ(p_adic_valuation(7, 3), 0u);
}
