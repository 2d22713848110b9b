#include <gtest/gtest.h>

#include <random>

#include "flagsplit/frobenius.hpp"

using namespace flagsplit;

namespace {

PolyFp P(const char* text, std::uint32_t p, std::size_t n = 1) { return parse_poly(text, p, default_names(n)); }

PolyFp random_poly(std::mt19937& rng, std::uint32_t p, std::size_t n, std::uint32_t max_exp, int terms) {
  std::uniform_int_distribution<std::uint32_t> coef(0, p - 1), ex(0, max_exp);
  PolyFp f(p, n);
  for (int t = 0; t < terms; ++t) {
    Exponents e(n);
    for (auto& x : e) x = ex(rng);
    f += PolyFp::monomial(p, e, coef(rng));
  }
  return f;
}

const std::uint32_t kPrimes[] = {2, 3, 5};

}  // namespace

TEST(Trace, Examples) {
  for (std::uint32_t p : kPrimes) {
    const PolyFp x = P("x", p);
    EXPECT_EQ(trace(x.pow(p - 1)), PolyFp::constant(p, 1, 1));
    EXPECT_TRUE(trace(x.pow(p)).is_zero());
    EXPECT_EQ(trace(x.pow(2 * p - 1)), x);
  }
}

TEST(Trace, MonomialFormula) {
  // x^a y^b with both exponents ≡ p-1 mod p survives; nothing else does
  const std::uint32_t p = 3;
  EXPECT_EQ(trace(P("x^5*y^2 + x^4*y^2 + 2*x^2*y^8", p, 2)), P("x + 2*y^2", p, 2));
}

TEST(Trace, FrobeniusLinearityRandom) {
  std::mt19937 rng(2024);
  for (std::uint32_t p : kPrimes) {
    int cases = 0;
    for (int t = 0; t < 220; ++t) {
      const std::size_t n = 1 + t % 3;
      const PolyFp g = random_poly(rng, p, n, 2, 3);
      const PolyFp h = random_poly(rng, p, n, 2 * p, 5);
      ASSERT_EQ(trace(g.pow(p) * h), g * trace(h)) << "p=" << p;
      ++cases;
    }
    EXPECT_GE(cases, 200);
  }
}

TEST(Splitting, Examples) {
  for (std::uint32_t p : kPrimes) {
    EXPECT_TRUE(is_splitting(P("x", p).pow(p - 1)));
    EXPECT_FALSE(is_splitting(PolyFp(p, 1)));
    EXPECT_TRUE(is_splitting(P("x*y*z", p, 3).pow(p - 1)));
  }
  EXPECT_FALSE(is_splitting(P("x^2", 5)));
  EXPECT_THROW(SplittingSection(P("x", 5)), contract_violation);
}

TEST(Splitting, AgreesWithDefinitionOnRandomFunctions) {
  std::mt19937 rng(17);
  for (std::uint32_t p : kPrimes) {
    const PolyFp f = P("x*y", p, 2).pow(p - 1);
    const PolyFp not_f = P("x*y + 1", p, 2).pow(p - 1) + P("1", p, 2);
    for (int t = 0; t < 30; ++t) {
      const PolyFp g = random_poly(rng, p, 2, 3, 3);
      EXPECT_EQ(trace(f * g.pow(p)), g);
    }
    // trace(f) != 1 means g = 1 already fails the definition
    if (!is_splitting(not_f)) { EXPECT_NE(trace(not_f), PolyFp::constant(p, 2, 1)); }
  }
}

TEST(Compatibility, Examples) {
  for (std::uint32_t p : kPrimes) {
    const SplittingSection f(P("x", p).pow(p - 1));
    EXPECT_TRUE(compatibly_split(f, ChartIdeal(p, 1, {P("x", p)})));
    const auto r = check_compatibility(f.poly(), ChartIdeal(p, 1, {P("x - 1", p)}));
    EXPECT_FALSE(r.split);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.witness->image.is_constant());
    EXPECT_FALSE(r.witness->image.is_zero());
    EXPECT_TRUE(compatibly_split(f, ChartIdeal::zero(p, 1)));
    EXPECT_TRUE(compatibly_split(f, ChartIdeal(p, 1, {P("1", p)})));
  }
  // the first escaping image for (x - 1) is trace(x^{p-1} (x - 1)) = -1
  const auto r = check_compatibility(P("x^2", 3), ChartIdeal(3, 1, {P("x - 1", 3)}));
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->image, P("-1", 3));
  EXPECT_THROW(check_compatibility(P("x", 3), ChartIdeal(3, 1, {P("x", 3)})), contract_violation);
}

TEST(Compatibility, CoordinateHyperplanesOfMonomialSplitting) {
  for (std::uint32_t p : kPrimes) {
    const SplittingSection f(P("x*y*z", p, 3).pow(p - 1));
    for (const char* gens : {"x", "y", "z"})
      EXPECT_TRUE(compatibly_split(f, ChartIdeal(p, 3, {P(gens, p, 3)})));
    EXPECT_TRUE(compatibly_split(f, ChartIdeal(p, 3, {P("x", p, 3), P("z", p, 3)})));
    EXPECT_TRUE(compatibly_split(f, ChartIdeal(p, 3, {P("x*y", p, 3)})));
    EXPECT_FALSE(compatibly_split(f, ChartIdeal(p, 3, {P("x - y", p, 3)})));
    EXPECT_FALSE(compatibly_split(f, ChartIdeal(p, 3, {P("x^2", p, 3)})));
  }
}

TEST(Roots, Examples) {
  for (std::uint32_t p : kPrimes) {
    const PolyFp x = P("x", p);
    const auto r = is_pth_minus_one_power(x.pow(p - 1));
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->pow(p - 1), x.pow(p - 1));
    if (p > 2) {
      EXPECT_EQ(*r, x);
      EXPECT_FALSE(is_pth_minus_one_power(x.pow(p - 1) + P("1", p)).has_value());
    }
    const PolyFp g = P("x*z + y*z", p, 3);
    const auto root = is_pth_minus_one_power(g.pow(p - 1));
    ASSERT_TRUE(root.has_value());
    EXPECT_EQ(root->pow(p - 1), g.pow(p - 1));
    // equal up to a scalar: root = mu * g
    const std::uint32_t mu = root->coefficient({1, 0, 1});
    EXPECT_EQ(*root, g.scaled(mu));
    EXPECT_EQ(fp::pow(mu, p - 1, p), 1u);
  }
  EXPECT_FALSE(is_pth_minus_one_power(P("2*x^2", 3)).has_value());
  EXPECT_FALSE(is_pth_minus_one_power(P("x^3", 3)).has_value());
  EXPECT_FALSE(is_pth_minus_one_power(P("x^4 + x", 5)).has_value());
}

TEST(Roots, RandomPowersAreRecovered) {
  std::mt19937 rng(23);
  for (std::uint32_t p : {3u, 5u})
    for (int t = 0; t < 40; ++t) {
      PolyFp g = random_poly(rng, p, 3, 2, 3);
      if (g.is_zero()) continue;
      g = make_monic(g, MonomialOrder::grevlex);
      const auto r = is_pth_minus_one_power(g.pow(p - 1));
      ASSERT_TRUE(r.has_value());
      EXPECT_EQ(r->pow(p - 1), g.pow(p - 1));
    }
}

TEST(Division, ExactAndMultiplicity) {
  const std::uint32_t p = 5;
  const PolyFp h = P("x*y - z", p, 3), g = P("x + z^2", p, 3);
  EXPECT_EQ(exact_divide(h * g, h), g);
  EXPECT_FALSE(exact_divide(h * g + P("1", p, 3), h).has_value());
  EXPECT_EQ(multiplicity(h.pow(3) * g, h), 3u);
  EXPECT_EQ(multiplicity(g, h), 0u);
  EXPECT_THROW(multiplicity(PolyFp(p, 3), h), validation_error);
  EXPECT_THROW(multiplicity(g, P("2", p, 3)), validation_error);
}

TEST(Facts, FactorsOfTheRootAreSplitWithMultiplicityPMinusOne) {
  for (std::uint32_t p : kPrimes) {
    const std::vector<PolyFp> factors{P("z", p, 3), P("x*y - z", p, 3)};
    PolyFp g = PolyFp::constant(p, 3, 1);
    for (const auto& h : factors) g *= h;
    const PolyFp f = g.pow(p - 1);
    const PolyFp t = trace(f);
    ASSERT_TRUE(t.is_constant() && !t.is_zero()) << "p=" << p;
    const SplittingSection s(f.scaled(fp::inv(t.constant_term(), p)));
    for (const auto& h : factors) {
      EXPECT_TRUE(compatibly_split(s, ChartIdeal(p, 3, {h})));
      EXPECT_EQ(multiplicity(s.poly(), h), p - 1);
    }
  }
}
