#include <gtest/gtest.h>

#include <random>

#include "flagsplit/groebner.hpp"
#include "flagsplit/poly.hpp"

using namespace flagsplit;

namespace {

PolyFp P(const char* text, std::uint32_t p, std::size_t n = 3) { return parse_poly(text, p, default_names(n)); }

std::string S(const PolyFp& f) { return format_poly(f, default_names(f.nvars())); }

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

}  // namespace

TEST(Field, Basics) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(5));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(9));
  EXPECT_EQ(fp::reduce(-1, 5), 4u);
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ(fp::mul(a, fp::inv(a, p), p), 1u);
  EXPECT_THROW(PolyFp(4, 1), validation_error);
}

TEST(Poly, ArithmeticAndNoZeroCoefficients) {
  const PolyFp x = P("x", 3), y = P("y", 3);
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
  EXPECT_EQ((x + y).pow(3), x.pow(3) + y.pow(3));  // Frobenius is additive
  const PolyFp z = x + x + x;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.num_terms(), 0u);
  EXPECT_EQ((-x).coefficient({1, 0, 0}), 2u);
  EXPECT_EQ(P("x^2*y + 1", 3).total_degree(), 3u);
  EXPECT_EQ(P("x^2*y + 1", 3).degree_in(0), 2u);
  EXPECT_THROW(P("x", 3) + P("x", 5), validation_error);
}

TEST(Poly, RingLawsRandom) {
  std::mt19937 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 50; ++t) {
      const PolyFp a = random_poly(rng, p, 3, 3, 4), b = random_poly(rng, p, 3, 3, 4), c = random_poly(rng, p, 3, 2, 3);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_TRUE((a - a).is_zero());
      const std::vector<std::uint32_t> pt{1, 2 % p, 0};
      EXPECT_EQ((a * b).evaluate(pt), fp::mul(a.evaluate(pt), b.evaluate(pt), p));
    }
}

TEST(Poly, SubstituteAndVariables) {
  const PolyFp f = P("x*y + z", 5);
  EXPECT_EQ(f.substitute(0, P("y + 1", 5)), P("y^2 + y + z", 5));
  EXPECT_EQ(P("y + 2*z", 5).drop_variable(0), parse_poly("x + 2*y", 5, default_names(2)));
  EXPECT_THROW(f.drop_variable(0), validation_error);
  EXPECT_EQ(f.add_variables(1).nvars(), 4u);
}

TEST(PolyText, FormatAndParseRoundTrip) {
  const VariableNames names{"x21", "x31", "x32"};
  const PolyFp f = parse_poly("2*x21^3*x31 - x32 + 1", 5, names);
  EXPECT_EQ(f.coefficient({3, 1, 0}), 2u);
  EXPECT_EQ(f.coefficient({0, 0, 1}), 4u);
  EXPECT_EQ(format_poly(f, names), "2*x21^3*x31 - x32 + 1");
  EXPECT_EQ(parse_poly(format_poly(f, names), 5, names), f);
  EXPECT_EQ(format_poly(PolyFp(3, 3), names), "0");
  EXPECT_EQ(parse_poly("x21*x21", 3, names), parse_poly("x21^2", 3, names));
  EXPECT_EQ(parse_poly(" - 1 ", 3, names), PolyFp::constant(3, 3, 2));
  for (const char* bad : {"", "x21 +", "x99", "x21 ** 2", "(x21)", "x21^", "3x"})
    EXPECT_THROW(parse_poly(bad, 3, names), validation_error) << bad;
}

TEST(PolyText, RandomRoundTrip) {
  std::mt19937 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 100; ++t) {
      const PolyFp f = random_poly(rng, p, 3, 4, 5);
      EXPECT_EQ(P(S(f).c_str(), p), f) << S(f);
    }
}

TEST(Order, Grevlex) {
  // x^2 > x*y > y^2 > x*z > y*z > z^2 > x > y > z > 1
  const std::vector<Exponents> desc{{2, 0, 0}, {1, 1, 0}, {0, 2, 0}, {1, 0, 1}, {0, 1, 1},
                                    {0, 0, 2}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}};
  for (std::size_t i = 0; i + 1 < desc.size(); ++i)
    EXPECT_GT(compare_monomials(desc[i], desc[i + 1], MonomialOrder::grevlex), 0) << i;
  // elimination of the last variable: any power of it beats everything without it
  EXPECT_GT(compare_monomials({0, 0, 1}, {5, 5, 0}, MonomialOrder::elim_last), 0);
}

TEST(Groebner, KnownBases) {
  const std::uint32_t p = 5;
  // (x^2 - y, x*y - 1): standard monomials 1, x, y
  const auto gb = groebner_basis({P("x^2 - y", p), P("x*y - 1", p)}, MonomialOrder::grevlex);
  ASSERT_EQ(gb.size(), 3u);
  EXPECT_EQ(gb[0], P("x^2 - y", p));
  EXPECT_EQ(gb[1], P("x*y - 1", p));
  EXPECT_EQ(gb[2], P("y^2 - x", p));

  EXPECT_TRUE(groebner_basis({}, MonomialOrder::grevlex).empty());
  const auto unit = groebner_basis({P("x", p), P("x + 1", p)}, MonomialOrder::grevlex);
  ASSERT_EQ(unit.size(), 1u);
  EXPECT_EQ(unit[0], PolyFp::constant(p, 3, 1));
}

TEST(Groebner, MembershipAgreesWithGenerators) {
  std::mt19937 rng(9);
  for (std::uint32_t p : {2u, 3u}) {
    for (int t = 0; t < 20; ++t) {
      const PolyFp g1 = random_poly(rng, p, 3, 2, 3), g2 = random_poly(rng, p, 3, 2, 3);
      const ChartIdeal I(p, 3, {g1, g2});
      const PolyFp h1 = random_poly(rng, p, 3, 2, 3), h2 = random_poly(rng, p, 3, 2, 3);
      EXPECT_TRUE(I.contains(h1 * g1 + h2 * g2));
      EXPECT_TRUE(I.contains(g1));
      // reduced basis: no basis term is divisible by another leading term
      for (std::size_t i = 0; i < I.basis().size(); ++i)
        for (std::size_t j = 0; j < I.basis().size(); ++j) {
          if (i == j) continue;
          const Exponents lj = leading_term(I.basis()[j], MonomialOrder::grevlex).exps;
          for (const auto& [e, c] : I.basis()[i].terms()) EXPECT_FALSE(divides(lj, e));
        }
    }
  }
}

TEST(Ideal, ZeroUnitAndPoints) {
  const ChartIdeal zero = ChartIdeal::zero(3, 3);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_FALSE(zero.contains(P("x", 3)));
  const ChartIdeal unit(3, 3, {P("2", 3)});
  EXPECT_TRUE(unit.is_unit());
  const ChartIdeal I(3, 3, {P("x*y", 3), P("z - 1", 3)});
  const std::vector<std::uint32_t> on{0, 2, 1}, off{1, 1, 1};
  EXPECT_TRUE(I.vanishes_at(on));
  EXPECT_FALSE(I.vanishes_at(off));
  EXPECT_EQ(ChartIdeal(3, 3, {P("x", 3), P("x + y", 3)}), ChartIdeal(3, 3, {P("y", 3), P("x", 3)}));
}

TEST(Ideal, SumAndIntersection) {
  const std::uint32_t p = 3;
  const ChartIdeal a(p, 3, {P("x", p)}), b(p, 3, {P("y", p)});
  EXPECT_EQ(ideal_sum(a, b), ChartIdeal(p, 3, {P("x", p), P("y", p)}));
  EXPECT_EQ(ideal_intersection(a, b), ChartIdeal(p, 3, {P("x*y", p)}));
  const ChartIdeal c(p, 3, {P("x", p), P("y", p)}), d(p, 3, {P("x", p), P("z", p)});
  EXPECT_EQ(ideal_intersection(c, d), ChartIdeal(p, 3, {P("x", p), P("y*z", p)}));
  EXPECT_TRUE(ideal_intersection(a, ChartIdeal::zero(p, 3)).is_zero());
  EXPECT_EQ(ideal_intersection(a, ChartIdeal(p, 3, {P("1", p)})), a);
}

TEST(Ideal, IntersectionIsContainedInBoth) {
  std::mt19937 rng(13);
  for (int t = 0; t < 15; ++t) {
    const ChartIdeal a(2, 3, {random_poly(rng, 2, 3, 2, 2)}), b(2, 3, {random_poly(rng, 2, 3, 2, 2)});
    const ChartIdeal m = ideal_intersection(a, b);
    EXPECT_TRUE(a.contains(m));
    EXPECT_TRUE(b.contains(m));
    if (!a.basis().empty() && !b.basis().empty()) { EXPECT_TRUE(m.contains(a.basis()[0] * b.basis()[0])); }
  }
}

TEST(Primality, Certificates) {
  const std::uint32_t p = 3;
  EXPECT_EQ(primality(ChartIdeal::zero(p, 3)), Primality::prime);
  EXPECT_EQ(primality(ChartIdeal(p, 3, {P("x", p), P("y - z^2", p)})), Primality::prime);
  EXPECT_EQ(primality(ChartIdeal(p, 3, {P("x*y - z", p)})), Primality::prime);
  EXPECT_EQ(primality(ChartIdeal(p, 3, {P("x*y", p)})), Primality::not_prime);
  EXPECT_EQ(primality(ChartIdeal(p, 3, {P("z", p), P("x*y - z", p)})), Primality::not_prime);
  EXPECT_EQ(primality(ChartIdeal(p, 3, {P("1", p)})), Primality::not_prime);
  EXPECT_EQ(primality(ChartIdeal(p, 3, {P("x^2 + 1", p)})), Primality::unknown);
  EXPECT_STREQ(to_string(Primality::unknown), "unknown");
}
