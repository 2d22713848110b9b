#include <gtest/gtest.h>

#include "flagsplit/big_cell.hpp"
#include "oracles.hpp"

using namespace flagsplit;

namespace {

PolyFp chart_poly(const BigCellModel& m, const char* text) { return parse_poly(text, m.p, m.names); }

ChartIdeal chart_ideal(const BigCellModel& m, std::vector<const char*> gens) {
  std::vector<PolyFp> ps;
  for (const char* g : gens) ps.push_back(chart_poly(m, g));
  return ChartIdeal(m.p, m.names.size(), std::move(ps));
}

}  // namespace

TEST(BigCell, RejectsOutOfRangeParameters) {
  EXPECT_THROW(build_big_cell(1, 2), validation_error);
  EXPECT_THROW(build_big_cell(4, 2), validation_error);
  EXPECT_THROW(build_big_cell(3, 4), validation_error);
  EXPECT_THROW(build_big_cell(2, 7), validation_error);
  EXPECT_NO_THROW(build_big_cell(2, 7, BigCellOptions{7, 3}));
}

TEST(BigCell, ChartMatrixAndMinors) {
  const auto m = chart_matrix(3, 3);
  const VariableNames names = chart_variable_names(3);
  EXPECT_EQ(names, (VariableNames{"x21", "x31", "x32"}));
  const auto sch = schubert_divisor_equations(3, 3);
  ASSERT_EQ(sch.size(), 2u);
  EXPECT_EQ(format_poly(sch[0], names), "x31");
  EXPECT_EQ(format_poly(sch[1], names), "x21*x32 - x31");
  for (const PolyFp& f : opposite_divisor_equations(3, 3)) EXPECT_EQ(f, PolyFp::constant(3, 3, 1));
  EXPECT_EQ(minor(m, 3, {0, 1, 2}, {0, 1, 2}), PolyFp::constant(3, 3, 1));
}

TEST(BigCell, PointOracleAgreesWithRankFormula) {
  for (std::size_t n : {2u, 3u})
    for (std::uint32_t q : {2u, 3u}) {
      const WeylGroup g = WeylGroup::generate(CartanType{Family::A, static_cast<int>(n - 1)});
      const auto pos = chart_positions(n);
      for (const ChartPoint& pt : chart_points(g, q)) {
        FqMatrix u = FqMatrix::identity(n, q);
        for (std::size_t k = 0; k < pos.size(); ++k) u(pos[k].first, pos[k].second) = pt.coords[k];
        EXPECT_EQ(permutation_of(g, pt.schubert), oracle::rank_formula_cell(u, false));
        EXPECT_EQ(permutation_of(g, pt.opposite), oracle::rank_formula_cell(u, true));
        // every chart point lies in the open opposite cell
        EXPECT_EQ(pt.opposite, g.identity());
      }
    }
}

TEST(BigCell, SL2) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const BigCellModel m = build_big_cell(2, p);
    EXPECT_EQ(m.names.size(), 1u);
    ASSERT_EQ(m.divisors.size(), 2u);
    EXPECT_EQ(m.divisors[0].equation, chart_poly(m, "x21"));
    EXPECT_TRUE(m.divisors[0].schubert);
    EXPECT_FALSE(m.divisors[1].schubert);
    EXPECT_TRUE(m.divisors[1].at_infinity());
    EXPECT_EQ(m.section().poly(), chart_poly(m, "x21").pow(p - 1));
    EXPECT_TRUE(is_splitting(m.section().poly()));
    EXPECT_EQ(multiplicity(m.section().poly(), chart_poly(m, "x21")), p - 1);

    const SplitSweep sweep = enumerate_split_primes(m);
    const auto primes = sweep.split_primes();
    ASSERT_EQ(primes.size(), 2u);
    EXPECT_TRUE(primes[0]->candidate.ideal == chart_ideal(m, {"x21"}) || primes[0]->candidate.ideal.is_zero());
    EXPECT_TRUE(primes[1]->candidate.ideal == chart_ideal(m, {"x21"}) || primes[1]->candidate.ideal.is_zero());
    for (const auto& v : sweep.verdicts) {
      const bool shifted = v.candidate.ideal.basis().size() == 1 && v.candidate.ideal.basis()[0].num_terms() == 2;
      if (shifted) { EXPECT_FALSE(v.split) << v.candidate.labels.front(); }
    }
    EXPECT_TRUE(audit_sweep(m, sweep).empty());
  }
}

TEST(BigCell, SL3StructureOverF2) {
  const BigCellModel m = build_big_cell(3, 2);
  EXPECT_EQ(m.names.size(), 3u);
  EXPECT_EQ(m.divisors.size(), 4u);
  PolyFp product = PolyFp::constant(2, 3, 1);
  for (const auto& d : m.divisors) product *= d.equation;
  EXPECT_EQ(m.section().poly(), product);
  EXPECT_EQ(m.richardson_ideals.size(), 6u);
}

TEST(BigCell, SL3SectionIsAVerifiedPower) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const BigCellModel m = build_big_cell(3, p);
    EXPECT_TRUE(is_splitting(m.section().poly()));
    ASSERT_TRUE(m.root.has_value());
    EXPECT_EQ(m.root->pow(p - 1), m.section().poly());
  }
}

TEST(BigCell, SectionVanishesExactlyOnTheDivisors) {
  for (std::uint32_t p : {2u, 3u}) {
    const BigCellModel m = build_big_cell(3, p);
    for (const ChartPoint& pt : m.points) {
      bool on_divisor = false;
      for (const auto& d : m.divisors) on_divisor = on_divisor || cell_in_interval(m.group, pt, d.divisor);
      EXPECT_EQ(m.section().poly().evaluate(pt.coords) == 0, on_divisor);
    }
  }
}

TEST(BigCell, RichardsonIdealsMatchTheCellOracle) {
  for (std::uint32_t p : {2u, 3u}) {
    const BigCellModel m = build_big_cell(3, p);
    const auto leq = oracle::subword_order(m.group);
    EXPECT_EQ(m.richardson_ideals.size(), intervals_meeting_chart(m.group).size());
    for (const auto& r : m.richardson_ideals) {
      for (const ChartPoint& pt : m.points) {
        const bool in = leq[r.interval.v.id][pt.opposite.id] && leq[pt.opposite.id][pt.schubert.id] &&
                        leq[pt.schubert.id][r.interval.w.id];
        EXPECT_EQ(r.ideal.vanishes_at(pt.coords), in);
      }
      EXPECT_EQ(primality(r.ideal), Primality::prime);
    }
  }
}

TEST(BigCell, MismatchIsReportedWithAPoint) {
  const BigCellModel m = build_big_cell(3, 3);
  const Interval schubert{m.group.identity(), m.group.parse_element("12")};
  EXPECT_FALSE(zero_set_mismatch(m.group, m.points, {chart_poly(m, "x31")}, schubert).has_value());
  const auto bad = zero_set_mismatch(m.group, m.points, {chart_poly(m, "x21")}, schubert);
  ASSERT_TRUE(bad.has_value());
  EXPECT_NE(chart_poly(m, "x21").evaluate(bad->coords) == 0, cell_in_interval(m.group, *bad, schubert));
}

TEST(BigCell, SplitPrimesAreExactlyTheRichardsonRestrictions) {
  for (std::uint32_t p : {2u, 3u}) {
    const BigCellModel m = build_big_cell(3, p);
    const SplitSweep sweep = enumerate_split_primes(m);
    const auto primes = sweep.split_primes();
    EXPECT_EQ(primes.size(), 6u);
    for (const auto* v : primes) EXPECT_TRUE(v->candidate.richardson.has_value());
    for (const auto& v : sweep.verdicts)
      if (v.split && !v.candidate.ideal.is_unit()) { EXPECT_TRUE(v.inside_section_zeros); }
    EXPECT_TRUE(audit_sweep(m, sweep).empty());
  }
}

TEST(BigCell, ExtraCandidatesAreJudged) {
  const BigCellModel m = build_big_cell(3, 3);
  const SplitSweep sweep =
      enumerate_split_primes(m, {chart_ideal(m, {"x21 - x31"}), chart_ideal(m, {"x31", "x32"}), chart_ideal(m, {"x31^2"})});
  for (const auto& v : sweep.verdicts) {
    if (v.candidate.ideal == chart_ideal(m, {"x21 - x31"})) { EXPECT_FALSE(v.split); }
    if (v.candidate.ideal == chart_ideal(m, {"x31", "x32"})) {
      EXPECT_TRUE(v.split);
      EXPECT_TRUE(v.candidate.richardson.has_value());
      EXPECT_EQ(v.candidate.labels.back(), "extra #2");
    }
    if (v.candidate.ideal == chart_ideal(m, {"x31^2"})) {
      EXPECT_FALSE(v.split);
      ASSERT_TRUE(v.witness.has_value());
      EXPECT_FALSE(v.candidate.ideal.contains(v.witness->image));
    }
  }
  EXPECT_TRUE(audit_sweep(m, sweep).empty());
}

TEST(BigCell, SplitFamilyClosedUnderSumAndIntersection) {
  for (std::uint32_t p : {2u, 3u}) {
    const BigCellModel m = build_big_cell(3, p);
    const SplitSweep sweep = enumerate_split_primes(m);
    std::vector<ChartIdeal> split;
    for (const auto& v : sweep.verdicts)
      if (v.split) split.push_back(v.candidate.ideal);
    for (std::size_t i = 0; i < split.size(); ++i)
      for (std::size_t j = i + 1; j < split.size(); ++j) {
        EXPECT_TRUE(compatibly_split(m.section(), ideal_sum(split[i], split[j])));
        EXPECT_TRUE(compatibly_split(m.section(), ideal_intersection(split[i], split[j])));
      }
  }
}

TEST(BigCell, DivisorsVanishToOrderPMinusOne) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const BigCellModel m = build_big_cell(3, p);
    for (const auto& d : m.divisors) {
      if (d.at_infinity()) continue;
      EXPECT_TRUE(compatibly_split(m.section(), ChartIdeal(p, 3, {d.equation})));
      EXPECT_EQ(multiplicity(m.section().poly(), d.equation), p - 1);
    }
  }
}

TEST(BigCell, RestrictionToADivisorIsASplittingPower) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const BigCellModel m = build_big_cell(3, p);
    for (const auto& d : m.divisors) {
      if (d.at_infinity()) continue;
      const auto r = restrict_to_divisor(m.section().poly(), d.equation);
      ASSERT_TRUE(r.has_value()) << m.format(d.equation);
      EXPECT_EQ(r->section.nvars(), 2u);
      EXPECT_TRUE(is_splitting(r->section)) << m.format(d.equation) << " p=" << p;
      const auto root = is_pth_minus_one_power(r->section);
      ASSERT_TRUE(root.has_value());
      EXPECT_EQ(root->pow(p - 1), r->section);
    }
  }
  const BigCellModel m = build_big_cell(3, 3);
  EXPECT_FALSE(restrict_to_divisor(m.section().poly(), chart_poly(m, "x21^2 - x31^2")).has_value());
}
