#pragma once

// The big cell of SL_n / B for n = 2, 3 as an affine chart over F_p.
//
// Chart points are u B with u lower unitriangular; the coordinates are the
// below-diagonal entries x_ij (i > j), read row-major. Every chart point sits
// in the opposite cell C^e, so only intervals [e, w] meet the chart, and the
// opposite Schubert divisors lie at infinity: their equations (the top-left
// minors) restrict to units.
//
// Every equation used here is derived symbolically and then certified by the
// Bruhat-decomposition point oracle: an equation or ideal is accepted only if
// its F_p zero set is exactly the set of chart points whose cell pair lies in
// the corresponding interval's cell set.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flagsplit/coxeter.hpp"
#include "flagsplit/errors.hpp"
#include "flagsplit/flags.hpp"
#include "flagsplit/frobenius.hpp"
#include "flagsplit/groebner.hpp"
#include "flagsplit/poly.hpp"
#include "flagsplit/richardson.hpp"

namespace flagsplit {

struct BigCellOptions {
  std::uint32_t max_prime = 5;
  std::size_t max_n = 3;
};

inline std::size_t chart_dimension(std::size_t n) { return n * (n - 1) / 2; }

/// (row, col), 0-based, of each chart variable, row-major below the diagonal.
inline std::vector<std::pair<std::size_t, std::size_t>> chart_positions(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) out.emplace_back(i, j);
  return out;
}

inline VariableNames chart_variable_names(std::size_t n) {
  VariableNames out;
  for (auto [i, j] : chart_positions(n)) out.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
  return out;
}

/// The generic lower unitriangular matrix, row-major, entries in F_p[x].
inline std::vector<PolyFp> chart_matrix(std::size_t n, std::uint32_t p) {
  const std::size_t nv = chart_dimension(n);
  std::vector<PolyFp> m(n * n, PolyFp(p, nv));
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = PolyFp::constant(p, nv, 1);
  const auto pos = chart_positions(n);
  for (std::size_t k = 0; k < pos.size(); ++k) m[pos[k].first * n + pos[k].second] = PolyFp::variable(p, nv, k);
  return m;
}

/// Determinant of the submatrix on `rows` x `cols` by Laplace expansion.
inline PolyFp minor(const std::vector<PolyFp>& m, std::size_t n, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
  const PolyFp& any = m.front();
  if (rows.empty()) return PolyFp::constant(any.prime(), any.nvars(), 1);
  PolyFp det(any.prime(), any.nvars());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const PolyFp& entry = m[rows[0] * n + cols[k]];
    if (entry.is_zero()) continue;
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    std::vector<std::size_t> sub_cols;
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (c != k) sub_cols.push_back(cols[c]);
    const PolyFp term = entry * minor(m, n, sub_rows, sub_cols);
    if (k % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

namespace detail {

inline std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(i);
  return out;
}

/// Calls fn(subset) for every k-subset of `items`.
template <class Fn>
void for_each_subset(const std::vector<std::size_t>& items, std::size_t k, Fn&& fn) {
  if (k > items.size()) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    std::vector<std::size_t> pick;
    for (std::size_t i : idx) pick.push_back(items[i]);
    fn(pick);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// All (r+1)-minors of the block rows x cols when the block must have rank <= r.
inline void rank_condition(const std::vector<PolyFp>& m, std::size_t n, const std::vector<std::size_t>& rows,
                           const std::vector<std::size_t>& cols, std::size_t r, std::vector<PolyFp>& out) {
  if (r >= std::min(rows.size(), cols.size())) return;
  for_each_subset(rows, r + 1, [&](const std::vector<std::size_t>& rs) {
    for_each_subset(cols, r + 1, [&](const std::vector<std::size_t>& cs) {
      PolyFp d = minor(m, n, rs, cs);
      if (!d.is_zero()) out.push_back(std::move(d));
    });
  });
}

}  // namespace detail

/// Bottom-left i x i minors, i = 1..n-1, of the chart matrix.
inline std::vector<PolyFp> schubert_divisor_equations(std::size_t n, std::uint32_t p) {
  const auto m = chart_matrix(n, p);
  std::vector<PolyFp> out;
  for (std::size_t i = 1; i < n; ++i) out.push_back(minor(m, n, detail::range(n - i, n), detail::range(0, i)));
  return out;
}

/// Top-left i x i minors, i = 1..n-1, of the chart matrix.
inline std::vector<PolyFp> opposite_divisor_equations(std::size_t n, std::uint32_t p) {
  const auto m = chart_matrix(n, p);
  std::vector<PolyFp> out;
  for (std::size_t i = 1; i < n; ++i) out.push_back(minor(m, n, detail::range(0, i), detail::range(0, i)));
  return out;
}

/// Rank conditions cutting out X_w (bottom-left blocks) and X^v (top-left
/// blocks) on the chart. With w, v in one-line notation:
///   rank g[i..n, 1..j] <= #{k <= j : w(k) >= i},
///   rank g[1..i, 1..j] <= #{k <= j : v(k) <= i}.
inline std::vector<PolyFp> richardson_rank_generators(const WeylGroup& g, const Interval& x, std::uint32_t p) {
  const std::size_t n = static_cast<std::size_t>(g.rank()) + 1;
  const auto m = chart_matrix(n, p);
  const auto w = permutation_of(g, x.w);
  const auto v = permutation_of(g, x.v);
  std::vector<PolyFp> gens;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t rw = 0, rv = 0;
      for (std::size_t k = 1; k <= j; ++k) {
        if (static_cast<std::size_t>(w[k - 1]) >= i) ++rw;
        if (static_cast<std::size_t>(v[k - 1]) <= i) ++rv;
      }
      detail::rank_condition(m, n, detail::range(i - 1, n), detail::range(0, j), rw, gens);
      detail::rank_condition(m, n, detail::range(0, i), detail::range(0, j), rv, gens);
    }
  return gens;
}

struct ChartPoint {
  std::vector<std::uint32_t> coords;
  Element opposite;  ///< a with u ∈ B^- a B
  Element schubert;  ///< b with u ∈ B b B
};

/// Every F_q point of the chart with its cell pair. q need not equal p.
inline std::vector<ChartPoint> chart_points(const WeylGroup& g, std::uint32_t q) {
  const std::size_t n = static_cast<std::size_t>(g.rank()) + 1;
  const auto pos = chart_positions(n);
  std::vector<ChartPoint> out;
  std::vector<std::uint32_t> coords(pos.size(), 0);
  while (true) {
    FqMatrix u = FqMatrix::identity(n, q);
    for (std::size_t k = 0; k < pos.size(); ++k) u(pos[k].first, pos[k].second) = coords[k];
    out.push_back(ChartPoint{coords, opposite_decompose(g, u), bruhat_decompose(g, u)});
    std::size_t k = 0;
    while (k < coords.size() && ++coords[k] == q) coords[k++] = 0;
    if (k == coords.size()) break;
  }
  return out;
}

inline bool cell_in_interval(const WeylGroup& g, const ChartPoint& pt, const Interval& x) {
  return g.bruhat_leq(x.v, pt.opposite) && g.bruhat_leq(pt.opposite, pt.schubert) &&
         g.bruhat_leq(pt.schubert, x.w);
}

/// First chart point where "generators vanish" and "cell pair in x" disagree.
inline std::optional<ChartPoint> zero_set_mismatch(const WeylGroup& g, const std::vector<ChartPoint>& points,
                                                   const std::vector<PolyFp>& gens, const Interval& x) {
  for (const ChartPoint& pt : points) {
    const bool zero =
        std::all_of(gens.begin(), gens.end(), [&](const PolyFp& f) { return f.evaluate(pt.coords) == 0; });
    if (zero != cell_in_interval(g, pt, x)) return pt;
  }
  return std::nullopt;
}

struct DivisorEquation {
  Interval divisor;
  PolyFp equation;
  bool schubert = true;  ///< false for opposite Schubert divisors
  [[nodiscard]] bool at_infinity() const { return equation.is_constant(); }
};

struct RichardsonIdeal {
  Interval interval;
  ChartIdeal ideal;
};

struct BigCellModel {
  std::size_t n = 0;
  std::uint32_t p = 0;
  WeylGroup group;
  VariableNames names;
  std::vector<DivisorEquation> divisors;
  std::optional<SplittingSection> canonical_section;
  std::optional<PolyFp> root;  ///< g with g^{p-1} = canonical section
  std::vector<RichardsonIdeal> richardson_ideals;  ///< intervals meeting the chart
  std::vector<ChartPoint> points;                  ///< F_p points with cell pairs

  [[nodiscard]] const SplittingSection& section() const { return *canonical_section; }
  [[nodiscard]] std::string format(const PolyFp& f) const { return format_poly(f, names); }
};

inline std::string format_point(const std::vector<std::uint32_t>& coords, const VariableNames& names) {
  std::string s = "(";
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (k) s += ", ";
    s += names[k] + "=" + std::to_string(coords[k]);
  }
  return s + ")";
}

inline BigCellModel build_big_cell(std::size_t n, std::uint32_t p, const BigCellOptions& opts = {}) {
  if (n < 2 || n > opts.max_n) throw validation_error("big cell size n must be in [2, " + std::to_string(opts.max_n) + "]");
  if (!is_prime(p) || p > opts.max_prime)
    throw validation_error("prime must be a prime <= " + std::to_string(opts.max_prime));

  BigCellModel m;
  m.n = n;
  m.p = p;
  m.group = WeylGroup::generate(CartanType{Family::A, static_cast<int>(n - 1)});
  m.names = chart_variable_names(n);
  m.points = chart_points(m.group, p);
  const WeylGroup& g = m.group;

  auto certify = [&](const std::vector<PolyFp>& candidates, const std::vector<Interval>& targets, bool schubert) {
    std::vector<bool> used(candidates.size(), false);
    for (const Interval& d : targets) {
      std::optional<ChartPoint> first_bad;
      bool matched = false;
      for (std::size_t k = 0; k < candidates.size() && !matched; ++k) {
        if (used[k]) continue;
        const auto bad = zero_set_mismatch(g, m.points, {candidates[k]}, d);
        if (!bad) {
          used[k] = true;
          matched = true;
          m.divisors.push_back(DivisorEquation{d, candidates[k], schubert});
        } else if (!first_bad) {
          first_bad = bad;
        }
      }
      if (!matched) {
        std::string msg = "no divisor equation matches " + format_interval(g, d);
        if (first_bad) msg += "; counterexample point " + format_point(first_bad->coords, m.names);
        throw construction_error(msg);
      }
    }
  };

  std::vector<Interval> schubert_divs, opposite_divs;
  for (Element b : g.cocovers(g.longest())) schubert_divs.push_back(Interval{g.identity(), b});
  for (Element a : g.covers(g.identity())) opposite_divs.push_back(Interval{a, g.longest()});
  certify(schubert_divisor_equations(n, p), schubert_divs, true);
  certify(opposite_divisor_equations(n, p), opposite_divs, false);

  PolyFp product = PolyFp::constant(p, m.names.size(), 1);
  for (const DivisorEquation& d : m.divisors) product *= d.equation;
  PolyFp section = product.pow(p - 1);
  const PolyFp t = trace(section);
  if (!t.is_constant() || t.is_zero())
    throw construction_error("trace of the divisor product is not a nonzero constant: " + format_poly(t, m.names));
  section = section.scaled(fp::inv(t.constant_term(), p));
  m.canonical_section.emplace(section);
  m.root = is_pth_minus_one_power(section);

  for (const Interval& x : all_intervals(g)) {
    ChartIdeal ideal(p, m.names.size(), richardson_rank_generators(g, x, p));
    if (const auto bad = zero_set_mismatch(g, m.points, ideal.basis(), x))
      throw construction_error("rank conditions for " + format_interval(g, x) + " disagree with the cell oracle at " +
                               format_point(bad->coords, m.names));
    if (ideal.is_unit()) continue;
    m.richardson_ideals.push_back(RichardsonIdeal{x, std::move(ideal)});
  }
  return m;
}

/// Intervals whose cell set contains a cell that actually occurs on the
/// chart, i.e. a pair (e, b).
inline std::vector<Interval> intervals_meeting_chart(const WeylGroup& g) {
  std::vector<Interval> out;
  for (const Interval& x : all_intervals(g))
    if (x.v == g.identity()) out.push_back(x);
  return out;
}

struct Candidate {
  ChartIdeal ideal;
  std::vector<std::string> labels;
  std::optional<Interval> richardson;
};

struct CandidateVerdict {
  Candidate candidate;
  bool split = false;
  Primality primality = Primality::unknown;
  std::optional<CompatibilityWitness> witness;
  bool inside_section_zeros = true;  ///< F_p zero set ⊆ Z(section); vacuous for (0)
};

struct SplitSweep {
  std::vector<CandidateVerdict> verdicts;

  [[nodiscard]] std::vector<const CandidateVerdict*> split_primes() const {
    std::vector<const CandidateVerdict*> out;
    for (const auto& v : verdicts)
      if (v.split && v.primality == Primality::prime) out.push_back(&v);
    return out;
  }
};

/// The candidate family: Richardson restriction ideals, ideals generated by
/// subsets of the on-chart divisor equations, and the hyperplanes x_i - c
/// for every c in F_p, plus any caller-supplied ideals. Duplicates (equal
/// reduced bases) are merged.
inline std::vector<Candidate> candidate_family(const BigCellModel& m, const std::vector<ChartIdeal>& extra = {}) {
  std::vector<Candidate> out;
  auto add = [&](ChartIdeal ideal, std::string label, std::optional<Interval> r) {
    for (Candidate& c : out)
      if (c.ideal == ideal) {
        c.labels.push_back(std::move(label));
        if (r) c.richardson = r;
        return;
      }
    out.push_back(Candidate{std::move(ideal), {std::move(label)}, r});
  };
  const std::size_t nv = m.names.size();
  for (const RichardsonIdeal& r : m.richardson_ideals)
    add(r.ideal, "richardson " + format_interval(m.group, r.interval), r.interval);

  std::vector<PolyFp> on_chart;
  for (const DivisorEquation& d : m.divisors)
    if (!d.at_infinity()) on_chart.push_back(d.equation);
  for (std::size_t mask = 0; mask < (std::size_t{1} << on_chart.size()); ++mask) {
    std::vector<PolyFp> gens;
    std::string label = "divisors {";
    for (std::size_t k = 0; k < on_chart.size(); ++k)
      if (mask >> k & 1) {
        if (!gens.empty()) label += ", ";
        gens.push_back(on_chart[k]);
        label += m.format(on_chart[k]);
      }
    add(ChartIdeal(m.p, nv, std::move(gens)), label + "}", std::nullopt);
  }

  for (std::size_t i = 0; i < nv; ++i)
    for (std::uint32_t c = 0; c < m.p; ++c) {
      const PolyFp h = PolyFp::variable(m.p, nv, i) - PolyFp::constant(m.p, nv, c);
      add(ChartIdeal(m.p, nv, {h}), "hyperplane " + m.format(h), std::nullopt);
    }

  for (std::size_t k = 0; k < extra.size(); ++k) add(extra[k], "extra #" + std::to_string(k + 1), std::nullopt);
  return out;
}

inline bool zeros_inside_section(const BigCellModel& m, const ChartIdeal& ideal) {
  const PolyFp& f = m.section().poly();
  return std::all_of(m.points.begin(), m.points.end(), [&](const ChartPoint& pt) {
    return !ideal.vanishes_at(pt.coords) || f.evaluate(pt.coords) == 0;
  });
}

inline SplitSweep enumerate_split_primes(const BigCellModel& m, const std::vector<ChartIdeal>& extra = {}) {
  SplitSweep sweep;
  for (Candidate& c : candidate_family(m, extra)) {
    CandidateVerdict v;
    const auto res = check_compatibility(m.section().poly(), c.ideal);
    v.split = res.split;
    v.witness = res.witness;
    v.primality = primality(c.ideal);
    v.inside_section_zeros = c.ideal.is_zero() || zeros_inside_section(m, c.ideal);
    v.candidate = std::move(c);
    sweep.verdicts.push_back(std::move(v));
  }
  return sweep;
}

/// Everything that contradicts "split primes in the family are exactly the
/// Richardson restrictions, and split proper ideals vanish only inside
/// Z(section)". Empty when the sweep agrees.
inline std::vector<std::string> audit_sweep(const BigCellModel& m, const SplitSweep& sweep) {
  std::vector<std::string> out;
  if (!m.root || m.root->pow(m.p - 1) != m.section().poly())
    out.push_back("canonical section is not a verified (p-1)-th power");
  std::size_t split_richardson = 0;
  for (const CandidateVerdict& v : sweep.verdicts) {
    const std::string what = v.candidate.labels.front();
    if (v.candidate.richardson) {
      if (!v.split) out.push_back(what + " is not compatibly split");
      if (v.primality != Primality::prime) out.push_back(what + " has no primality certificate");
      if (v.split) ++split_richardson;
    } else if (v.split && v.primality == Primality::prime) {
      out.push_back(what + " is a split prime outside the Richardson family");
    }
    if (v.split && !v.candidate.ideal.is_unit() && !v.inside_section_zeros)
      out.push_back(what + " is split but its zero set leaves Z(section)");
  }
  const std::size_t meeting = intervals_meeting_chart(m.group).size();
  if (split_richardson != meeting)
    out.push_back("split Richardson restrictions: " + std::to_string(split_richardson) + ", intervals meeting the chart: " +
                  std::to_string(meeting));
  return out;
}

struct Restriction {
  std::size_t variable;  ///< chart variable solved for and removed
  PolyFp section;        ///< induced section on the divisor, one variable fewer
};

/// Residue of `section` along {equation = 0}. The equation must be
/// c*x_k + r with c a nonzero constant and r free of x_k; the unimodular
/// change x_k -> (x_k - r)/c turns it into the coordinate x_k (Jacobian
/// c^{-1}, whose (1-p)-th power is 1). Then section / x_k^{p-1} is
/// evaluated at x_k = 0. Returns nothing when the equation is not of that
/// shape or x_k^{p-1} does not divide.
inline std::optional<Restriction> restrict_to_divisor(const PolyFp& section, const PolyFp& equation) {
  section.check_ring(equation);
  const std::uint32_t p = section.prime();
  const std::size_t nv = section.nvars();
  for (std::size_t k = 0; k < nv; ++k) {
    if (equation.degree_in(k) != 1) continue;
    Exponents unit(nv, 0);
    unit[k] = 1;
    const std::uint32_t c = equation.coefficient(unit);
    if (c == 0) continue;
    const PolyFp rest = equation - PolyFp::monomial(p, unit, c);
    if (rest.degree_in(k) != 0) continue;
    const PolyFp xk = PolyFp::variable(p, nv, k);
    const PolyFp moved = section.substitute(k, (xk - rest).scaled(fp::inv(c, p)));
    const auto q = exact_divide(moved, xk.pow(p - 1));
    if (!q) return std::nullopt;
    return Restriction{k, q->substitute(k, PolyFp(p, nv)).drop_variable(k)};
  }
  return std::nullopt;
}

}  // namespace flagsplit
