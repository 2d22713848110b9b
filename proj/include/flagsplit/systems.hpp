#pragma once

// Intersection-compatible systems of Richardson varieties.
//
// closure() computes S(A) by pairwise intersection of irreducible members.
// Pairwise is enough: intersection distributes over finite unions, so the
// components of (∪ A_i) ∩ (∪ B_j) are among the components of the A_i ∩ B_j.
//
// Normal-system axiom (1), normality of every member, is a geometric input
// and is not checked. Axiom (3) refers to singular loci, which the cell model
// cannot see; axiom3_surrogate() checks the combinatorial statement the
// proof reduces it to (every proper member lies in a divisor member).

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "flagsplit/bits.hpp"
#include "flagsplit/coxeter.hpp"
#include "flagsplit/errors.hpp"
#include "flagsplit/richardson.hpp"

namespace flagsplit {

class SubvarietySystem {
 public:
  SubvarietySystem() = default;
  explicit SubvarietySystem(const WeylGroup& g) : order_(g.size()), bits_(g.size() * g.size()) {}
  SubvarietySystem(const WeylGroup& g, const std::vector<Interval>& xs) : SubvarietySystem(g) {
    for (const Interval& x : xs) insert(x);
  }

  bool insert(const Interval& x) {
    const std::size_t k = key(x);
    if (bits_.test(k)) return false;
    bits_.set(k);
    return true;
  }
  [[nodiscard]] bool contains(const Interval& x) const { return bits_.test(key(x)); }
  [[nodiscard]] std::size_t size() const { return bits_.count(); }
  [[nodiscard]] bool empty() const { return bits_.none(); }
  [[nodiscard]] bool is_subset_of(const SubvarietySystem& o) const { return bits_.is_subset_of(o.bits_); }

  /// Sorted by (v.id, w.id).
  [[nodiscard]] std::vector<Interval> members() const {
    std::vector<Interval> out;
    bits_.for_each([&](std::size_t k) {
      out.push_back(Interval{Element{static_cast<std::uint32_t>(k / order_)},
                             Element{static_cast<std::uint32_t>(k % order_)}});
    });
    return out;
  }

  friend bool operator==(const SubvarietySystem&, const SubvarietySystem&) = default;

 private:
  [[nodiscard]] std::size_t key(const Interval& x) const { return x.v.id * order_ + x.w.id; }

  std::size_t order_ = 0;
  Bitset bits_;
};

/// Least system containing `seed` that is closed under taking components of
/// pairwise intersections. FIFO worklist.
inline SubvarietySystem closure(const WeylGroup& g, const std::vector<Interval>& seed) {
  SubvarietySystem sys(g);
  std::deque<Interval> queue;
  for (const Interval& x : seed) {
    g.check(x.v);
    g.check(x.w);
    if (!g.bruhat_leq(x.v, x.w)) throw validation_error("seed contains an empty interval");
    if (sys.insert(x)) queue.push_back(x);
  }
  std::vector<Interval> done;
  while (!queue.empty()) {
    const Interval m = queue.front();
    queue.pop_front();
    for (const Interval& d : done) {
      const UnionVariety meet = intersect(g, m, d);
      for (const Interval& c : meet.components())
        if (sys.insert(c)) queue.push_back(c);
    }
    done.push_back(m);
  }
  return sys;
}

inline SubvarietySystem closure(const WeylGroup& g, const SubvarietySystem& seed) {
  return closure(g, seed.members());
}

struct ClosureGap {
  Interval x;
  Interval y;
  Interval missing;
};

/// Components of member intersections that are not members. Empty iff closed.
inline std::vector<ClosureGap> closure_gaps(const WeylGroup& g, const SubvarietySystem& sys) {
  std::vector<ClosureGap> gaps;
  const auto ms = sys.members();
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const UnionVariety meet = intersect(g, ms[i], ms[j]);
      for (const Interval& c : meet.components())
        if (!sys.contains(c)) gaps.push_back({ms[i], ms[j], c});
    }
  return gaps;
}

inline bool is_closed(const WeylGroup& g, const SubvarietySystem& sys) { return closure_gaps(g, sys).empty(); }

/// The canonical seed: codimension-1 Schubert [e, b] (b ⋖ w0), codimension-1
/// opposite Schubert [a, w0] (e ⋖ a), and the whole flag variety [e, w0].
inline std::vector<Interval> boundary_divisor_seed(const WeylGroup& g, bool include_whole = true) {
  std::vector<Interval> seed;
  for (Element b : g.cocovers(g.longest())) seed.push_back(Interval{g.identity(), b});
  for (Element a : g.covers(g.identity())) seed.push_back(Interval{a, g.longest()});
  if (include_whole) seed.push_back(Interval{g.identity(), g.longest()});
  return seed;
}

/// Members of sys that are divisors of y.
inline std::vector<Interval> divisor_members(const WeylGroup& g, const SubvarietySystem& sys, const Interval& y) {
  std::vector<Interval> out;
  for (const Interval& d : divisors(g, y))
    if (sys.contains(d)) out.push_back(d);
  return out;
}

/// {y} ∪ S({E ∈ sys : E is a divisor of y})
inline SubvarietySystem subsystem_XY(const WeylGroup& g, const SubvarietySystem& sys, const Interval& y) {
  if (!sys.contains(y)) throw validation_error(format_interval(g, y) + " is not a member of the system");
  SubvarietySystem out = closure(g, divisor_members(g, sys, y));
  out.insert(y);
  return out;
}

/// {Z ∈ sys : Z ⊆ y}
inline SubvarietySystem subsystem_XbarY(const WeylGroup& g, const SubvarietySystem& sys, const Interval& y) {
  if (!sys.contains(y)) throw validation_error(format_interval(g, y) + " is not a member of the system");
  SubvarietySystem out(g);
  for (const Interval& z : sys.members())
    if (contains(g, y, z)) out.insert(z);
  return out;
}

struct Axiom2Violation {
  Interval y;
  std::vector<Interval> only_in_bar;  ///< in X̄^Y but not in X^Y
  std::vector<Interval> only_in_xy;   ///< in X^Y but not in X̄^Y
};

struct Axiom2Report {
  std::size_t checked = 0;
  std::vector<Axiom2Violation> violations;
};

inline Axiom2Report check_normal_axiom2(const WeylGroup& g, const SubvarietySystem& sys) {
  Axiom2Report report;
  for (const Interval& y : sys.members()) {
    ++report.checked;
    const SubvarietySystem xy = subsystem_XY(g, sys, y);
    const SubvarietySystem bar = subsystem_XbarY(g, sys, y);
    if (xy == bar) continue;
    Axiom2Violation v{y, {}, {}};
    for (const Interval& z : bar.members())
      if (!xy.contains(z)) v.only_in_bar.push_back(z);
    for (const Interval& z : xy.members())
      if (!bar.contains(z)) v.only_in_xy.push_back(z);
    report.violations.push_back(std::move(v));
  }
  return report;
}

struct Axiom3Violation {
  Interval y;
  Interval z;
};

struct Axiom3Report {
  std::size_t checked = 0;
  std::vector<Axiom3Violation> violations;
};

/// Every member Z ⊊ Y is contained in some member that is a divisor of Y.
inline Axiom3Report axiom3_surrogate(const WeylGroup& g, const SubvarietySystem& sys) {
  Axiom3Report report;
  const auto ms = sys.members();
  for (const Interval& y : ms) {
    const auto ds = divisor_members(g, sys, y);
    for (const Interval& z : ms) {
      if (z == y || !contains(g, y, z)) continue;
      ++report.checked;
      const bool inside =
          std::any_of(ds.begin(), ds.end(), [&](const Interval& d) { return contains(g, d, z); });
      if (!inside) report.violations.push_back({y, z});
    }
  }
  return report;
}

/// Some x != b with b' < x < w, for b' ⋖ b ⋖ w. Least id wins.
inline Element bgg_witness(const WeylGroup& g, Element bprime, Element b, Element w) {
  const auto& cb = g.cocovers(b);
  const auto& cw = g.cocovers(w);
  if (std::find(cb.begin(), cb.end(), bprime) == cb.end() || std::find(cw.begin(), cw.end(), b) == cw.end())
    throw validation_error("bgg_witness requires b' ⋖ b ⋖ w");
  std::optional<Element> found;
  (g.above(bprime) & g.below(w)).for_each([&](std::size_t k) {
    const Element x = g.element(k);
    if (found || x == bprime || x == w || x == b) return;
    found = x;
  });
  if (!found)
    throw theorem_violation("no element strictly between " + g.name(bprime) + " and " + g.name(w) +
                            " other than " + g.name(b));
  if (g.length(*found) != g.length(b))
    throw theorem_violation("bgg witness has the wrong length");
  return *found;
}

struct StarWitness {
  Interval d;
  Interval e;
  Interval dprime;
};

struct StarFailure {
  Interval x;
  Interval d;
  Interval e;
  std::string reason;
};

struct StarReport {
  std::size_t checked = 0;     ///< intervals (v, w) examined
  std::size_t cases = 0;       ///< (D, E) pairs examined
  std::size_t bgg_checks = 0;  ///< first-case pairs cross-checked against bgg_witness
  std::vector<StarWitness> witnesses;
  std::vector<StarFailure> failures;
};

/// For every divisor D of [v, w] and every divisor E of D, look for a divisor
/// D' of [v, w] with E a component of D' ∩ D. In the case D = [v, b],
/// E = [v, b'], the D' = [v, x] given by bgg_witness must also work.
inline void check_star_into(const WeylGroup& g, const Interval& x, StarReport& report, bool keep_witnesses) {
  ++report.checked;
  const auto ds = divisors(g, x);
  for (const Interval& d : ds) {
    for (const Interval& e : divisors(g, d)) {
      ++report.cases;
      std::optional<Interval> found;
      for (const Interval& dp : ds) {
        if (dp == d) continue;
        if (intersect(g, dp, d).has_component(e)) {
          found = dp;
          break;
        }
      }
      if (!found) {
        report.failures.push_back({x, d, e, "no divisor D' with E a component of D' ∩ D"});
        continue;
      }
      if (keep_witnesses) report.witnesses.push_back({d, e, *found});

      const bool first_case = d.v == x.v && e.v == x.v;
      if (!first_case) continue;
      ++report.bgg_checks;
      try {
        const Element bx = bgg_witness(g, e.w, d.w, x.w);
        const Interval dp{x.v, bx};
        if (!intersect(g, dp, d).has_component(e))
          report.failures.push_back({x, d, e, "bgg witness " + g.name(bx) + " does not realise the condition"});
      } catch (const theorem_violation& err) {
        report.failures.push_back({x, d, e, err.what()});
      }
    }
  }
}

inline StarReport check_star(const WeylGroup& g, Element v, Element w) {
  const Interval x = make_interval(g, v, w);
  if (dim(g, x) < 2) throw validation_error("check_star requires dimension at least 2");
  StarReport report;
  check_star_into(g, x, report, true);
  return report;
}

/// Sweep over every member of dimension >= 2.
inline StarReport check_star_all(const WeylGroup& g, const std::vector<Interval>& xs) {
  StarReport report;
  for (const Interval& x : xs)
    if (dim(g, x) >= 2) check_star_into(g, x, report, false);
  return report;
}

}  // namespace flagsplit
