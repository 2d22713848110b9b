#pragma once

// Interval calculus for Richardson varieties X_w^v, modelled by Bruhat
// intervals [v, w] with v <= w.
//
// The cell model: every point of G/B lies in exactly one C_b ∩ C^a, with
// a <= b, and X_w^v is the union of the cells (a, b) with v <= a <= b <= w.
// So a closed union of Richardson varieties is determined exactly by its
// CellSet, and set-theoretic statements reduce to bitset algebra. This is an
// input assumption taken from the standard closure and cell facts for
// Richardson varieties; nothing here re-derives it.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "flagsplit/bits.hpp"
#include "flagsplit/coxeter.hpp"
#include "flagsplit/errors.hpp"

namespace flagsplit {

struct Interval {
  Element v;
  Element w;

  friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline Interval make_interval(const WeylGroup& g, Element v, Element w) {
  if (!g.bruhat_leq(v, w))
    throw validation_error("empty Richardson variety: " + g.name(v) + " is not below " + g.name(w));
  return Interval{v, w};
}

inline int dim(const WeylGroup& g, const Interval& x) { return g.length(x.w) - g.length(x.v); }

/// X[inner] ⊆ X[outer]  iff  outer.v <= inner.v <= inner.w <= outer.w.
inline bool contains(const WeylGroup& g, const Interval& outer, const Interval& inner) {
  return g.bruhat_leq(outer.v, inner.v) && g.bruhat_leq(inner.w, outer.w);
}

inline std::string format_interval(const WeylGroup& g, const Interval& x) {
  return "X[v=" + g.name(x.v) + ", w=" + g.name(x.w) + "]";
}

/// Every interval of g, ordered by (v.id, w.id).
inline std::vector<Interval> all_intervals(const WeylGroup& g) {
  std::vector<Interval> out;
  for (Element v : g.elements()) g.above(v).for_each([&](std::size_t w) {
    out.push_back(Interval{v, g.element(w)});
  });
  return out;
}

/// A set of cells (a, b), a <= b, stored as a bitset over a*|W| + b.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(const WeylGroup& g) : order_(g.size()), bits_(g.size() * g.size()) {}

  void insert(Element a, Element b) { bits_.set(a.id * order_ + b.id); }
  [[nodiscard]] bool contains(Element a, Element b) const { return bits_.test(a.id * order_ + b.id); }
  [[nodiscard]] std::size_t size() const { return bits_.count(); }
  [[nodiscard]] bool empty() const { return bits_.none(); }

  [[nodiscard]] std::vector<std::pair<Element, Element>> members() const {
    std::vector<std::pair<Element, Element>> out;
    bits_.for_each([&](std::size_t k) {
      out.emplace_back(Element{static_cast<std::uint32_t>(k / order_)},
                       Element{static_cast<std::uint32_t>(k % order_)});
    });
    return out;
  }

  [[nodiscard]] bool is_subset_of(const CellSet& o) const { return bits_.is_subset_of(o.bits_); }

  CellSet& operator&=(const CellSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  CellSet& operator|=(const CellSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  CellSet& subtract(const CellSet& o) {
    bits_.subtract(o.bits_);
    return *this;
  }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend bool operator==(const CellSet&, const CellSet&) = default;

 private:
  std::size_t order_ = 0;
  Bitset bits_;
};

/// {(a, b) : v <= a <= b <= w}
inline CellSet cellset(const WeylGroup& g, const Interval& x) {
  CellSet s(g);
  const Bitset& lower = g.below(x.w);
  const Bitset middle = g.above(x.v) & lower;
  middle.for_each([&](std::size_t a) {
    const Element ea = g.element(a);
    (g.above(ea) & lower).for_each([&](std::size_t b) { s.insert(ea, g.element(b)); });
  });
  return s;
}

/// Keeps the containment-maximal intervals, deduplicated, sorted.
inline std::vector<Interval> maximal_intervals(const WeylGroup& g, std::vector<Interval> xs) {
  std::sort(xs.begin(), xs.end(), [&](const Interval& a, const Interval& b) {
    const int da = dim(g, a), db = dim(g, b);
    return da != db ? da > db : a < b;
  });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Interval> kept;
  for (const Interval& x : xs) {
    const bool covered =
        std::any_of(kept.begin(), kept.end(), [&](const Interval& k) { return contains(g, k, x); });
    if (!covered) kept.push_back(x);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

/// A finite union of Richardson varieties, kept as an antichain of its
/// irreducible components. The empty variety has no components.
class UnionVariety {
 public:
  UnionVariety() = default;
  UnionVariety(const WeylGroup& g, std::vector<Interval> parts)
      : components_(maximal_intervals(g, std::move(parts))) {}

  [[nodiscard]] const std::vector<Interval>& components() const noexcept { return components_; }
  [[nodiscard]] bool empty() const noexcept { return components_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return components_.size(); }
  [[nodiscard]] bool has_component(const Interval& x) const {
    return std::binary_search(components_.begin(), components_.end(), x);
  }

  friend bool operator==(const UnionVariety&, const UnionVariety&) = default;

 private:
  std::vector<Interval> components_;
};

inline CellSet cellset(const WeylGroup& g, const UnionVariety& u) {
  CellSet s(g);
  for (const Interval& x : u.components()) s |= cellset(g, x);
  return s;
}

/// Minimal elements of the common upper set of `xs`. Bruhat order is not a
/// lattice, so this is a set.
inline std::vector<Element> minimal_upper_bounds(const WeylGroup& g, const std::vector<Element>& xs) {
  Bitset common(g.size());
  for (Element x : g.elements()) common.set(x.id);
  for (Element x : xs) common &= g.above(x);
  std::vector<Element> out;
  common.for_each([&](std::size_t k) {
    const Element c = g.element(k);
    bool minimal = true;
    for (Element d : g.cocovers(c))
      if (common.test(d.id)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(c);
  });
  return out;
}

/// Maximal elements of the common lower set of `xs`.
inline std::vector<Element> maximal_lower_bounds(const WeylGroup& g, const std::vector<Element>& xs) {
  Bitset common(g.size());
  for (Element x : g.elements()) common.set(x.id);
  for (Element x : xs) common &= g.below(x);
  std::vector<Element> out;
  common.for_each([&](std::size_t k) {
    const Element c = g.element(k);
    bool maximal = true;
    for (Element d : g.covers(c))
      if (common.test(d.id)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  });
  return out;
}

/// Components of X[x] ∩ X[y]: [a, b] with a a minimal upper bound of the
/// bottoms and b a maximal lower bound of the tops, a <= b, then maximal.
inline UnionVariety intersect(const WeylGroup& g, const Interval& x, const Interval& y) {
  const auto lows = minimal_upper_bounds(g, {x.v, y.v});
  const auto highs = maximal_lower_bounds(g, {x.w, y.w});
  std::vector<Interval> parts;
  for (Element a : lows)
    for (Element b : highs)
      if (g.bruhat_leq(a, b)) parts.push_back(Interval{a, b});
  return UnionVariety(g, std::move(parts));
}

inline UnionVariety intersect(const WeylGroup& g, const UnionVariety& x, const UnionVariety& y) {
  std::vector<Interval> parts;
  for (const Interval& a : x.components())
    for (const Interval& b : y.components()) {
      const auto c = intersect(g, a, b);
      parts.insert(parts.end(), c.components().begin(), c.components().end());
    }
  return UnionVariety(g, std::move(parts));
}

/// Irreducible components of a closed cell set: the maximal intervals whose
/// whole cell set lies inside `s`.
inline UnionVariety components(const WeylGroup& g, const CellSet& s) {
  std::vector<Interval> parts;
  for (auto [a, b] : s.members()) {
    const Interval cand{a, b};
    if (cellset(g, cand).is_subset_of(s)) parts.push_back(cand);
  }
  return UnionVariety(g, std::move(parts));
}

/// Cell-model route for intersections: intersect the cell sets, then extract
/// components.
inline UnionVariety intersect_by_cells(const WeylGroup& g, const UnionVariety& x, const UnionVariety& y) {
  return components(g, cellset(g, x) & cellset(g, y));
}

/// Richardson divisors: [a, w] for v ⋖ a <= w and [v, b] for v <= b ⋖ w.
/// A point interval has none.
inline std::vector<Interval> divisors(const WeylGroup& g, const Interval& x) {
  std::vector<Interval> out;
  if (dim(g, x) < 1) return out;
  for (Element a : g.covers(x.v))
    if (g.bruhat_leq(a, x.w)) out.push_back(Interval{a, x.w});
  for (Element b : g.cocovers(x.w))
    if (g.bruhat_leq(x.v, b)) out.push_back(Interval{x.v, b});
  std::sort(out.begin(), out.end());
  return out;
}

/// X[x] minus its open cell C_w^v, as the union of the divisors.
inline UnionVariety boundary(const WeylGroup& g, const Interval& x) { return UnionVariety(g, divisors(g, x)); }

/// (v, w) -> (w0 w, w0 v); an order-reversing involution on intervals.
inline Interval w0_translate(const WeylGroup& g, const Interval& x) {
  return Interval{g.multiply(g.longest(), x.w), g.multiply(g.longest(), x.v)};
}

}  // namespace flagsplit
