#pragma once

// Textbook Buchberger over F_p with the product criterion, reduced and monic
// output. Inputs in this project are tiny; nothing here is tuned.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flagsplit/errors.hpp"
#include "flagsplit/poly.hpp"

namespace flagsplit {

struct LeadingTerm {
  Exponents exps;
  std::uint32_t coef = 0;
};

inline LeadingTerm leading_term(const PolyFp& f, MonomialOrder order) {
  if (f.is_zero()) throw validation_error("zero polynomial has no leading term");
  auto best = f.terms().begin();
  for (auto it = std::next(best); it != f.terms().end(); ++it)
    if (compare_monomials(it->first, best->first, order) > 0) best = it;
  return {best->first, best->second};
}

inline PolyFp make_monic(const PolyFp& f, MonomialOrder order) {
  if (f.is_zero()) return f;
  return f.scaled(fp::inv(leading_term(f, order).coef, f.prime()));
}

/// Full reduction of f modulo `basis` (every term, not just the head).
inline PolyFp normal_form(PolyFp f, const std::vector<PolyFp>& basis, MonomialOrder order) {
  const std::uint32_t p = f.prime();
  std::vector<LeadingTerm> heads;
  heads.reserve(basis.size());
  for (const PolyFp& g : basis) heads.push_back(leading_term(g, order));
  PolyFp rem(p, f.nvars());
  while (!f.is_zero()) {
    const LeadingTerm lt = leading_term(f, order);
    bool reduced = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!divides(heads[k].exps, lt.exps)) continue;
      Exponents shift(lt.exps);
      for (std::size_t i = 0; i < shift.size(); ++i) shift[i] -= heads[k].exps[i];
      const std::uint32_t c = fp::mul(lt.coef, fp::inv(heads[k].coef, p), p);
      f -= basis[k].shifted(shift).scaled(c);
      reduced = true;
      break;
    }
    if (!reduced) {
      PolyFp head = PolyFp::monomial(p, lt.exps, lt.coef);
      rem += head;
      f -= head;
    }
  }
  return rem;
}

inline PolyFp s_polynomial(const PolyFp& f, const PolyFp& g, MonomialOrder order) {
  const LeadingTerm a = leading_term(f, order), b = leading_term(g, order);
  Exponents l(a.exps.size());
  for (std::size_t i = 0; i < l.size(); ++i) l[i] = std::max(a.exps[i], b.exps[i]);
  Exponents sa(l), sb(l);
  for (std::size_t i = 0; i < l.size(); ++i) {
    sa[i] -= a.exps[i];
    sb[i] -= b.exps[i];
  }
  const std::uint32_t p = f.prime();
  return f.shifted(sa).scaled(fp::inv(a.coef, p)) - g.shifted(sb).scaled(fp::inv(b.coef, p));
}

/// Reduced Gröbner basis, monic, sorted by descending leading monomial.
/// The zero ideal gives an empty basis; the unit ideal gives {1}.
inline std::vector<PolyFp> groebner_basis(const std::vector<PolyFp>& gens, MonomialOrder order) {
  std::vector<PolyFp> g;
  for (const PolyFp& f : gens)
    if (!f.is_zero()) g.push_back(make_monic(f, order));
  if (g.empty()) return g;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    const auto [i, j] = pairs.back();
    pairs.pop_back();
    const Exponents a = leading_term(g[i], order).exps;
    const Exponents b = leading_term(g[j], order).exps;
    bool coprime = true;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] && b[k]) {
        coprime = false;
        break;
      }
    if (coprime) continue;
    PolyFp r = normal_form(s_polynomial(g[i], g[j], order), g, order);
    if (r.is_zero()) continue;
    g.push_back(make_monic(r, order));
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
  }

  // Minimalise, then interreduce.
  std::vector<PolyFp> minimal;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Exponents lk = leading_term(g[k], order).exps;
    bool redundant = false;
    for (std::size_t m = 0; m < g.size() && !redundant; ++m) {
      if (m == k) continue;
      const Exponents lm = leading_term(g[m], order).exps;
      if (divides(lm, lk) && (lm != lk || m < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[k]);
  }
  std::vector<PolyFp> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<PolyFp> others;
    for (std::size_t m = 0; m < minimal.size(); ++m)
      if (m != k) others.push_back(minimal[m]);
    reduced.push_back(make_monic(normal_form(minimal[k], others, order), order));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const PolyFp& x, const PolyFp& y) {
    return compare_monomials(leading_term(x, order).exps, leading_term(y, order).exps, order) > 0;
  });
  return reduced;
}

/// An ideal of F_p[x_1..x_n] with its reduced grevlex Gröbner basis cached.
/// Membership is decided by normal-form reduction to zero.
class ChartIdeal {
 public:
  ChartIdeal() = default;
  ChartIdeal(std::uint32_t p, std::size_t nvars, std::vector<PolyFp> generators)
      : p_(p), nvars_(nvars), generators_(std::move(generators)) {
    for (const PolyFp& g : generators_)
      if (g.prime() != p_ || g.nvars() != nvars_) throw validation_error("ideal generator lives in another ring");
    basis_ = groebner_basis(generators_, MonomialOrder::grevlex);
  }

  static ChartIdeal zero(std::uint32_t p, std::size_t nvars) { return ChartIdeal(p, nvars, {}); }

  [[nodiscard]] std::uint32_t prime() const noexcept { return p_; }
  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] const std::vector<PolyFp>& generators() const noexcept { return generators_; }
  [[nodiscard]] const std::vector<PolyFp>& basis() const noexcept { return basis_; }

  [[nodiscard]] bool is_zero() const noexcept { return basis_.empty(); }
  [[nodiscard]] bool is_unit() const { return basis_.size() == 1 && basis_.front().is_constant(); }

  [[nodiscard]] PolyFp reduce(const PolyFp& f) const { return normal_form(f, basis_, MonomialOrder::grevlex); }
  [[nodiscard]] bool contains(const PolyFp& f) const { return reduce(f).is_zero(); }

  [[nodiscard]] bool contains(const ChartIdeal& o) const {
    return std::all_of(o.basis_.begin(), o.basis_.end(), [&](const PolyFp& f) { return contains(f); });
  }

  /// Whether every generator vanishes at `point`.
  [[nodiscard]] bool vanishes_at(std::span<const std::uint32_t> point) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const PolyFp& f) { return f.evaluate(point) == 0; });
  }

  friend bool operator==(const ChartIdeal& a, const ChartIdeal& b) {
    return a.p_ == b.p_ && a.nvars_ == b.nvars_ && a.basis_ == b.basis_;
  }

 private:
  std::uint32_t p_ = 2;
  std::size_t nvars_ = 0;
  std::vector<PolyFp> generators_;
  std::vector<PolyFp> basis_;
};

inline ChartIdeal ideal_sum(const ChartIdeal& a, const ChartIdeal& b) {
  std::vector<PolyFp> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return ChartIdeal(a.prime(), a.nvars(), std::move(gens));
}

/// I ∩ J = (t I + (1 - t) J) ∩ F_p[x], eliminating a fresh last variable t.
inline ChartIdeal ideal_intersection(const ChartIdeal& a, const ChartIdeal& b) {
  const std::uint32_t p = a.prime();
  const std::size_t n = a.nvars();
  if (a.is_zero() || b.is_zero()) return ChartIdeal::zero(p, n);
  const PolyFp t = PolyFp::variable(p, n + 1, n);
  const PolyFp one_minus_t = PolyFp::constant(p, n + 1, 1) - t;
  std::vector<PolyFp> gens;
  for (const PolyFp& f : a.basis()) gens.push_back(t * f.add_variables(1));
  for (const PolyFp& g : b.basis()) gens.push_back(one_minus_t * g.add_variables(1));
  std::vector<PolyFp> kept;
  for (const PolyFp& f : groebner_basis(gens, MonomialOrder::elim_last))
    if (f.degree_in(n) == 0) kept.push_back(f.drop_variable(n));
  return ChartIdeal(p, n, std::move(kept));
}

enum class Primality { prime, not_prime, unknown };

inline const char* to_string(Primality p) {
  switch (p) {
    case Primality::prime: return "prime";
    case Primality::not_prime: return "not_prime";
    case Primality::unknown: return "unknown";
  }
  return "unknown";
}

/// Exact primality certificate for the ideals met here. Basis elements of
/// the form c*x_k + r (c a nonzero constant, r free of x_k) are solved for
/// x_k and substituted away, which preserves R/I up to isomorphism. What
/// remains is decided when it is (0) (prime), the unit ideal, or contains a
/// monomial of degree >= 2 (a product of two non-members). Anything else is
/// reported as unknown.
inline Primality primality(const ChartIdeal& ideal) {
  const std::uint32_t p = ideal.prime();
  std::vector<PolyFp> basis = ideal.basis();
  while (true) {
    if (basis.empty()) return Primality::prime;
    if (basis.size() == 1 && basis.front().is_constant()) return Primality::not_prime;
    bool eliminated = false;
    for (std::size_t k = 0; k < basis.size() && !eliminated; ++k) {
      const PolyFp& f = basis[k];
      for (std::size_t var = 0; var < f.nvars() && !eliminated; ++var) {
        if (f.degree_in(var) != 1) continue;
        Exponents unit(f.nvars(), 0);
        unit[var] = 1;
        const std::uint32_t c = f.coefficient(unit);
        if (c == 0) continue;
        const PolyFp lin = PolyFp::monomial(p, unit, c);
        const PolyFp rest = f - lin;
        if (rest.degree_in(var) != 0) continue;
        // x_var = -rest / c
        const PolyFp value = (-rest).scaled(fp::inv(c, p));
        std::vector<PolyFp> next;
        for (std::size_t m = 0; m < basis.size(); ++m)
          if (m != k) next.push_back(basis[m].substitute(var, value));
        basis = groebner_basis(next, MonomialOrder::grevlex);
        eliminated = true;
      }
    }
    if (eliminated) continue;
    for (const PolyFp& f : basis)
      if (f.num_terms() == 1 && f.total_degree() >= 2) return Primality::not_prime;
    return Primality::unknown;
  }
}

}  // namespace flagsplit
