#pragma once

// Frobenius splittings of affine space over F_p, written as polynomials.
//
// F_* F_p[x] is free over F_p[x] (acting through p-th powers) on the
// monomials x^b, b in [0, p-1]^n. The trace map is the projection onto the
// x^{(p-1,...,p-1)} coordinate. A section f defines the map h -> trace(f h),
// which is a splitting iff trace(f) = 1 (by F_*-linearity applied to g^p).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flagsplit/errors.hpp"
#include "flagsplit/groebner.hpp"
#include "flagsplit/poly.hpp"

namespace flagsplit {

/// Σ c_a x^a  ->  Σ_{a ≡ p-1 (mod p) componentwise} c_a x^{(a - (p-1)) / p}
inline PolyFp trace(const PolyFp& f) {
  const std::uint32_t p = f.prime();
  PolyFp out(p, f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Exponents q(e.size());
    bool hit = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] % p != p - 1) {
        hit = false;
        break;
      }
      q[i] = (e[i] - (p - 1)) / p;
    }
    if (hit) out.add_term(std::move(q), c);
  }
  return out;
}

inline bool is_splitting(const PolyFp& f) {
  const PolyFp t = trace(f);
  return t.is_constant() && t.constant_term() == 1;
}

/// A polynomial section known to satisfy is_splitting.
class SplittingSection {
 public:
  explicit SplittingSection(PolyFp f) : f_(std::move(f)) {
    if (!is_splitting(f_)) throw contract_violation("section is not a Frobenius splitting");
  }
  [[nodiscard]] const PolyFp& poly() const noexcept { return f_; }

 private:
  PolyFp f_;
};

struct CompatibilityWitness {
  std::size_t generator = 0;  ///< index into the ideal's basis
  Exponents shift;            ///< the x^b factor, b in [0, p-1]^n
  PolyFp image;               ///< trace(f * x^b * g), not in the ideal
};

struct CompatibilityResult {
  bool split = false;
  std::optional<CompatibilityWitness> witness;
};

/// Tests trace(f * x^b * g) ∈ I for every basis element g of I and every
/// b in [0, p-1]^n. These elements generate F_* I over F_p[x], so by
/// F_*-linearity the test is complete.
inline CompatibilityResult check_compatibility(const PolyFp& f, const ChartIdeal& ideal) {
  if (!is_splitting(f)) throw contract_violation("compatibility requires a splitting section");
  f.check_ring(PolyFp(ideal.prime(), ideal.nvars()));
  const std::uint32_t p = f.prime();
  const std::size_t n = f.nvars();
  const auto& gens = ideal.basis();
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const PolyFp fg = f * gens[k];
    Exponents b(n, 0);
    while (true) {
      PolyFp image = trace(fg.shifted(b));
      if (!ideal.contains(image)) return {false, CompatibilityWitness{k, b, std::move(image)}};
      std::size_t i = 0;
      while (i < n && ++b[i] == p) b[i++] = 0;
      if (i == n) break;
    }
  }
  return {true, std::nullopt};
}

inline bool compatibly_split(const SplittingSection& s, const ChartIdeal& ideal) {
  return check_compatibility(s.poly(), ideal).split;
}

/// Multivariate division by one polynomial; returns the quotient when the
/// remainder is zero.
inline std::optional<PolyFp> exact_divide(const PolyFp& f, const PolyFp& h) {
  f.check_ring(h);
  if (h.is_zero()) throw validation_error("division by the zero polynomial");
  const std::uint32_t p = f.prime();
  const LeadingTerm lh = leading_term(h, MonomialOrder::grevlex);
  const std::uint32_t inv = fp::inv(lh.coef, p);
  PolyFp rest = f;
  PolyFp q(p, f.nvars());
  while (!rest.is_zero()) {
    const LeadingTerm lt = leading_term(rest, MonomialOrder::grevlex);
    if (!divides(lh.exps, lt.exps)) return std::nullopt;
    Exponents shift(lt.exps);
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] -= lh.exps[i];
    const std::uint32_t c = fp::mul(lt.coef, inv, p);
    PolyFp step = PolyFp::monomial(p, shift, c);
    rest -= h.shifted(shift).scaled(c);
    q += step;
  }
  return q;
}

/// Largest k with h^k dividing f. f must be nonzero and h nonconstant.
inline std::uint32_t multiplicity(const PolyFp& f, const PolyFp& h) {
  if (f.is_zero()) throw validation_error("multiplicity in the zero polynomial is unbounded");
  if (h.is_constant()) throw validation_error("multiplicity of a constant is unbounded");
  std::uint32_t k = 0;
  PolyFp cur = f;
  while (auto q = exact_divide(cur, h)) {
    cur = std::move(*q);
    ++k;
  }
  return k;
}

/// Some g with g^{p-1} = f, or nothing. Term-by-term root extraction under
/// grevlex: the head of g is the (p-1)-th root of the head of f, and each
/// further term t is read off the head of the residual f - g^{p-1}, which
/// equals (p-1) * head(g)^{p-2} * t. Since p-1 is a unit mod p this is
/// exact; the answer is unique up to a scalar μ with μ^{p-1} = 1.
inline std::optional<PolyFp> is_pth_minus_one_power(const PolyFp& f) {
  const std::uint32_t p = f.prime();
  const std::uint32_t k = p - 1;
  if (f.is_zero() || k == 1) return f;
  const LeadingTerm lf = leading_term(f, MonomialOrder::grevlex);
  // c^{p-1} = 1 for every c in F_p^*, so the head coefficient must be 1.
  if (lf.coef != 1) return std::nullopt;
  Exponents head(lf.exps.size());
  for (std::size_t i = 0; i < head.size(); ++i) {
    if (lf.exps[i] % k) return std::nullopt;
    head[i] = lf.exps[i] / k;
  }
  PolyFp g = PolyFp::monomial(p, head, 1);
  // (p-1) * head^{p-2}
  Exponents denom_exps(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) denom_exps[i] = head[i] * (k - 1);
  const std::uint32_t denom_inv = fp::inv(k % p, p);
  // Each step adds a strictly smaller monomial of degree <= deg(head); there
  // are C(d + n, n) of those.
  const std::uint64_t d = total_degree(head);
  std::uint64_t max_steps = 1;
  for (std::uint64_t i = 1; i <= head.size(); ++i) max_steps = max_steps * (d + i) / i;
  for (std::uint64_t step = 0; step <= max_steps; ++step) {
    const PolyFp residual = f - g.pow(k);
    if (residual.is_zero()) return g;
    const LeadingTerm lr = leading_term(residual, MonomialOrder::grevlex);
    if (!divides(denom_exps, lr.exps)) return std::nullopt;
    Exponents t(lr.exps);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] -= denom_exps[i];
    if (compare_monomials(t, head, MonomialOrder::grevlex) >= 0) return std::nullopt;
    g += PolyFp::monomial(p, t, fp::mul(lr.coef, denom_inv, p));
  }
  return std::nullopt;
}

}  // namespace flagsplit
