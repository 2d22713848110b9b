#pragma once

// Sparse multivariate polynomials over a small prime field F_p.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flagsplit/errors.hpp"

namespace flagsplit {

inline bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace fp {

inline std::uint32_t reduce(std::int64_t x, std::uint32_t p) {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}
inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + b) % p; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + p - b) % p; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
inline std::uint32_t pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul(r, a, p);
    a = mul(a, a, p);
    e >>= 1;
  }
  return r;
}
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw validation_error("division by zero in F_p");
  return pow(a, p - 2, p);
}

}  // namespace fp

using Exponents = std::vector<std::uint32_t>;

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline std::uint32_t total_degree(const Exponents& a) {
  std::uint32_t d = 0;
  for (auto x : a) d += x;
  return d;
}

class PolyFp {
 public:
  using Terms = std::map<Exponents, std::uint32_t>;

  PolyFp() = default;
  PolyFp(std::uint32_t p, std::size_t nvars) : p_(p), nvars_(nvars) {
    if (!is_prime(p)) throw validation_error(std::to_string(p) + " is not prime");
  }

  static PolyFp constant(std::uint32_t p, std::size_t nvars, std::int64_t c) {
    PolyFp f(p, nvars);
    f.add_term(Exponents(nvars, 0), fp::reduce(c, p));
    return f;
  }
  static PolyFp variable(std::uint32_t p, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw validation_error("variable index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(p, e, 1);
  }
  static PolyFp monomial(std::uint32_t p, Exponents e, std::int64_t c) {
    PolyFp f(p, e.size());
    f.add_term(std::move(e), fp::reduce(c, p));
    return f;
  }

  [[nodiscard]] std::uint32_t prime() const noexcept { return p_; }
  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] std::size_t num_terms() const noexcept { return terms_.size(); }

  [[nodiscard]] bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && flagsplit::total_degree(terms_.begin()->first) == 0);
  }
  [[nodiscard]] std::uint32_t constant_term() const { return coefficient(Exponents(nvars_, 0)); }

  [[nodiscard]] std::uint32_t coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  [[nodiscard]] std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, flagsplit::total_degree(e));
    return d;
  }
  [[nodiscard]] std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
    return d;
  }

  void add_term(Exponents e, std::uint32_t c) {
    if (e.size() != nvars_) throw validation_error("exponent vector has wrong length");
    c %= p_;
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(e), c);
    if (!inserted) {
      it->second = fp::add(it->second, c, p_);
      if (it->second == 0) terms_.erase(it);
    }
  }

  PolyFp& operator+=(const PolyFp& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  PolyFp& operator-=(const PolyFp& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, p_ - c);
    return *this;
  }
  friend PolyFp operator+(PolyFp a, const PolyFp& b) { return a += b; }
  friend PolyFp operator-(PolyFp a, const PolyFp& b) { return a -= b; }
  friend PolyFp operator-(const PolyFp& a) { return PolyFp(a.p_, a.nvars_) - a; }

  friend PolyFp operator*(const PolyFp& a, const PolyFp& b) {
    a.check_ring(b);
    PolyFp r(a.p_, a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), fp::mul(ca, cb, a.p_));
      }
    return r;
  }
  PolyFp& operator*=(const PolyFp& o) { return *this = *this * o; }

  [[nodiscard]] PolyFp scaled(std::uint32_t c) const {
    PolyFp r(p_, nvars_);
    for (const auto& [e, x] : terms_) r.add_term(e, fp::mul(x, c % p_, p_));
    return r;
  }

  /// Multiplies by the monomial x^e.
  [[nodiscard]] PolyFp shifted(const Exponents& e) const {
    PolyFp r(p_, nvars_);
    for (const auto& [a, c] : terms_) {
      Exponents s(a);
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += e[i];
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  [[nodiscard]] PolyFp pow(std::uint64_t k) const {
    PolyFp r = constant(p_, nvars_, 1);
    PolyFp base = *this;
    while (k) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  [[nodiscard]] std::uint32_t evaluate(std::span<const std::uint32_t> point) const {
    if (point.size() != nvars_) throw validation_error("point has wrong dimension");
    std::uint32_t acc = 0;
    for (const auto& [e, c] : terms_) {
      std::uint32_t t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (e[i]) t = fp::mul(t, fp::pow(point[i], e[i], p_), p_);
      acc = fp::add(acc, t, p_);
    }
    return acc;
  }

  /// Replaces x_var by `value` (a polynomial in the same ring).
  [[nodiscard]] PolyFp substitute(std::size_t var, const PolyFp& value) const {
    check_ring(value);
    PolyFp r(p_, nvars_);
    std::vector<PolyFp> powers{constant(p_, nvars_, 1)};
    for (const auto& [e, c] : terms_) {
      while (powers.size() <= e[var]) powers.push_back(powers.back() * value);
      Exponents rest(e);
      rest[var] = 0;
      r += powers[e[var]].shifted(rest).scaled(c);
    }
    return r;
  }

  /// Same polynomial in a ring with x_var removed. x_var must not occur.
  [[nodiscard]] PolyFp drop_variable(std::size_t var) const {
    if (var >= nvars_) throw validation_error("variable index out of range");
    PolyFp r(p_, nvars_ - 1);
    for (const auto& [e, c] : terms_) {
      if (e[var] != 0) throw validation_error("cannot drop a variable that occurs");
      Exponents s;
      for (std::size_t i = 0; i < nvars_; ++i)
        if (i != var) s.push_back(e[i]);
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  /// Same polynomial with `extra` fresh variables appended.
  [[nodiscard]] PolyFp add_variables(std::size_t extra) const {
    PolyFp r(p_, nvars_ + extra);
    for (const auto& [e, c] : terms_) {
      Exponents s(e);
      s.resize(nvars_ + extra, 0);
      r.terms_.emplace(std::move(s), c);
    }
    return r;
  }

  friend bool operator==(const PolyFp&, const PolyFp&) = default;

  void check_ring(const PolyFp& o) const {
    if (p_ != o.p_ || nvars_ != o.nvars_) throw validation_error("polynomials live in different rings");
  }

 private:
  std::uint32_t p_ = 2;
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Variable names for printing and parsing, e.g. {"x21", "x31", "x32"}.
using VariableNames = std::vector<std::string>;

inline VariableNames default_names(std::size_t n) {
  static const char* const xyz[] = {"x", "y", "z"};
  VariableNames out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(n <= 3 ? xyz[i] : "x" + std::to_string(i + 1));
  return out;
}

enum class MonomialOrder {
  grevlex,     ///< graded reverse lexicographic, x_1 > x_2 > ... > x_n
  elim_last,   ///< x_n-degree first, ties broken by grevlex on the rest
};

/// Three-way comparison of monomials under `order`; positive means a > b.
inline int compare_monomials(const Exponents& a, const Exponents& b, MonomialOrder order) {
  std::size_t n = a.size();
  if (order == MonomialOrder::elim_last && n > 0) {
    if (a[n - 1] != b[n - 1]) return a[n - 1] > b[n - 1] ? 1 : -1;
    --n;
  }
  std::uint32_t da = 0, db = 0;
  for (std::size_t i = 0; i < n; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  return 0;
}

/// Terms of f sorted descending under `order`.
inline std::vector<std::pair<Exponents, std::uint32_t>> sorted_terms(const PolyFp& f, MonomialOrder order) {
  std::vector<std::pair<Exponents, std::uint32_t>> ts(f.terms().begin(), f.terms().end());
  std::sort(ts.begin(), ts.end(),
            [&](const auto& x, const auto& y) { return compare_monomials(x.first, y.first, order) > 0; });
  return ts;
}

/// Grevlex-descending rendering, coefficients shown as symmetric residues.
inline std::string format_poly(const PolyFp& f, const VariableNames& names) {
  if (names.size() != f.nvars()) throw validation_error("variable name count does not match ring");
  if (f.is_zero()) return "0";
  const std::int64_t p = f.prime();
  std::string out;
  bool first = true;
  for (const auto& [e, c] : sorted_terms(f, MonomialOrder::grevlex)) {
    std::int64_t sc = c;
    if (p > 2 && sc > p / 2) sc -= p;
    const bool neg = sc < 0;
    const std::int64_t mag = neg ? -sc : sc;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) out += std::to_string(mag) + "*";
      out += mono;
    }
  }
  return out;
}

/// Parses sums of terms such as "2*x12^3*x31 - x21 + 1". No parentheses.
inline PolyFp parse_poly(std::string_view text, std::uint32_t p, const VariableNames& names) {
  const std::size_t n = names.size();
  PolyFp f(p, n);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> PolyFp {
    throw validation_error("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_number = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (std::uint64_t{1} << 40)) fail("number too large");
      ++pos;
    }
    if (pos == start) fail("expected a number");
    return v;
  };

  skip_ws();
  if (pos == text.size()) fail("empty input");
  int sign = 1;
  while (true) {
    skip_ws();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      ++pos;
      continue;
    }
    // term := factor ('*' factor)*
    std::uint32_t coef = 1;
    Exponents e(n, 0);
    while (true) {
      skip_ws();
      if (pos >= text.size()) fail("unexpected end of input");
      if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
        coef = fp::mul(coef, static_cast<std::uint32_t>(read_number() % p), p);
      } else if (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_') {
        const std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
        const std::string_view name = text.substr(start, pos - start);
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) fail("unknown variable '" + std::string(name) + "'");
        std::uint64_t k = 1;
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          skip_ws();
          k = read_number();
        }
        e[static_cast<std::size_t>(it - names.begin())] += static_cast<std::uint32_t>(k);
      } else {
        fail(std::string("unexpected character '") + text[pos] + "'");
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    f.add_term(e, sign > 0 ? coef : (p - coef) % p);
    sign = 1;
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '+' && text[pos] != '-') fail(std::string("unexpected character '") + text[pos] + "'");
  }
  skip_ws();
  if (pos != text.size()) fail("trailing input");
  return f;
}

}  // namespace flagsplit
