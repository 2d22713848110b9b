#pragma once

// Finite Weyl groups generated from a Cartan type.
//
// Elements are the integer matrices of the reflection representation on the
// root lattice (basis = simple roots). Generation is breadth-first from the
// identity by right multiplication with simple reflections, so an element's
// id is its first-seen BFS position and its BFS depth is its length.
//
// Simple reflections are labelled 1..rank in Bourbaki order at every public
// surface (reduced words, simple(), right_mul_simple(), ...).

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flagsplit/bits.hpp"
#include "flagsplit/errors.hpp"

namespace flagsplit {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

struct CartanType {
  Family family = Family::A;
  int rank = 1;

  friend bool operator==(const CartanType&, const CartanType&) = default;
};

inline std::string to_string(const CartanType& t) {
  return std::string(1, static_cast<char>(t.family)) + std::to_string(t.rank);
}

inline void validate(const CartanType& t) {
  const int r = t.rank;
  bool ok = false;
  switch (t.family) {
    case Family::A: ok = r >= 1; break;
    case Family::B:
    case Family::C: ok = r >= 2; break;
    case Family::D: ok = r >= 3; break;
    case Family::E: ok = r >= 6 && r <= 8; break;
    case Family::F: ok = r == 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok) throw validation_error("invalid rank for Cartan type " + to_string(t));
}

/// Parses "A3", "b2", "G2". Family letter is case-insensitive.
inline CartanType parse_cartan_type(std::string_view text) {
  if (text.size() < 2) throw validation_error("malformed Cartan type '" + std::string(text) + "'");
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (std::string_view("ABCDEFG").find(f) == std::string_view::npos)
    throw validation_error("unknown Cartan family '" + std::string(1, text[0]) + "'");
  int rank = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw validation_error("malformed Cartan rank in '" + std::string(text) + "'");
    rank = rank * 10 + (c - '0');
    if (rank > 1000) throw validation_error("Cartan rank too large in '" + std::string(text) + "'");
  }
  CartanType t{static_cast<Family>(f), rank};
  validate(t);
  return t;
}

/// Cartan matrix entries <alpha_i^vee, alpha_j>, Bourbaki numbering.
inline std::vector<std::vector<int>> cartan_matrix(const CartanType& t) {
  validate(t);
  const int n = t.rank;
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j, int cij = -1, int cji = -1) {
    c[i - 1][j - 1] = cij;
    c[j - 1][i - 1] = cji;
  };
  switch (t.family) {
    case Family::A:
      for (int i = 1; i < n; ++i) link(i, i + 1);
      break;
    case Family::B:
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 1, n, -1, -2);
      break;
    case Family::C:
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 1, n, -2, -1);
      break;
    case Family::D:
      for (int i = 1; i < n - 1; ++i) link(i, i + 1);
      link(n - 2, n);
      break;
    case Family::E:
      link(1, 3);
      link(2, 4);
      for (int i = 3; i < n; ++i) link(i, i + 1);
      break;
    case Family::F:
      link(1, 2);
      link(2, 3, -2, -1);
      link(3, 4);
      break;
    case Family::G:
      link(1, 2, -1, -3);
      break;
  }
  return c;
}

/// Classical order formula per family.
inline std::uint64_t classical_order(const CartanType& t) {
  validate(t);
  auto factorial = [](int k) {
    std::uint64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
  };
  const int n = t.rank;
  switch (t.family) {
    case Family::A: return factorial(n + 1);
    case Family::B:
    case Family::C: return (std::uint64_t{1} << n) * factorial(n);
    case Family::D: return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case Family::E: return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case Family::F: return 1152;
    case Family::G: return 12;
  }
  return 0;
}

struct Element {
  std::uint32_t id = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

using Word = std::vector<int>;

/// "121" style rendering; the identity renders as "e".
inline std::string format_word(const Word& word) {
  if (word.empty()) return "e";
  std::string s;
  bool wide = std::any_of(word.begin(), word.end(), [](int i) { return i > 9; });
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (wide && k) s += ',';
    s += std::to_string(word[k]);
  }
  return s;
}

/// Accepts "e", "", "121" (one digit per letter) or "1,2,1".
inline Word parse_word(std::string_view text) {
  Word w;
  if (text.empty() || text == "e") return w;
  const bool commas = text.find(',') != std::string_view::npos;
  int cur = -1;
  for (char c : text) {
    if (c == ',' && commas) {
      if (cur < 0) throw validation_error("malformed word '" + std::string(text) + "'");
      w.push_back(cur);
      cur = -1;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (commas) {
        cur = (cur < 0 ? 0 : cur * 10) + (c - '0');
      } else {
        w.push_back(c - '0');
      }
    } else {
      throw validation_error("malformed word '" + std::string(text) + "'");
    }
  }
  if (commas) {
    if (cur < 0) throw validation_error("malformed word '" + std::string(text) + "'");
    w.push_back(cur);
  }
  return w;
}

struct GenerateOptions {
  std::size_t max_order = 1'000'000;
};

/// A fully generated finite Weyl group. Immutable once built; safe to share
/// between concurrent readers.
class WeylGroup {
 public:
  static WeylGroup generate(const CartanType& type, const GenerateOptions& opts = {}) {
    WeylGroup g;
    g.build(type, opts);
    return g;
  }

  [[nodiscard]] const CartanType& cartan() const noexcept { return type_; }
  [[nodiscard]] int rank() const noexcept { return type_.rank; }
  [[nodiscard]] std::size_t size() const noexcept { return length_.size(); }

  [[nodiscard]] Element identity() const noexcept { return Element{0}; }
  [[nodiscard]] Element longest() const noexcept { return w0_; }
  [[nodiscard]] std::size_t num_positive_roots() const noexcept { return reflections_.size(); }

  [[nodiscard]] Element element(std::size_t id) const {
    if (id >= size()) throw validation_error("element id " + std::to_string(id) + " out of range");
    return Element{static_cast<std::uint32_t>(id)};
  }

  void check(Element w) const {
    if (w.id >= size())
      throw validation_error("element id " + std::to_string(w.id) + " does not belong to " +
                             to_string(type_));
  }

  [[nodiscard]] int length(Element w) const {
    check(w);
    return length_[w.id];
  }

  [[nodiscard]] Element simple(int i) const {
    check_generator(i);
    return Element{right_[i - 1]};
  }

  [[nodiscard]] Element right_mul_simple(Element w, int i) const {
    check(w);
    check_generator(i);
    return Element{right_[w.id * rank_u() + (i - 1)]};
  }

  [[nodiscard]] Element left_mul_simple(int i, Element w) const {
    check(w);
    check_generator(i);
    return Element{left_[w.id * rank_u() + (i - 1)]};
  }

  [[nodiscard]] Element multiply(Element u, Element v) const {
    check(u);
    check(v);
    std::vector<int> letters;
    for (std::uint32_t x = v.id; x != 0; x = parent_[x]) letters.push_back(parent_gen_[x]);
    std::uint32_t cur = u.id;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) cur = right_[cur * rank_u() + *it];
    return Element{cur};
  }

  [[nodiscard]] Element inverse(Element w) const {
    check(w);
    return Element{inverse_[w.id]};
  }

  /// Lexicographically least reduced word: the least left descent is peeled
  /// off at each step.
  [[nodiscard]] Word reduced_word(Element w) const {
    check(w);
    Word word;
    std::uint32_t cur = w.id;
    while (cur != 0) {
      for (std::size_t i = 0; i < rank_u(); ++i) {
        const std::uint32_t next = left_[cur * rank_u() + i];
        if (length_[next] < length_[cur]) {
          word.push_back(static_cast<int>(i) + 1);
          cur = next;
          break;
        }
      }
    }
    return word;
  }

  /// Product s_{i1} s_{i2} ... of an arbitrary (not necessarily reduced) word.
  [[nodiscard]] Element from_word(const Word& word) const {
    std::uint32_t cur = 0;
    for (int i : word) {
      check_generator(i);
      cur = right_[cur * rank_u() + (i - 1)];
    }
    return Element{cur};
  }

  [[nodiscard]] Element parse_element(std::string_view text) const { return from_word(parse_word(text)); }
  [[nodiscard]] std::string name(Element w) const { return format_word(reduced_word(w)); }

  [[nodiscard]] bool bruhat_leq(Element v, Element w) const {
    check(v);
    check(w);
    return below_[w.id].test(v.id);
  }

  /// Elements x with w covered by x.
  [[nodiscard]] const std::vector<Element>& covers(Element w) const {
    check(w);
    return covers_[w.id];
  }

  /// Elements x covered by w.
  [[nodiscard]] const std::vector<Element>& cocovers(Element w) const {
    check(w);
    return cocovers_[w.id];
  }

  /// Lower Bruhat interval {x : x <= w} as a bitset over ids.
  [[nodiscard]] const Bitset& below(Element w) const {
    check(w);
    return below_[w.id];
  }

  /// Upper Bruhat interval {x : v <= x}.
  [[nodiscard]] const Bitset& above(Element v) const {
    check(v);
    return above_[v.id];
  }

  [[nodiscard]] const std::vector<Element>& reflections() const noexcept { return reflections_; }

  [[nodiscard]] bool is_reflection(Element w) const {
    check(w);
    return std::binary_search(reflections_.begin(), reflections_.end(), w);
  }

  /// Row-major rank x rank matrix of w acting on the simple-root basis.
  [[nodiscard]] const std::vector<int>& matrix(Element w) const {
    check(w);
    return matrices_[w.id];
  }

  [[nodiscard]] std::vector<std::pair<Element, Element>> cover_pairs() const {
    std::vector<std::pair<Element, Element>> out;
    for (std::uint32_t v = 0; v < size(); ++v)
      for (Element w : covers_[v]) out.emplace_back(Element{v}, w);
    return out;
  }

  [[nodiscard]] std::vector<Element> elements() const {
    std::vector<Element> out(size());
    for (std::uint32_t i = 0; i < size(); ++i) out[i] = Element{i};
    return out;
  }

 private:
  struct MatrixHash {
    std::size_t operator()(const std::vector<int>& m) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (int x : m) h = (h ^ static_cast<std::size_t>(x + 0x9e3779b9)) * 1099511628211ull;
      return h;
    }
  };

  [[nodiscard]] std::size_t rank_u() const noexcept { return static_cast<std::size_t>(type_.rank); }

  void check_generator(int i) const {
    if (i < 1 || i > type_.rank)
      throw validation_error("simple reflection index " + std::to_string(i) + " out of range for " +
                             to_string(type_));
  }

  static std::vector<int> matmul(const std::vector<int>& a, const std::vector<int>& b, std::size_t n) {
    std::vector<int> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const int aik = a[i * n + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
      }
    return c;
  }

  void build(const CartanType& type, const GenerateOptions& opts) {
    validate(type);
    if (classical_order(type) > opts.max_order)
      throw resource_error("group order of " + to_string(type) + " (" + std::to_string(classical_order(type)) +
                           ") exceeds cap " + std::to_string(opts.max_order));
    type_ = type;
    const std::size_t n = rank_u();
    const auto cm = cartan_matrix(type);

    // s_i(alpha_j) = alpha_j - <alpha_i^vee, alpha_j> alpha_i; column j holds the image of alpha_j.
    std::vector<std::vector<int>> gens(n, std::vector<int>(n * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        gens[i][j * n + j] = 1;
        gens[i][i * n + j] -= cm[i][j];
      }
    }

    std::unordered_map<std::vector<int>, std::uint32_t, MatrixHash> index;
    std::vector<int> ident(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) ident[i * n + i] = 1;
    index.emplace(ident, 0);
    matrices_.push_back(ident);
    length_.push_back(0);
    parent_.push_back(0);
    parent_gen_.push_back(-1);

    for (std::size_t head = 0; head < matrices_.size(); ++head) {
      for (std::size_t i = 0; i < n; ++i) {
        auto m = matmul(matrices_[head], gens[i], n);
        auto [it, inserted] = index.emplace(std::move(m), static_cast<std::uint32_t>(matrices_.size()));
        if (inserted) {
          if (matrices_.size() >= opts.max_order)
            throw resource_error("group order cap " + std::to_string(opts.max_order) + " exceeded");
          matrices_.push_back(it->first);
          length_.push_back(length_[head] + 1);
          parent_.push_back(static_cast<std::uint32_t>(head));
          parent_gen_.push_back(static_cast<int>(i));
        }
        right_.push_back(it->second);
      }
    }
    const std::size_t order = matrices_.size();
    if (order != classical_order(type))
      throw theorem_violation("generated order " + std::to_string(order) + " disagrees with classical order");

    left_.assign(order * n, 0);
    for (std::size_t w = 0; w < order; ++w)
      for (std::size_t i = 0; i < n; ++i) left_[w * n + i] = index.at(matmul(gens[i], matrices_[w], n));

    inverse_.assign(order, 0);
    for (std::size_t w = 1; w < order; ++w)
      inverse_[w] = left_[inverse_[parent_[w]] * n + static_cast<std::size_t>(parent_gen_[w])];

    w0_ = Element{static_cast<std::uint32_t>(std::max_element(length_.begin(), length_.end()) - length_.begin())};

    std::vector<bool> is_refl(order, false);
    for (std::uint32_t w = 0; w < order; ++w)
      for (std::size_t i = 0; i < n; ++i) {
        const Element t = multiply(Element{right_[w * n + i]}, Element{inverse_[w]});
        is_refl[t.id] = true;
      }
    for (std::uint32_t w = 0; w < order; ++w)
      if (is_refl[w]) reflections_.push_back(Element{w});

    covers_.assign(order, {});
    cocovers_.assign(order, {});
    for (std::uint32_t w = 0; w < order; ++w) {
      for (Element t : reflections_) {
        const Element x = multiply(Element{w}, t);
        if (length_[x.id] == length_[w] + 1) {
          covers_[w].push_back(x);
          cocovers_[x.id].push_back(Element{w});
        }
      }
    }
    for (auto& c : covers_) std::sort(c.begin(), c.end());
    for (auto& c : cocovers_) std::sort(c.begin(), c.end());

    // BFS ids are sorted by length, so cocovers precede and covers follow.
    below_.assign(order, Bitset(order));
    for (std::uint32_t w = 0; w < order; ++w) {
      below_[w].set(w);
      for (Element c : cocovers_[w]) below_[w] |= below_[c.id];
    }
    above_.assign(order, Bitset(order));
    for (std::uint32_t v = static_cast<std::uint32_t>(order); v-- > 0;) {
      above_[v].set(v);
      for (Element c : covers_[v]) above_[v] |= above_[c.id];
    }
  }

  CartanType type_{};
  std::vector<std::vector<int>> matrices_;
  std::vector<int> length_;
  std::vector<std::uint32_t> parent_;
  std::vector<int> parent_gen_;
  std::vector<std::uint32_t> right_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> inverse_;
  Element w0_{};
  std::vector<Element> reflections_;
  std::vector<std::vector<Element>> covers_;
  std::vector<std::vector<Element>> cocovers_;
  std::vector<Bitset> below_;
  std::vector<Bitset> above_;
};

/// One-line notation (1-based images) of w in type A, via s_i = (i i+1).
inline std::vector<int> permutation_of(const WeylGroup& g, Element w) {
  if (g.cartan().family != Family::A) throw validation_error("permutation_of requires type A");
  const int n = g.rank() + 1;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  // w = s_{i1} ... s_{ik} acting on positions: apply right-most letter first.
  const Word word = g.reduced_word(w);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int i = *it;
    for (int& x : perm) {
      if (x == i) x = i + 1;
      else if (x == i + 1) x = i;
    }
  }
  return perm;
}

/// Inverse of permutation_of.
inline Element element_of_permutation(const WeylGroup& g, const std::vector<int>& perm) {
  if (g.cartan().family != Family::A) throw validation_error("element_of_permutation requires type A");
  if (static_cast<int>(perm.size()) != g.rank() + 1) throw validation_error("permutation has wrong size");
  // Bubble sort perm to the identity; each adjacent swap of values is a left factor.
  std::vector<int> p = perm;
  Word letters;  // w = s_{a1} s_{a2} ... read from the swaps
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
      if (p[k] > p[k + 1]) {
        // swapping positions k, k+1 is right multiplication by s_{k+1}
        std::swap(p[k], p[k + 1]);
        letters.push_back(static_cast<int>(k) + 1);
        swapped = true;
      }
    }
  }
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] != static_cast<int>(k) + 1) throw validation_error("not a permutation");
  // perm * s_{l1} * ... * s_{lm} = id  =>  perm = s_{lm} ... s_{l1}
  std::reverse(letters.begin(), letters.end());
  return g.from_word(letters);
}

inline void write_hasse_dot(const WeylGroup& g, std::ostream& os) {
  os << "digraph bruhat_" << to_string(g.cartan()) << " {\n  rankdir=BT;\n";
  for (Element w : g.elements())
    os << "  n" << w.id << " [label=\"" << g.name(w) << "\"];\n";
  for (auto [v, w] : g.cover_pairs()) os << "  n" << v.id << " -> n" << w.id << ";\n";
  os << "}\n";
}

}  // namespace flagsplit
