#pragma once

// Bruhat decomposition of invertible matrices over a prime field F_q.
//
// B is the upper-triangular Borel, B^- the lower one. The permutation matrix
// of w has its 1 in row w(k) of column k. g ∈ B w B is found by column-wise
// elimination with the bottom-most available pivot (row operations that add
// a multiple of a lower row to a higher row are left multiplication by B);
// g ∈ B^- w B uses the top-most pivot instead.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "flagsplit/coxeter.hpp"
#include "flagsplit/errors.hpp"
#include "flagsplit/poly.hpp"

namespace flagsplit {

class FqMatrix {
 public:
  FqMatrix(std::size_t n, std::uint32_t q) : n_(n), q_(q), a_(n * n, 0) {
    if (!is_prime(q)) throw validation_error("matrix field size must be prime");
  }
  FqMatrix(std::size_t n, std::uint32_t q, std::span<const std::int64_t> rows) : FqMatrix(n, q) {
    if (rows.size() != n * n) throw validation_error("matrix needs n*n entries");
    for (std::size_t k = 0; k < rows.size(); ++k) a_[k] = fp::reduce(rows[k], q);
  }

  static FqMatrix identity(std::size_t n, std::uint32_t q) {
    FqMatrix m(n, q);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Permutation matrix with 1 at (perm[k]-1, k).
  static FqMatrix permutation(const std::vector<int>& perm, std::uint32_t q) {
    FqMatrix m(perm.size(), q);
    for (std::size_t k = 0; k < perm.size(); ++k) m(static_cast<std::size_t>(perm[k] - 1), k) = 1;
    return m;
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t field() const noexcept { return q_; }
  std::uint32_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  [[nodiscard]] std::uint32_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  friend FqMatrix operator*(const FqMatrix& x, const FqMatrix& y) {
    FqMatrix r(x.n_, x.q_);
    for (std::size_t i = 0; i < x.n_; ++i)
      for (std::size_t k = 0; k < x.n_; ++k)
        for (std::size_t j = 0; j < x.n_; ++j)
          r(i, j) = fp::add(r(i, j), fp::mul(x(i, k), y(k, j), x.q_), x.q_);
    return r;
  }

  friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

 private:
  std::size_t n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> a_;
};

namespace detail {

inline std::vector<int> decompose(FqMatrix m, bool bottom_up) {
  const std::size_t n = m.size();
  const std::uint32_t q = m.field();
  std::vector<bool> used(n, false);
  std::vector<int> perm(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t pivot = n;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = bottom_up ? n - 1 - k : k;
      if (!used[i] && m(i, j) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) throw validation_error("matrix is singular");
    used[pivot] = true;
    perm[j] = static_cast<int>(pivot) + 1;
    const std::uint32_t inv = fp::inv(m(pivot, j), q);
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r] || m(r, j) == 0) continue;
      // Only rows on the Borel side of the pivot are touched.
      if (bottom_up ? r > pivot : r < pivot) continue;
      const std::uint32_t c = fp::mul(m(r, j), inv, q);
      for (std::size_t col = j; col < n; ++col) m(r, col) = fp::sub(m(r, col), fp::mul(c, m(pivot, col), q), q);
    }
  }
  return perm;
}

}  // namespace detail

/// Permutation w (one-line, 1-based) with g ∈ B w B.
inline std::vector<int> bruhat_permutation(const FqMatrix& g) { return detail::decompose(g, true); }

/// Permutation w with g ∈ B^- w B.
inline std::vector<int> opposite_permutation(const FqMatrix& g) { return detail::decompose(g, false); }

inline Element bruhat_decompose(const WeylGroup& w, const FqMatrix& g) {
  return element_of_permutation(w, bruhat_permutation(g));
}

inline Element opposite_decompose(const WeylGroup& w, const FqMatrix& g) {
  return element_of_permutation(w, opposite_permutation(g));
}

/// Calls fn(m) for every invertible n x n matrix over F_q.
template <class Fn>
void for_each_invertible(std::size_t n, std::uint32_t q, Fn&& fn) {
  const std::size_t cells = n * n;
  std::vector<std::int64_t> entries(cells, 0);
  while (true) {
    FqMatrix m(n, q, entries);
    bool invertible = true;
    try {
      (void)bruhat_permutation(m);
    } catch (const validation_error&) {
      invertible = false;
    }
    if (invertible) fn(m);
    std::size_t k = 0;
    while (k < cells && ++entries[k] == static_cast<std::int64_t>(q)) entries[k++] = 0;
    if (k == cells) break;
  }
}

}  // namespace flagsplit
