#include <gtest/gtest.h>

#include <map>

#include "flagsplit/flags.hpp"
#include "oracles.hpp"

using namespace flagsplit;

namespace {

WeylGroup type_a(std::size_t n) { return WeylGroup::generate(CartanType{Family::A, static_cast<int>(n - 1)}); }

}  // namespace

TEST(Decompose, IdentityAndPermutationMatrices) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const WeylGroup g = type_a(n);
    EXPECT_EQ(bruhat_decompose(g, FqMatrix::identity(n, 3)), g.identity());
    EXPECT_EQ(opposite_decompose(g, FqMatrix::identity(n, 3)), g.identity());
    for (Element w : g.elements()) {
      const FqMatrix m = FqMatrix::permutation(permutation_of(g, w), 5);
      EXPECT_EQ(bruhat_decompose(g, m), w);
      EXPECT_EQ(opposite_decompose(g, m), w);
    }
  }
}

TEST(Decompose, SingularMatrixIsRejected) {
  const std::vector<std::int64_t> rows{1, 2, 3, 2, 4, 6, 0, 0, 1};
  EXPECT_THROW(bruhat_permutation(FqMatrix(3, 7, rows)), validation_error);
  EXPECT_THROW(FqMatrix(3, 4), validation_error);
  EXPECT_THROW(FqMatrix(2, 3, rows), validation_error);
}

TEST(Decompose, MatchesRankFormulaOnEveryInvertibleMatrix) {
  for (std::uint32_t q : {2u, 3u}) {
    std::size_t checked = 0;
    for_each_invertible(3, q, [&](const FqMatrix& m) {
      EXPECT_EQ(bruhat_permutation(m), oracle::rank_formula_cell(m, false));
      EXPECT_EQ(opposite_permutation(m), oracle::rank_formula_cell(m, true));
      ++checked;
    });
    // |GL_3(F_q)| = (q^3 - 1)(q^3 - q)(q^3 - q^2)
    const std::size_t q3 = q * q * q;
    EXPECT_EQ(checked, (q3 - 1) * (q3 - q) * (q3 - q * q));
  }
}

TEST(Decompose, InvariantUnderBorelActions) {
  const WeylGroup g = type_a(3);
  const std::uint32_t q = 3;
  const FqMatrix upper(3, q, std::vector<std::int64_t>{2, 1, 2, 0, 1, 1, 0, 0, 2});
  const FqMatrix lower(3, q, std::vector<std::int64_t>{1, 0, 0, 2, 2, 0, 1, 1, 1});
  for_each_invertible(3, q, [&](const FqMatrix& m) {
    EXPECT_EQ(bruhat_decompose(g, upper * m * upper), bruhat_decompose(g, m));
    EXPECT_EQ(opposite_decompose(g, lower * m * upper), opposite_decompose(g, m));
  });
}

TEST(Decompose, CellSizesOverF2) {
  // Each double coset B w B in GL_3(F_2) holds |B| q^{l(w)} = 8 * 2^{l(w)} matrices,
  // i.e. q^{l(w)} flags per Schubert cell.
  const WeylGroup g = type_a(3);
  std::map<std::uint32_t, std::size_t> count;
  for_each_invertible(3, 2, [&](const FqMatrix& m) { ++count[bruhat_decompose(g, m).id]; });
  std::size_t total = 0;
  for (Element w : g.elements()) {
    EXPECT_EQ(count[w.id], 8u << g.length(w)) << g.name(w);
    total += count[w.id];
  }
  EXPECT_EQ(total, 168u);
}

TEST(Decompose, OppositeCellSizesMirror) {
  // B^- w B has |B^-| q^{l(w0) - l(w)} elements
  const WeylGroup g = type_a(3);
  std::map<std::uint32_t, std::size_t> count;
  for_each_invertible(3, 2, [&](const FqMatrix& m) { ++count[opposite_decompose(g, m).id]; });
  for (Element w : g.elements()) EXPECT_EQ(count[w.id], 8u << (3 - g.length(w))) << g.name(w);
}
