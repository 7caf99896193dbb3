#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "selfsim/fplinalg.hpp"

using namespace selfsim;

namespace {

FpMatrix ternary_alpha() {
  return FpMatrix::from_rows(3, {{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
}

oracle::Mat to_mat(const FpMatrix& m) {
  oracle::Mat out(m.size(), std::vector<long long>(m.size()));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) out[r][c] = m.at(r, c);
  return out;
}

FpMatrix random_invertible(int p, std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(0, p - 1);
  while (true) {
    FpMatrix m(p, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m.set(r, c, d(rng));
    if (rank_mod_p(m) == n) return m;
  }
}

std::vector<std::size_t> random_blocks(int p, std::size_t n, std::mt19937& rng) {
  std::vector<std::size_t> blocks;
  std::size_t left = n;
  while (left > 0) {
    std::uniform_int_distribution<std::size_t> d(1, std::min<std::size_t>(left, static_cast<std::size_t>(p)));
    blocks.push_back(d(rng));
    left -= blocks.back();
  }
  std::sort(blocks.rbegin(), blocks.rend());
  return blocks;
}

}  // namespace

TEST(MatApply, Identity) {
  const auto id = FpMatrix::identity(3, 4);
  const Vector v{2, 0, 1, 1};
  EXPECT_EQ(mat_apply(id, v), v);
}

TEST(MatApply, TernaryAlphaSendsCToBC) {
  EXPECT_EQ(mat_apply(ternary_alpha(), Vector{0, 1, 0, 0}), (Vector{1, 1, 0, 0}));
}

TEST(MatApply, Zero) { EXPECT_EQ(mat_apply(FpMatrix(5, 3), Vector{1, 2, 3}), (Vector{0, 0, 0})); }

TEST(MatApply, MixedModuli) {
  // Inversion on C_4 x C_2.
  auto m = FpMatrix::from_rows(2, {{3, 0}, {0, 1}}, {4, 2});
  EXPECT_EQ(mat_apply(m, Vector{1, 1}), (Vector{3, 1}));
}

TEST(MatOrder, Examples) {
  EXPECT_EQ(mat_order(FpMatrix::identity(7, 3)), 1u);
  EXPECT_EQ(mat_order(ternary_alpha()), 3u);
  EXPECT_EQ(mat_order(FpMatrix::from_rows(2, {{1, 1}, {0, 1}})), 2u);
}

TEST(MatOrder, SingularThrows) {
  EXPECT_THROW(mat_order(FpMatrix::from_rows(3, {{1, 1}, {1, 1}})), std::invalid_argument);
}

TEST(MatOrder, AgreesWithPowering) {
  std::mt19937 rng(17);
  for (int p : {2, 3, 5}) {
    for (int trial = 0; trial < 40; ++trial) {
      const auto m = random_invertible(p, 3, rng);
      EXPECT_EQ(mat_order(m), oracle::mat_order(to_mat(m), p)) << m.to_literal();
    }
  }
}

TEST(Literal, RoundTrip) {
  const auto m = ternary_alpha();
  EXPECT_EQ(m.to_literal(), "1,1,0,0; 0,1,0,0; 0,0,1,0; 0,0,0,1");
  EXPECT_EQ(FpMatrix::from_rows(3, parse_matrix_literal(m.to_literal())), m);
}

TEST(Literal, Malformed) {
  EXPECT_ANY_THROW(parse_matrix_literal("1,2; 3"));
  EXPECT_ANY_THROW(parse_matrix_literal("1,x"));
}

TEST(FixedSpace, Examples) {
  EXPECT_EQ(fixed_space(FpMatrix::identity(3, 4)).size(), 4u);
  const auto fs = fixed_space(ternary_alpha());
  ASSERT_EQ(fs.size(), 3u);
  // Spanned by b, d, e.
  EchelonBasis span(3, 4);
  for (const auto& v : fs) span.insert(v);
  EXPECT_TRUE(span.contains(Vector{1, 0, 0, 0}));
  EXPECT_TRUE(span.contains(Vector{0, 0, 1, 0}));
  EXPECT_TRUE(span.contains(Vector{0, 0, 0, 1}));
  EXPECT_FALSE(span.contains(Vector{0, 1, 0, 0}));
  EXPECT_EQ(fixed_space(FpMatrix::from_rows(2, {{1, 1}, {0, 1}})), (std::vector<Vector>{{1, 0}}));
}

TEST(Inverse, ProductIsIdentity) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto m = random_invertible(5, 4, rng);
    EXPECT_TRUE((m * inverse(m)).is_identity());
    EXPECT_TRUE((inverse(m) * m).is_identity());
  }
}

TEST(UnipotentJordan, Examples) {
  EXPECT_EQ(unipotent_jordan(FpMatrix::identity(5, 3)).block_sizes, (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(unipotent_jordan(ternary_alpha()).block_sizes, (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(unipotent_jordan(FpMatrix::from_rows(2, {{1, 1}, {0, 1}})).block_sizes, (std::vector<std::size_t>{2}));
}

TEST(UnipotentJordan, RejectsOrderNotDividingP) {
  EXPECT_THROW(unipotent_jordan(FpMatrix::from_rows(3, {{2, 0}, {0, 1}})), std::invalid_argument);
}

TEST(UnipotentJordan, RandomConjugatesRecoverBlocks) {
  std::mt19937 rng(2024);
  for (int p : {2, 3, 5}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 1 + trial % 5;
      const auto blocks = random_blocks(p, n, rng);
      const auto q = random_invertible(p, n, rng);
      const auto m = inverse(q) * unipotent_jordan_matrix(p, blocks) * q;
      const auto jd = unipotent_jordan(m);
      EXPECT_EQ(jd.block_sizes, blocks);

      const auto j = unipotent_jordan_matrix(p, jd.block_sizes);
      EXPECT_EQ(jd.change_of_basis * m * inverse(jd.change_of_basis), j);

      // N b_{i,1} = 0 and N b_{i,j} = b_{i,j-1}.
      const auto nm = m - FpMatrix::identity(p, n);
      for (std::size_t i = 0; i < jd.block_count(); ++i)
        for (std::size_t k = 0; k < jd.block_sizes[i]; ++k) {
          const auto image = nm.apply(jd.vector_at(i, k));
          if (k == 0)
            EXPECT_TRUE(std::all_of(image.begin(), image.end(), [](Residue x) { return x == 0; }));
          else
            EXPECT_EQ(image, jd.vector_at(i, k - 1));
        }
    }
  }
}

TEST(NullSpace, DimensionIsNullity) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    FpMatrix m(3, 4);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) m.set(r, c, d(rng) == 0 ? d(rng) : 0);
    const auto ns = null_space(m);
    EXPECT_EQ(ns.size() + rank_mod_p(m), 4u);
    for (const auto& v : ns) {
      const auto image = m.apply(v);
      EXPECT_TRUE(std::all_of(image.begin(), image.end(), [](Residue x) { return x == 0; }));
    }
  }
}
