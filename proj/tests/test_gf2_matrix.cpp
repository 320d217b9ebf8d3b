#include <gtest/gtest.h>

#include <random>

#include "margulis/gf2_matrix.hpp"
#include "oracles.hpp"

using namespace margulis;

TEST(BinVectorTest, BasicOps) {
    auto v = BinVector::from_string("1011000");
    EXPECT_EQ(v.size(), 7u);
    EXPECT_EQ(v.weight(), 3u);
    EXPECT_EQ(v.support(), (std::vector<std::size_t>{0, 2, 3}));
    EXPECT_EQ(v.to_string(), "1011000");
    v.flip(6);
    EXPECT_TRUE(v.get(6));
    auto w = BinVector::from_string("1111111");
    EXPECT_EQ((v ^ w).to_string(), "0100110");
    EXPECT_EQ((v & w).to_string(), "1011001");
    EXPECT_TRUE(BinVector(130).is_zero());
    EXPECT_THROW(BinVector::from_string("10x"), std::invalid_argument);
}

TEST(BinVectorTest, WideVectorsKeepPaddingClear) {
    BinVector v(130);
    v.set(129);
    v.set(64);
    EXPECT_EQ(v.weight(), 2u);
    EXPECT_EQ(v.support(), (std::vector<std::size_t>{64, 129}));
}

TEST(BinMatrixTest, FromRowsAndWeights) {
    auto m = BinMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_EQ(m.row_weight(0), 2u);
    EXPECT_EQ(m.col_weight(1), 2u);
    EXPECT_EQ(m.row_support(1), (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(transpose(m), BinMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}}));
}

TEST(BinMatrixTest, MultiplyHandCases) {
    auto ones = BinMatrix::from_rows({{1, 1}, {1, 1}});
    EXPECT_TRUE(multiply(ones, ones).is_zero());
    std::mt19937_64 rng(1);
    auto m = oracle::random_matrix(5, 9, 0.5, rng);
    EXPECT_EQ(multiply(BinMatrix::identity(5), m), m);
    EXPECT_THROW(multiply(m, m), std::invalid_argument);
}

TEST(BinMatrixTest, MultiplyMatchesNaiveOracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 50; ++t) {
        auto a = oracle::random_matrix(8, 8, 0.5, rng);
        auto b = oracle::random_matrix(8, 8, 0.5, rng);
        EXPECT_EQ(oracle::to_dense(multiply(a, b)), oracle::multiply(oracle::to_dense(a), oracle::to_dense(b)));
    }
    // Spans several words.
    auto a = oracle::random_matrix(70, 150, 0.3, rng);
    auto b = oracle::random_matrix(150, 90, 0.3, rng);
    EXPECT_EQ(oracle::to_dense(multiply(a, b)), oracle::multiply(oracle::to_dense(a), oracle::to_dense(b)));
}

TEST(BinMatrixTest, AddStackTranspose) {
    std::mt19937_64 rng(3);
    auto a = oracle::random_matrix(4, 6, 0.5, rng);
    auto b = oracle::random_matrix(4, 6, 0.5, rng);
    EXPECT_TRUE(add(a, a).is_zero());
    auto s = add(a, b);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(s.get(i, j), a.get(i, j) != b.get(i, j));
    auto h = hstack(a, b);
    EXPECT_EQ(h.cols(), 12u);
    EXPECT_EQ(h.get(2, 7), b.get(2, 1));
    auto v = vstack(a, b);
    EXPECT_EQ(v.rows(), 8u);
    EXPECT_EQ(v.get(5, 3), b.get(1, 3));
    EXPECT_EQ(transpose(transpose(h)), h);
    EXPECT_THROW(hstack(a, BinMatrix(3, 6)), std::invalid_argument);
}

TEST(RankTest, HandCases) {
    EXPECT_EQ(rank(BinMatrix::identity(5)), 5u);
    EXPECT_EQ(rank(BinMatrix::from_rows({{1, 1}, {1, 1}})), 1u);
    EXPECT_EQ(rank(BinMatrix(3, 4)), 0u);
}

TEST(RankTest, MatchesSpanEnumeration) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; ++t) {
        auto m = oracle::random_matrix(10, 12, t % 2 ? 0.2 : 0.5, rng);
        EXPECT_EQ(rank(m), oracle::span_rank(oracle::to_dense(m), 12));
    }
}

TEST(RankTest, RankNullityAndKernelOrthogonality) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        std::size_t rows = 1 + t % 13, cols = 1 + (t * 7) % 80;
        auto m = oracle::random_matrix(rows, cols, 0.4, rng);
        auto k = kernel_basis(m);
        EXPECT_EQ(rank(m) + k.rows(), cols);
        EXPECT_EQ(rank(k), k.rows());
        if (k.rows()) EXPECT_TRUE(multiply(m, transpose(k)).is_zero());
    }
}

TEST(RowSpaceTest, HandCases) {
    auto m = BinMatrix::from_rows({{1, 1, 0, 0}, {0, 1, 1, 0}});
    EXPECT_TRUE(in_row_space(m.row(0), m));
    EXPECT_TRUE(in_row_space(BinVector(4), m));
    EXPECT_TRUE(in_row_space(BinVector::from_string("1010"), m));
    EXPECT_FALSE(in_row_space(BinVector::from_string("0001"), m));
    EXPECT_THROW(in_row_space(BinVector(3), m), std::invalid_argument);
}

TEST(RowSpaceTest, MatchesSpanEnumeration) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 60; ++t) {
        std::size_t rows = 1 + t % 12;
        auto m = oracle::random_matrix(rows, 10, 0.3, rng);
        auto span = oracle::span(oracle::to_dense(m), 10);
        RowSpace rs(m);
        EXPECT_EQ(rs.dimension(), rank(m));
        for (int q = 0; q < 20; ++q) {
            // Half the queries are span members by construction.
            BinVector v = oracle::random_vector(10, 0.5, rng);
            if (q % 2) {
                v = BinVector(10);
                for (std::size_t r = 0; r < rows; ++r)
                    if (rng() & 1) v ^= m.row(r);
            }
            bool expect = span.count(oracle::bits(v)) > 0;
            EXPECT_EQ(in_row_space(v, m), expect);
            EXPECT_EQ(rs.contains(v), expect);
        }
    }
}

TEST(SolveTest, HandCasesAndConstructThenVerify) {
    auto id = BinMatrix::identity(6);
    auto s = BinVector::from_string("101101");
    EXPECT_EQ(*solve_particular(id, s), s);
    std::mt19937_64 rng(7);
    auto m = oracle::random_matrix(6, 10, 0.5, rng);
    EXPECT_EQ(mul_vec(m, *solve_particular(m, BinVector(6))), BinVector(6));
    for (int t = 0; t < 50; ++t) {
        auto a = oracle::random_matrix(8, 14, 0.4, rng);
        auto x = oracle::random_vector(14, 0.5, rng);
        auto rhs = mul_vec(a, x);
        auto sol = solve_particular(a, rhs);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(mul_vec(a, *sol), rhs);
    }
    // Two equal rows with different right-hand sides: infeasible.
    auto dup = BinMatrix::from_rows({{1, 1, 0}, {1, 1, 0}});
    EXPECT_FALSE(solve_particular(dup, BinVector::from_string("10")).has_value());
}

TEST(RowReduceTest, RespectsColumnOrder) {
    auto m = BinMatrix::from_rows({{1, 1, 0, 1}, {0, 1, 1, 1}});
    std::vector<std::size_t> order{3, 2, 1, 0};
    auto e = row_reduce(m, BinVector::from_string("10"), order);
    EXPECT_EQ(e.rank(), 2u);
    EXPECT_EQ(e.pivot_cols, (std::vector<std::size_t>{3, 2}));
    // Reduced form: pivot columns are unit vectors.
    for (std::size_t i = 0; i < e.rank(); ++i)
        for (std::size_t r = 0; r < 2; ++r) EXPECT_EQ(e.reduced.get(r, e.pivot_cols[i]), r == i);
}

TEST(MulVecTest, MatchesDense) {
    std::mt19937_64 rng(8);
    auto m = oracle::random_matrix(9, 77, 0.3, rng);
    auto v = oracle::random_vector(77, 0.5, rng);
    auto s = mul_vec(m, v);
    auto d = oracle::to_dense(m);
    for (std::size_t i = 0; i < 9; ++i) {
        int acc = 0;
        for (std::size_t j = 0; j < 77; ++j) acc ^= d[i][j] & (v.get(j) ? 1 : 0);
        EXPECT_EQ(s.get(i), acc == 1);
    }
    EXPECT_EQ(dot(v, v), v.weight() % 2 == 1);
}
