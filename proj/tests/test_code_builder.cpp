#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "margulis/code_builder.hpp"
#include "oracles.hpp"

using namespace margulis;

TEST(CayleyTest, CyclicShift) {
    FiniteGroup g(GroupSpec::cyclic(3));
    std::vector<GroupElement> a{g.from_index(1)};
    EXPECT_EQ(cayley_right(g, a), BinMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    EXPECT_EQ(cayley_left(g, a), BinMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
}

TEST(CayleyTest, IdentityGeneratorGivesIdentity) {
    for (auto spec : {GroupSpec::cyclic(5), GroupSpec::special_linear_2(3)}) {
        FiniteGroup g(spec);
        std::vector<GroupElement> e{g.identity()};
        EXPECT_EQ(cayley_right(g, e), BinMatrix::identity(g.order()));
        EXPECT_EQ(cayley_left(g, e), BinMatrix::identity(g.order()));
    }
}

TEST(CayleyTest, Sl2WeightsAndEntries) {
    FiniteGroup g(GroupSpec::special_linear_2(3));
    std::mt19937_64 rng(1);
    auto set = oracle::random_subset(g, 3, rng);
    auto right = cayley_right(g, set);
    auto left = cayley_left(g, set);
    ASSERT_EQ(right.rows(), 24u);
    for (std::size_t i = 0; i < 24; ++i) {
        EXPECT_EQ(right.row_weight(i), 3u);
        EXPECT_EQ(right.col_weight(i), 3u);
        EXPECT_EQ(left.row_weight(i), 3u);
        EXPECT_EQ(left.col_weight(i), 3u);
    }
    for (auto x : g.enumerate())
        for (auto s : set) {
            EXPECT_TRUE(right.get(x.index, g.mul(x, s).index));
            EXPECT_TRUE(left.get(x.index, g.mul(s, x).index));
        }
}

TEST(CayleyTest, DuplicatesRejected) {
    FiniteGroup g(GroupSpec::cyclic(4));
    std::vector<GroupElement> dup{g.from_index(1), g.from_index(1)};
    EXPECT_THROW(cayley_right(g, dup), std::invalid_argument);
    EXPECT_THROW(cayley_left(g, dup), std::invalid_argument);
}

TEST(Build2bgaTest, HandFixtureOnCyclic2) {
    FiniteGroup g(GroupSpec::cyclic(2));
    std::vector<GroupElement> a{g.from_index(0), g.from_index(1)};
    std::vector<GroupElement> b{g.from_index(0)};
    auto code = assemble_2bga(g, a, b);
    EXPECT_EQ(code.hx, BinMatrix::from_rows({{1, 1, 1, 0}, {1, 1, 0, 1}}));
    EXPECT_EQ(code.hz, BinMatrix::from_rows({{1, 0, 1, 1}, {0, 1, 1, 1}}));
    EXPECT_TRUE(multiply(code.hx, transpose(code.hz)).is_zero());
    EXPECT_EQ(code.n, 4u);
    EXPECT_EQ(code.k, 0u);
    EXPECT_EQ(compute_dimension(code), 0u);
}

TEST(Build2bgaTest, MatchesGroupLawOracle) {
    std::mt19937_64 rng(2);
    for (auto spec : {GroupSpec::cyclic(10), GroupSpec::product_of_cyclics({3, 4}), GroupSpec::special_linear_2(3),
                      GroupSpec::special_linear_2(5)}) {
        FiniteGroup g(spec);
        auto gens = oracle::random_generators(g, 3, rng);
        auto code = build_2bga(g, gens);
        auto [hx, hz] = oracle::two_block(g, gens);
        EXPECT_EQ(oracle::to_dense(code.hx), hx) << spec.to_string();
        EXPECT_EQ(oracle::to_dense(code.hz), hz) << spec.to_string();
    }
}

TEST(Build2bgaTest, ParametersAndRegularity) {
    std::mt19937_64 rng(3);
    FiniteGroup g(GroupSpec::special_linear_2(5));
    for (int t = 0; t < 5; ++t) {
        auto code = build_2bga(g, oracle::random_generators(g, 3, rng));
        EXPECT_EQ(code.n, 240u);
        EXPECT_EQ(code.dv, 3u);
        EXPECT_EQ(code.dc, 6u);
        for (std::size_t i = 0; i < code.hx.rows(); ++i) {
            EXPECT_EQ(code.hx.row_weight(i), 6u);
            EXPECT_EQ(code.hz.row_weight(i), 6u);
        }
        for (std::size_t j = 0; j < code.n; ++j) {
            EXPECT_EQ(code.hx.col_weight(j), 3u);
            EXPECT_EQ(code.hz.col_weight(j), 3u);
        }
        EXPECT_EQ(code.k, code.n - rank(code.hx) - rank(code.hz));
    }
    EXPECT_EQ(build_2bga(FiniteGroup(GroupSpec::special_linear_2(3)),
                         oracle::random_generators(FiniteGroup(GroupSpec::special_linear_2(3)), 3, rng))
                  .n,
              48u);
}

TEST(Build2bgaTest, OrthogonalOnRandomDraws) {
    std::mt19937_64 rng(4);
    const GroupSpec specs[] = {GroupSpec::cyclic(12), GroupSpec::product_of_cyclics({6, 6}),
                               GroupSpec::special_linear_2(3), GroupSpec::special_linear_2(5)};
    for (int t = 0; t < 40; ++t) {
        FiniteGroup g(specs[t % 4]);
        std::size_t r = 2 + t % 3;
        auto code = build_2bga(g, oracle::random_generators(g, r, rng));
        EXPECT_TRUE(multiply(code.hx, transpose(code.hz)).is_zero());
    }
}

TEST(Build2bgaTest, DimensionInvariantUnderRelabeling) {
    // Conjugating every generator by a fixed element relabels the group
    // (x -> h^-1 x h) and must leave k unchanged.
    std::mt19937_64 rng(5);
    FiniteGroup g(GroupSpec::special_linear_2(3));
    for (int t = 0; t < 5; ++t) {
        auto gens = oracle::random_generators(g, 3, rng);
        auto h = g.from_index(1 + t);
        GeneratorSets moved;
        for (auto a : gens.a) moved.a.push_back(g.conjugate(a, h));
        for (auto b : gens.b) moved.b.push_back(g.conjugate(b, h));
        EXPECT_EQ(build_2bga(g, gens).k, build_2bga(g, moved).k);
    }
}

TEST(GeneratorSetsTest, Validation) {
    FiniteGroup g(GroupSpec::cyclic(6));
    GeneratorSets ok{{g.from_index(1), g.from_index(2)}, {g.from_index(1), g.from_index(3)}};
    EXPECT_NO_THROW(ok.validate());
    GeneratorSets unequal{{g.from_index(1), g.from_index(2)}, {g.from_index(1)}};
    EXPECT_THROW(unequal.validate(), std::invalid_argument);
    GeneratorSets tiny{{g.from_index(1)}, {g.from_index(2)}};
    EXPECT_THROW(tiny.validate(), std::invalid_argument);
    GeneratorSets dup{{g.from_index(1), g.from_index(1)}, {g.from_index(1), g.from_index(2)}};
    EXPECT_THROW(dup.validate(), std::invalid_argument);
    EXPECT_THROW(build_2bga(g, tiny), std::invalid_argument);
}

TEST(MargulisTest, CompletionSatisfiesDeterminant) {
    for (auto [m, q] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}, {1, 2}, {3, 2}, {2, 3}}) {
        auto [a, b] = complete_sl2z(m, q, 8);
        EXPECT_EQ(m * b - a * q, 1) << m << "," << q;
        EXPECT_LT(2 * std::llabs(a), 8);
        EXPECT_LT(2 * std::llabs(b), 8);
    }
    EXPECT_THROW(complete_sl2z(2, 2, 8), std::invalid_argument);
}

TEST(MargulisTest, IdentityConjugator) {
    FiniteGroup g(GroupSpec::special_linear_2(11));
    std::vector<std::pair<int, int>> pairs{{1, 0}};
    auto gens = margulis_generators(g, 4, pairs);
    ASSERT_EQ(gens.size(), 1u);
    EXPECT_EQ(g.matrix(gens[0]), (std::array<int, 4>{1, 4, 0, 1}));
}

TEST(MargulisTest, ConjugationByHand) {
    // C = [[m, a], [q, b]] with det 1; g = C T C^-1 computed over the integers.
    FiniteGroup g(GroupSpec::special_linear_2(11));
    const int eta = 4;
    std::vector<std::pair<int, int>> pairs{{1, 0}, {1, 1}};
    auto gens = margulis_generators(g, eta, pairs);
    ASSERT_EQ(gens.size(), 2u);
    EXPECT_NE(gens[0], gens[1]);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [m, q] = pairs[i];
        auto [a, b] = complete_sl2z(m, q, eta);
        // C T = [[m, m eta + a], [q, q eta + b]]; C^-1 = [[b, -a], [-q, m]].
        long long ct[4] = {m, m * eta + a, q, q * eta + b};
        long long ci[4] = {b, -a, -q, m};
        std::array<long long, 4> prod{ct[0] * ci[0] + ct[1] * ci[2], ct[0] * ci[1] + ct[1] * ci[3],
                                      ct[2] * ci[0] + ct[3] * ci[2], ct[2] * ci[1] + ct[3] * ci[3]};
        EXPECT_EQ(gens[i], g.from_matrix(prod));
        auto mat = g.matrix(gens[i]);
        EXPECT_EQ(((mat[0] * mat[3] - mat[1] * mat[2]) % 11 + 11) % 11, 1);
    }
}

TEST(MargulisTest, RejectsBadPairs) {
    FiniteGroup g(GroupSpec::special_linear_2(11));
    std::vector<std::pair<int, int>> non_coprime{{2, 2}};
    EXPECT_THROW(margulis_generators(g, 8, non_coprime), std::invalid_argument);
    std::vector<std::pair<int, int>> too_big{{5, 1}};
    EXPECT_THROW(margulis_generators(g, 4, too_big), std::invalid_argument);
    FiniteGroup c(GroupSpec::cyclic(5));
    std::vector<std::pair<int, int>> fine{{1, 0}};
    EXPECT_THROW(margulis_generators(c, 4, fine), std::invalid_argument);
}
