#include <gtest/gtest.h>

#include <random>
#include <set>

#include "margulis/finite_group.hpp"
#include "oracles.hpp"

using namespace margulis;

TEST(GroupSpecTest, OrdersMatchFormulas) {
    EXPECT_EQ(GroupSpec::cyclic(7).order(), 7u);
    EXPECT_EQ(GroupSpec::product_of_cyclics({6, 6}).order(), 36u);
    EXPECT_EQ(GroupSpec::special_linear_2(5).order(), 120u);
    EXPECT_EQ(GroupSpec::special_linear_2(7).order(), 336u);
}

TEST(GroupSpecTest, RejectsInvalidParameters) {
    EXPECT_THROW(GroupSpec::cyclic(1), std::invalid_argument);
    EXPECT_THROW(GroupSpec::product_of_cyclics({4, 0}), std::invalid_argument);
    EXPECT_THROW(GroupSpec::product_of_cyclics({}), std::invalid_argument);
    EXPECT_THROW(GroupSpec::special_linear_2(6), std::invalid_argument);
    EXPECT_THROW(GroupSpec::cyclic(2'000'000), std::invalid_argument);
}

TEST(GroupSpecTest, TextRoundTrip) {
    for (const char* text : {"cyclic:12", "product:6,6", "sl2:5"}) {
        auto spec = GroupSpec::parse(text);
        EXPECT_EQ(spec.to_string(), text);
        EXPECT_EQ(GroupSpec::parse(spec.to_string()), spec);
    }
    EXPECT_THROW(GroupSpec::parse("dihedral:4"), std::invalid_argument);
    EXPECT_THROW(GroupSpec::parse("cyclic"), std::invalid_argument);
    EXPECT_THROW(GroupSpec::parse("sl2:x"), std::invalid_argument);
}

TEST(FiniteGroupTest, CyclicEnumerationIsNatural) {
    FiniteGroup g(GroupSpec::cyclic(3));
    auto elems = g.enumerate();
    ASSERT_EQ(elems.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(elems[i].index, i);
        EXPECT_EQ(g.residues(elems[i]), std::vector<int>{static_cast<int>(i)});
    }
}

TEST(FiniteGroupTest, Sl2OrderMatchesDeterminantFilter) {
    for (int p : {2, 3, 5, 7}) {
        FiniteGroup g(GroupSpec::special_linear_2(p));
        auto elems = g.enumerate();
        EXPECT_EQ(elems.size(), oracle::sl2_count(p)) << "p=" << p;
        EXPECT_EQ(elems.size(), static_cast<std::size_t>(p * (p * p - 1)));
        std::set<std::array<int, 4>> seen;
        for (auto e : elems) {
            auto m = g.matrix(e);
            EXPECT_EQ(((m[0] * m[3] - m[1] * m[2]) % p + p) % p, 1);
            for (int x : m) {
                EXPECT_GE(x, 0);
                EXPECT_LT(x, p);
            }
            EXPECT_TRUE(seen.insert(m).second);
        }
    }
    EXPECT_EQ(oracle::sl2_count(3), 24u);
    EXPECT_EQ(oracle::sl2_count(5), 120u);
}

TEST(FiniteGroupTest, IdentityComesFirstThenLexicographic) {
    FiniteGroup g(GroupSpec::special_linear_2(3));
    auto elems = g.enumerate();
    EXPECT_EQ(g.matrix(elems[0]), (std::array<int, 4>{1, 0, 0, 1}));
    for (std::size_t i = 2; i < elems.size(); ++i) EXPECT_LT(g.matrix(elems[i - 1]), g.matrix(elems[i]));
}

TEST(FiniteGroupTest, IndexingIsBijective) {
    for (auto spec : {GroupSpec::product_of_cyclics({3, 4, 5}), GroupSpec::special_linear_2(5)}) {
        FiniteGroup g(spec);
        for (auto e : g.enumerate()) {
            EXPECT_EQ(g.from_index(g.element_index(e)), e);
            if (spec.kind == GroupKind::special_linear_2) {
                auto m = g.matrix(e);
                EXPECT_EQ(g.from_matrix({m[0], m[1], m[2], m[3]}), e);
            } else {
                EXPECT_EQ(g.from_residues(g.residues(e)), e);
            }
        }
        EXPECT_THROW(g.from_index(g.order()), std::out_of_range);
    }
}

TEST(FiniteGroupTest, CyclicArithmetic) {
    FiniteGroup c5(GroupSpec::cyclic(5));
    EXPECT_EQ(c5.mul(c5.from_index(2), c5.from_index(4)).index, 1u);
    FiniteGroup c6(GroupSpec::cyclic(6));
    EXPECT_EQ(c6.inv(c6.from_index(2)).index, 4u);
    EXPECT_EQ(c6.inv(c6.identity()), c6.identity());
}

TEST(FiniteGroupTest, Sl2HandProduct) {
    FiniteGroup g(GroupSpec::special_linear_2(3));
    auto x = g.from_matrix({1, 1, 0, 1});
    auto y = g.from_matrix({1, 0, 1, 1});
    EXPECT_EQ(g.matrix(g.mul(x, y)), (std::array<int, 4>{2, 1, 1, 1}));
}

TEST(FiniteGroupTest, Sl2InverseIsAdjugate) {
    FiniteGroup g(GroupSpec::special_linear_2(5));
    for (auto e : g.enumerate()) {
        auto m = g.matrix(e);
        auto inv = g.matrix(g.inv(e));
        EXPECT_EQ(inv, (std::array<int, 4>{m[3], (5 - m[1]) % 5, (5 - m[2]) % 5, m[0]}));
    }
}

TEST(FiniteGroupTest, FromMatrixReducesAndChecksDeterminant) {
    FiniteGroup g(GroupSpec::special_linear_2(5));
    EXPECT_EQ(g.from_matrix({6, -5, 10, 11}), g.identity());
    EXPECT_THROW(g.from_matrix({2, 0, 0, 2}), std::invalid_argument);
}

TEST(FiniteGroupTest, GroupAxiomsOnRandomTriples) {
    std::mt19937_64 rng(7);
    for (auto spec : {GroupSpec::product_of_cyclics({6, 6}), GroupSpec::special_linear_2(5),
                      GroupSpec::special_linear_2(7)}) {
        FiniteGroup g(spec);
        std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
        for (int t = 0; t < 10'000; ++t) {
            auto a = g.from_index(pick(rng)), b = g.from_index(pick(rng)), c = g.from_index(pick(rng));
            ASSERT_EQ(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        }
        for (auto a : g.enumerate()) {
            EXPECT_EQ(g.mul(a, g.inv(a)), g.identity());
            EXPECT_EQ(g.mul(g.inv(a), a), g.identity());
            EXPECT_EQ(g.mul(a, g.identity()), a);
        }
    }
}

TEST(FiniteGroupTest, Sl2MultiplicationMatchesMatrixProduct) {
    FiniteGroup g(GroupSpec::special_linear_2(7));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
    for (int t = 0; t < 2000; ++t) {
        auto x = g.from_index(pick(rng)), y = g.from_index(pick(rng));
        auto a = g.matrix(x), b = g.matrix(y);
        std::array<int, 4> expect{(a[0] * b[0] + a[1] * b[2]) % 7, (a[0] * b[1] + a[1] * b[3]) % 7,
                                  (a[2] * b[0] + a[3] * b[2]) % 7, (a[2] * b[1] + a[3] * b[3]) % 7};
        ASSERT_EQ(g.matrix(g.mul(x, y)), expect);
    }
}

TEST(FiniteGroupTest, Abelianness) {
    EXPECT_TRUE(FiniteGroup(GroupSpec::product_of_cyclics({6, 6})).is_abelian());
    EXPECT_TRUE(FiniteGroup(GroupSpec::cyclic(9)).is_abelian());

    for (int p : {2, 3}) {
        FiniteGroup g(GroupSpec::special_linear_2(p));
        EXPECT_FALSE(g.is_abelian());
        // Brute-force witness of non-commutativity.
        bool found = false;
        for (auto x : g.enumerate())
            for (auto y : g.enumerate()) found = found || g.mul(x, y) != g.mul(y, x);
        EXPECT_TRUE(found);
    }
    EXPECT_EQ(FiniteGroup(GroupSpec::special_linear_2(2)).order(), 6u);
}

TEST(FiniteGroupTest, MixedGroupOperandsRejected) {
    FiniteGroup a(GroupSpec::cyclic(5));
    FiniteGroup b(GroupSpec::cyclic(7));
    EXPECT_THROW(a.mul(a.from_index(1), b.from_index(1)), std::invalid_argument);
}

TEST(FiniteGroupTest, Normalizes) {
    FiniteGroup ab(GroupSpec::product_of_cyclics({6, 6}));
    std::mt19937_64 rng(11);
    auto set = oracle::random_subset(ab, 3, rng);
    for (auto h : ab.enumerate()) EXPECT_TRUE(ab.normalizes(h, set));

    FiniteGroup g(GroupSpec::special_linear_2(3));
    auto s = g.from_matrix({1, 1, 0, 1});
    std::vector<GroupElement> single{s};
    EXPECT_TRUE(g.normalizes(g.identity(), single));
    std::size_t moved = 0;
    for (auto h : g.enumerate()) {
        // Set equality by direct conjugation.
        bool expect = g.mul(g.mul(g.inv(h), s), h) == s;
        EXPECT_EQ(g.normalizes(h, single), expect);
        EXPECT_EQ(g.conjugate(s, h), g.mul(g.mul(g.inv(h), s), h));
        moved += !expect;
    }
    EXPECT_GT(moved, 0u);
}
