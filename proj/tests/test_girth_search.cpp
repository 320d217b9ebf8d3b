#include <gtest/gtest.h>

#include <random>

#include "margulis/girth_search.hpp"
#include "oracles.hpp"

using namespace margulis;

namespace {

/// True iff any root on either side reports a collision.
bool any_collision(const FiniteGroup& grp, const GeneratorSets& gens, int target) {
    for (auto side : {CheckSide::x, CheckSide::z})
        for (auto root : grp.enumerate())
            if (generate_tree(grp, gens, target, root, side).collision) return true;
    return false;
}

}  // namespace

TEST(SearchConfigTest, Validation) {
    SearchConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.target_girth = 10;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.target_girth = 7;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.target_girth = 8;
    cfg.r = 1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(GenerateTreeTest, FourCycleInCyclicGroup) {
    // Check 0 reaches check 2 through both A-variables 1 and 3.
    FiniteGroup grp(GroupSpec::cyclic(4));
    GeneratorSets gens{{grp.from_index(1), grp.from_index(3)}, {grp.from_index(0), grp.from_index(2)}};
    auto res = generate_tree(grp, gens, 6, grp.identity());
    EXPECT_TRUE(res.collision);
    EXPECT_EQ(res.collision_depth, 2);
    EXPECT_FALSE(res.cycle_generators.empty());
    EXPECT_EQ(code_girth(build_2bga(grp, gens)), 4);
}

TEST(GenerateTreeTest, NoConstraintAtGirthFour) {
    FiniteGroup grp(GroupSpec::cyclic(4));
    GeneratorSets gens{{grp.from_index(1), grp.from_index(3)}, {grp.from_index(0), grp.from_index(2)}};
    EXPECT_FALSE(generate_tree(grp, gens, 4, grp.identity()).collision);
}

TEST(GenerateTreeTest, CollisionAgreesWithExactGirth) {
    // A cycle shorter than the target passes through some check, so the
    // union over roots and sides must detect exactly the short cycles.
    std::mt19937_64 rng(1);
    const GroupSpec specs[] = {GroupSpec::cyclic(9), GroupSpec::product_of_cyclics({2, 6}),
                               GroupSpec::special_linear_2(2), GroupSpec::special_linear_2(3)};
    std::size_t short_cases = 0, long_cases = 0;
    for (int t = 0; t < 40; ++t) {
        FiniteGroup grp(specs[t % 4]);
        auto gens = oracle::random_generators(grp, 2 + t % 2, rng);
        auto g = code_girth(build_2bga(grp, gens));
        for (int target : {6, 8}) {
            bool is_short = g && *g < target;
            EXPECT_EQ(any_collision(grp, gens, target), is_short) << grp.spec().to_string() << " target " << target;
            (is_short ? short_cases : long_cases)++;
        }
    }
    EXPECT_GT(short_cases, 0u);
    EXPECT_GT(long_cases, 0u);
}

TEST(GetGeneratorsTest, ProductGroupReachesGirthSix) {
    FiniteGroup grp(GroupSpec::product_of_cyclics({6, 6}));
    SearchConfig cfg;
    cfg.seed = 7;
    auto res = get_generators(grp, cfg);
    EXPECT_GE(res.girth, 6);
    EXPECT_EQ(res.gens.r(), 3u);
    auto code = build_searched_code(grp, res, cfg);
    EXPECT_EQ(code.girth_certificate, res.girth);
    EXPECT_EQ(code_girth(code), res.girth);
    ASSERT_TRUE(code.search.has_value());
    EXPECT_EQ(code.search->seed, 7u);
    EXPECT_EQ(code.search->restart_index, res.restart_index);
}

TEST(GetGeneratorsTest, SearchedCodesSatisfyTheirCertificates) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        FiniteGroup grp(seed % 2 ? GroupSpec::special_linear_2(3) : GroupSpec::special_linear_2(5));
        SearchConfig cfg;
        cfg.seed = seed;
        SearchResult res;
        try {
            res = get_generators(grp, cfg);
        } catch (const SearchExhausted&) {
            continue;
        }
        auto code = build_searched_code(grp, res, cfg);
        auto exact = code_girth(code);
        ASSERT_TRUE(exact.has_value());
        EXPECT_GE(*exact, 6);
        EXPECT_EQ(*exact, res.girth);
        EXPECT_EQ(girth(TannerGraph(code.hx)), girth(TannerGraph(code.hz)));
        EXPECT_FALSE(any_collision(grp, res.gens, 6));
        ++checked;
    }
    EXPECT_GE(checked, 15u);
}

TEST(GetGeneratorsTest, Sl25CodeParameters) {
    FiniteGroup grp(GroupSpec::special_linear_2(5));
    SearchConfig cfg;
    cfg.seed = 1;
    auto code = build_searched_code(grp, get_generators(grp, cfg), cfg);
    EXPECT_EQ(code.n, 240u);
    EXPECT_EQ(code.dv, 3u);
    EXPECT_EQ(code.dc, 6u);
    EXPECT_EQ(code.k % 2, 0u);
    EXPECT_GE(code.girth_certificate.value_or(0), 6);
}

TEST(GetGeneratorsTest, ResultIndependentOfWorkerCount) {
    FiniteGroup grp(GroupSpec::special_linear_2(5));
    for (std::uint64_t seed : {0u, 4u}) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.target_girth = 8;
        cfg.max_restarts = 6;
        cfg.max_replacements_per_restart = 200;
        std::vector<std::string> outcomes;
        for (std::size_t workers : {1u, 3u}) {
            cfg.workers = workers;
            std::vector<std::size_t> events;
            try {
                auto res = get_generators(grp, cfg, [&](const SearchEvent& e) { events.push_back(e.restart); });
                std::string s = std::to_string(res.restart_index) + ":" + std::to_string(res.girth);
                for (auto a : res.gens.a) s += "," + std::to_string(a.index);
                for (auto b : res.gens.b) s += "," + std::to_string(b.index);
                outcomes.push_back(s);
            } catch (const SearchExhausted& ex) {
                outcomes.push_back("exhausted " + std::to_string(ex.stats().replacements));
            }
            for (std::size_t i = 0; i < events.size(); ++i) EXPECT_EQ(events[i], i);
        }
        EXPECT_EQ(outcomes[0], outcomes[1]) << "seed " << seed;
    }
}

TEST(GetGeneratorsTest, ExhaustionReportsStats) {
    // Z_6 with r = 3 cannot avoid 4-cycles; abelian 2BGA codes always have them.
    FiniteGroup grp(GroupSpec::cyclic(6));
    SearchConfig cfg;
    cfg.max_restarts = 2;
    cfg.max_replacements_per_restart = 20;
    try {
        get_generators(grp, cfg);
        FAIL() << "expected exhaustion";
    } catch (const SearchExhausted& ex) {
        EXPECT_EQ(ex.stats().restarts, 2u);
        EXPECT_GT(ex.stats().replacements, 0u);
    }
}
