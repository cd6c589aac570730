#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace vcut;

TEST(FewT, WorkedExamples) {
    auto p4 = build_fewt(Graph::path(4), {0, 3}, 1);
    EXPECT_EQ(p4.query({1}), Verdict::Cut);
    EXPECT_EQ(p4.query({}), Verdict::Fail);
    auto k4 = build_fewt(Graph::complete(4), VertexSet::range(4), 2);
    EXPECT_EQ(k4.query({0, 1}), Verdict::Fail);
    auto c6 = build_fewt(Graph::cycle(6), {1, 4}, 2);
    EXPECT_EQ(c6.query({0, 3}), Verdict::Cut);
}

TEST(FewT, MatchesTerminalSeparation) {
    auto g = gen_random(12, 0.3, 5, true).graph;
    const VertexSet t{1, 4, 7, 10};
    auto d = build_fewt(g, t, 3);
    for_each_subset_up_to(VertexSet::range(12).span(), 3, [&](const VertexSet& f) {
        EXPECT_EQ(d.query(f) == Verdict::Cut, separates_terminals(g, f, t));
        return true;
    });
}

TEST(SteinerTree, WorkedExamples) {
    auto star = steiner_tree(Graph::star(5), {1, 2, 3, 4});
    EXPECT_EQ(star.edges.size(), 4u);
    EXPECT_EQ(star.max_degree, 4u);
    auto p4 = steiner_tree(Graph::path(4), {0, 3});
    EXPECT_EQ(p4.edges.size(), 3u);
    EXPECT_EQ(p4.max_degree, 2u);
    // BFS from 0 reaches 2 via 1 and 4 via 5; the pruned tree is the path 2-1-0-5-4.
    auto c6 = steiner_tree(Graph::cycle(6), {0, 2, 4});
    EXPECT_EQ(c6.edges.size(), 4u);
    EXPECT_EQ(c6.max_degree, 2u);
}

TEST(TE, WorkedExamples) {
    auto star = build_te(Graph::star(5), {1, 2, 3, 4}, 1);
    EXPECT_EQ(star.query({0}), Verdict::Cut);
    auto p4 = build_te(Graph::path(4), {0, 3}, 1);
    EXPECT_EQ(p4.query({2}), Verdict::Cut);
    auto c6 = build_te(Graph::cycle(6), {0, 2, 4}, 1);
    EXPECT_EQ(c6.query({1}), Verdict::Fail);
}

TEST(TE, SoundOnArbitraryGraphsCompleteOnSeparations) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto g = gen_random(10, 0.35, s, true).graph;
        const VertexSet t{0, 3, 5, 8};
        auto d = build_te(g, t, 3);
        for_each_subset_up_to(VertexSet::range(10).span(), 3, [&](const VertexSet& f) {
            const bool cut = d.query(f) == Verdict::Cut;
            if (cut) {
                EXPECT_TRUE(is_cut_bruteforce(g, f));
            }
            if (separates_terminals(g, f, t)) {
                EXPECT_TRUE(cut) << f.to_string();
            }
            return true;
        });
    }
}

TEST(UsTrichotomy, WorkedExamples) {
    auto p4 = Graph::path(4);
    EXPECT_EQ(us_trichotomy(p4, {2}, {1}), UsCase::ComponentSwallowed);
    EXPECT_EQ(us_trichotomy(p4, {1}, {1}), UsCase::SupersetDisconnected);
    EXPECT_EQ(us_trichotomy(Graph::complete(4), {0}, {1}), UsCase::NotACut);
    EXPECT_EQ(us_trichotomy(Graph::cycle(6), {1, 4}, {0, 3}), UsCase::SeparatesS);
}

TEST(UsDetector, P4SingleTable) {
    auto d = build_us(Graph::path(4), {}, {1}, 1);
    ASSERT_EQ(d.tables().size(), 1u);
    EXPECT_EQ(d.tables()[0].size(), 1u);  // {1} stored once
    EXPECT_TRUE(d.table({}).contains(VertexSet{1}.span()));
    EXPECT_EQ(d.disconnected()[0], 1);
    EXPECT_EQ(d.query({1}), Verdict::Cut);
}

TEST(UsDetector, K4TwoTablesBothConnected) {
    auto d = build_us(Graph::complete(4), {3}, {0}, 2);
    ASSERT_EQ(d.tables().size(), 2u);
    EXPECT_EQ(d.disconnected()[0], 0);
    EXPECT_EQ(d.disconnected()[1], 0);
    // Component {1,2,3} of K4 - {0} has N = {0}.
    EXPECT_TRUE(d.table({}).contains(VertexSet{0}.span()));
}

TEST(UsDetector, WorkedQueries) {
    auto p4 = build_us(Graph::path(4), {0}, {}, 1);
    EXPECT_EQ(p4.query({0}), Verdict::Fail);
    EXPECT_EQ(us_trichotomy(Graph::path(4), {}, {0}), UsCase::NotACut);
    auto c6 = build_us(Graph::cycle(6), {}, {0, 3}, 2);
    EXPECT_EQ(c6.query({0, 3}), Verdict::Cut);
}

TEST(UsDetector, RejectsQueriesOutsideSU) {
    auto d = build_us(Graph::path(5), {0}, {2}, 2);
    try {
        d.query({3});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::QueryOutsideSU);
    }
}

TEST(UsDetector, ExactOnEveryQueryInsideSU) {
    for (std::uint64_t s = 1; s <= 6; ++s) {
        auto g = gen_random(11, 0.3, s, true).graph;
        const VertexSet su_s{2, 5}, su_u{0, 7, 9};
        const std::size_t f = 3;
        auto d = build_us(g, su_u, su_s, f);
        for_each_subset_up_to(su_s.unite(su_u).span(), f, [&](const VertexSet& q) {
            EXPECT_EQ(d.query(q) == Verdict::Cut, is_cut_bruteforce(g, q)) << "seed " << s << " F=" << q.to_string();
            return true;
        });
    }
}

TEST(UsDetector, BudgetGuard) {
    UsBudget b;
    b.u_cap = 2;
    try {
        build_us(Graph::path(6), {0, 1, 2}, {}, 1, false, b);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
}
