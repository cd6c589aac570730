#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace vcut;
using fixtures::two_k5;

namespace {

OracleParams with_mode(OracleMode mode) {
    OracleParams p;
    p.mode = mode;
    return p;
}

OracleParams deep(OracleMode mode = OracleMode::General) {
    OracleParams p;
    p.mode = mode;
    p.lr.eps = Ratio(1, 4);
    p.lr.leaf_threshold = 3;
    return p;
}

std::size_t mismatches(VertexCutOracle& o, const Graph& g, std::size_t f) {
    std::size_t bad = 0;
    for_each_subset_up_to(VertexSet::range(static_cast<Vertex>(g.n())).span(), f, [&](const VertexSet& q) {
        if (o.mode() == OracleMode::FConnected && q.size() != f) return true;
        bad += o.query(q) != is_cut_bruteforce(g, q);
        return true;
    });
    return bad;
}

}  // namespace

TEST(Detector, SingleLeafInstance) {
    auto d = build_detector(Graph::path(4), VertexSet::range(4), 1);
    ASSERT_EQ(d.tree().nodes.size(), 1u);
    EXPECT_TRUE(std::holds_alternative<FewTDetector>(d.leaves()[0]));
    EXPECT_EQ(d.query({1}), Verdict::Cut);
}

TEST(Detector, TwoK5Layout) {
    DetectorParams p;
    p.lr.eps = Ratio(1, 2);
    p.lr.leaf_threshold = 7;
    auto d = build_detector(two_k5(), VertexSet::range(9), 1, p);
    ASSERT_EQ(d.tree().nodes.size(), 3u);
    EXPECT_TRUE(d.us_left()[0].has_value());
    EXPECT_TRUE(d.us_right()[0].has_value());
    EXPECT_FALSE(std::holds_alternative<std::monostate>(d.leaves()[1]));
    EXPECT_FALSE(std::holds_alternative<std::monostate>(d.leaves()[2]));
    // {4} equals S*, so the detector owes no answer; the assembled oracle settles it.
    auto o = build_oracle(two_k5(), 1, {});
    EXPECT_TRUE(o.query({4}));
}

TEST(Detector, CompleteGraphLeaf) {
    auto d = build_detector(Graph::complete(8), VertexSet::range(8), 2);
    EXPECT_FALSE(std::holds_alternative<std::monostate>(d.leaves()[0]));
    QueryStats st;
    EXPECT_EQ(d.query({}, &st), Verdict::Fail);
    EXPECT_EQ(st.branches(), 0u);
}

TEST(Detector, TooManyFailuresRejected) {
    auto d = build_detector(Graph::path(5), VertexSet::range(5), 1);
    try {
        d.query({1, 2});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooManyFailures);
    }
}

TEST(Oracle, WorkedExamples) {
    auto k4 = Graph::complete(4);
    auto ok4 = build_oracle(k4, 2);
    EXPECT_EQ(mismatches(ok4, k4, 2), 0u);
    EXPECT_FALSE(ok4.query({0, 1}));

    auto p4 = Graph::path(4);
    auto op4 = build_oracle(p4, 1);
    EXPECT_TRUE(op4.query({1}));
    EXPECT_TRUE(op4.query({2}));
    EXPECT_FALSE(op4.query({0}));
    EXPECT_FALSE(op4.query({3}));

    auto g = two_k5();
    auto o = build_oracle(g, 1);
    EXPECT_TRUE(o.query({4}));
}

TEST(Oracle, RandomGraphExhaustiveAllModes) {
    auto g = gen_random(20, 0.3, 1, true).graph;
    for (auto mode : {OracleMode::General, OracleMode::HitMiss}) {
        auto o = build_oracle(g, 3, with_mode(mode));
        EXPECT_EQ(mismatches(o, g, 3), 0u) << to_string(mode);
        auto od = build_oracle(g, 3, deep(mode));
        EXPECT_EQ(mismatches(od, g, 3), 0u) << to_string(mode) << " deep";
    }
}

TEST(Oracle, FConnectedWorkedExamples) {
    auto k4 = Graph::complete(4);
    auto o = build_oracle(k4, 3, with_mode(OracleMode::FConnected));
    for_each_subset_up_to(VertexSet::range(4).span(), 3, [&](const VertexSet& q) {
        if (q.size() == 3) {
            EXPECT_FALSE(o.query(q));
        }
        return true;
    });
    auto c6 = Graph::cycle(6);
    auto oc = build_oracle(c6, 2, deep(OracleMode::FConnected));
    EXPECT_TRUE(oc.query({0, 3}));
    EXPECT_FALSE(oc.query({0, 1}));
    EXPECT_EQ(mismatches(oc, c6, 2), 0u);
}

TEST(Oracle, FConnectedRejectsWeakerGraphs) {
    try {
        build_oracle(Graph::path(5), 2, with_mode(OracleMode::FConnected));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFConnected);
    }
}

TEST(Oracle, FConnectedInstancesExhaustive) {
    for (std::uint64_t s = 1; s <= 6; ++s) {
        const std::size_t f = 2 + s % 2;
        auto g = gen_f_connected(12, f, s).graph;
        auto o = build_oracle(g, f, deep(OracleMode::FConnected));
        EXPECT_EQ(mismatches(o, g, f), 0u) << "seed " << s;
    }
}

TEST(Oracle, HitMissSmallGraphs) {
    auto p4 = Graph::path(4);
    auto o = build_oracle_hitmiss(p4, 1);
    EXPECT_EQ(mismatches(o, p4, 1), 0u);
    auto k4 = Graph::complete(4);
    auto ok = build_oracle_hitmiss(k4, 2);
    EXPECT_EQ(mismatches(ok, k4, 2), 0u);
    auto g = gen_random(16, 0.4, 3, true).graph;
    auto og = build_oracle_hitmiss(g, 2);
    EXPECT_EQ(mismatches(og, g, 2), 0u);
}

TEST(Oracle, TerminalReductionAndQueryLaws) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto g = gen_random(18, 0.2, s, true).graph;
        auto o = build_oracle(g, 3, deep());
        EXPECT_TRUE(check_terminal_reduction(o).ok());
        ValidationReport laws;
        for_each_subset_up_to(VertexSet::range(18).span(), 3, [&](const VertexSet& q) {
            EXPECT_EQ(audited_query(o, q, laws), is_cut_bruteforce(g, q));
            return true;
        });
        EXPECT_TRUE(laws.ok()) << laws.violations.front();
    }
}

TEST(Oracle, InputErrors) {
    Graph split(4, {{0, 1}, {2, 3}});
    try {
        build_oracle(split, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DisconnectedInput);
    }
    auto o = build_oracle(Graph::path(4), 1);
    EXPECT_THROW(o.query({1, 2}), Error);
    EXPECT_THROW(o.query({7}), Error);
}

TEST(HitMiss, SmallFamiliesVerify) {
    auto fam = build_hit_miss_family({0, 1, 2}, 1, 3, 1);
    EXPECT_TRUE(fam.exhaustive);
    EXPECT_TRUE(verify_hit_miss(fam, {0, 1, 2}));

    auto single = build_hit_miss_family({5}, 1, 8, 1);
    EXPECT_TRUE(verify_hit_miss(single, {5}));

    const auto t10 = VertexSet::range(10);
    auto fam10 = build_hit_miss_family(t10, 2, 10, 4);
    EXPECT_TRUE(fam10.exhaustive);
    EXPECT_TRUE(verify_hit_miss(fam10, t10));
}

TEST(HitMiss, VerifierRejectsThinFamilies) {
    HitMissFamily fam;
    fam.f = 1;
    fam.sets = {{0, 1}};
    EXPECT_FALSE(verify_hit_miss(fam, {0, 1, 2}));
}

TEST(HitMiss, FamilySizeFormula) {
    // ceil((1 * ln 8)^3) = ceil(8.99) = 9
    EXPECT_EQ(hit_miss_k(1, 8, 1.0), 9u);
    EXPECT_GE(hit_miss_k(2, 100, 1.0), hit_miss_k(1, 100, 1.0));
}
