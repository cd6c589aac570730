#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/tracking.hpp"

using namespace vcut;

namespace {

std::size_t mismatches(const LabelingScheme& s, const Graph& g) {
    std::size_t bad = 0;
    for_each_subset_up_to(VertexSet::range(static_cast<Vertex>(g.n())).span(), s.f, [&](const VertexSet& q) {
        bad += query_labels(s, q) != is_cut_bruteforce(g, q);
        return true;
    });
    return bad;
}

}  // namespace

TEST(Labels, PathHasNoHighDegreeVertices) {
    auto p4 = Graph::path(4);
    auto s = build_labels(p4, 1, make_provider("registry", p4, 1));
    EXPECT_DOUBLE_EQ(s.threshold, 4.0);
    EXPECT_TRUE(s.high.empty());
    EXPECT_EQ(s.explicit_count, 0u);
    EXPECT_EQ(s.labels[1].neighbors, (std::vector<Vertex>{0, 2}));
    EXPECT_TRUE(query_labels(s, {1}));
    EXPECT_FALSE(query_labels(s, {0}));
}

TEST(Labels, StarCentreUsesExplicitLabel) {
    auto star = Graph::star(6);
    auto s = build_labels(star, 1, make_provider("registry", star, 1));
    EXPECT_DOUBLE_EQ(s.threshold, 4.0);
    EXPECT_EQ(s.high, (VertexSet{0}));
    const auto& centre = s.labels[0];
    ASSERT_EQ(centre.explicit_labels.size(), 1u);
    EXPECT_EQ(centre.explicit_labels[0].k, (VertexSet{0}));
    EXPECT_EQ(centre.explicit_labels[0].size_a, 1u);
    EXPECT_FALSE(centre.explicit_labels[0].b_set.has_value());
    EXPECT_TRUE(query_labels(s, {0}));
}

TEST(Labels, CompleteGraphStoresFullNeighbourhoods) {
    auto k5 = Graph::complete(5);
    auto s = build_labels(k5, 2, make_provider("registry", k5, 2));
    EXPECT_TRUE(s.high.empty());
    for (const auto& l : s.labels) EXPECT_EQ(l.neighbors.size(), sparsify(k5, 2).degree(l.id));
    EXPECT_EQ(mismatches(s, k5), 0u);
}

TEST(Labels, ExhaustiveEquivalence) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const std::size_t n = 10 + seed;
        auto g = gen_random(n, 0.25, seed, true).graph;
        for (std::size_t f = 1; f <= 3; ++f) {
            auto s = build_labels(g, f, make_provider("registry", g, f));
            EXPECT_EQ(mismatches(s, g), 0u) << "seed " << seed << " f " << f;
        }
    }
}

TEST(Labels, HighDegreeHeavyGraphs) {
    // Stars glued to a clique push several vertices over the threshold at f = 1 and 2.
    std::vector<Edge> e;
    for (Vertex a = 0; a < 4; ++a)
        for (Vertex b = a + 1; b < 4; ++b) e.emplace_back(a, b);
    for (Vertex leaf = 4; leaf < 20; ++leaf) e.emplace_back(leaf % 4, leaf);
    Graph g(20, e);
    for (std::size_t f = 1; f <= 3; ++f) {
        auto s = build_labels(g, f, make_provider("registry", g, f));
        EXPECT_TRUE(s.explicit_count_ok);
        EXPECT_EQ(mismatches(s, g), 0u) << "f " << f;
    }
}

TEST(Labels, QueriesTouchOnlyTheLabelsOfF) {
    auto g = gen_random(16, 0.3, 5, true).graph;
    const std::size_t f = 2;
    auto base = make_provider("registry", g, f);
    auto s = build_labels(g, f, base);
    fixtures::TrackingProvider tracker(base);
    for_each_subset_up_to(VertexSet::range(16).span(), f, [&](const VertexSet& q) {
        const auto [answer, local] = fixtures::tracked_label_query(s, tracker, q);
        EXPECT_EQ(answer, is_cut_bruteforce(g, q));
        EXPECT_TRUE(local) << q.to_string();
        return true;
    });
}

TEST(Labels, EncodingRoundTrip) {
    auto g = gen_random(14, 0.35, 3, true).graph;
    auto s = build_labels(g, 2, make_provider("size-model", g, 2));
    for (Vertex v = 0; v < g.n(); ++v) {
        auto d = decode_label(s.encoded[v], s.n, s.f, *s.provider);
        EXPECT_EQ(d.label.id, v);
        EXPECT_EQ(d.label.neighbors, s.labels[v].neighbors);
        EXPECT_EQ(d.label.high, s.labels[v].high);
    }
    auto cut = s.encoded[0];
    cut.bits -= 1;
    EXPECT_THROW(decode_label(cut, s.n, s.f, *s.provider), Error);
}

TEST(Labels, DumpRoundTrip) {
    auto g = gen_random(12, 0.3, 2, true).graph;
    auto s = build_labels(g, 2, make_provider("registry", g, 2));
    const auto j = label_dump(s);
    EXPECT_EQ(j["n"], 12);
    EXPECT_EQ(j["labels"].size(), 12u);
    auto back = read_label_dump(nlohmann::json::parse(j.dump()));
    ASSERT_EQ(back.size(), s.encoded.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].bits, s.encoded[i].bits);
        EXPECT_EQ(back[i].bytes, s.encoded[i].bytes);
    }
}

TEST(Labels, LengthReport) {
    auto p4 = Graph::path(4);
    auto s = build_labels(p4, 1, make_provider("registry", p4, 1));
    auto r = label_length_report(s);
    EXPECT_EQ(r.explicit_labels, 0u);
    // id (2) + handle (2) + class (1) + count (2) + two neighbours of 4 bits each.
    EXPECT_EQ(r.max_bits, 15u);

    auto g = gen_random_m(64, 128, 1, true).graph;
    auto reg = label_length_report(build_labels(g, 2, make_provider("registry", g, 2)));
    auto model = label_length_report(build_labels(g, 2, make_provider("size-model", g, 2)));
    EXPECT_LT(reg.total_ratio, 1.0);
    EXPECT_GT(model.total_bits, reg.total_bits);
    EXPECT_EQ(model.to_json()["provider"], "size-model");
}

TEST(Labels, Errors) {
    auto p4 = Graph::path(4);
    try {
        build_labels(p4, 2, make_provider("registry", p4, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::FTooLarge);
    }
    EXPECT_THROW(make_provider("nope", p4, 1), Error);
}

TEST(Warmup, WorkedExamples) {
    auto rep = check_fconnected_warmup(Graph::cycle(6), 2);
    EXPECT_TRUE(rep.ok());
    EXPECT_EQ(rep.fact_value("cuts"), "9");
    EXPECT_TRUE(check_fconnected_warmup(Graph::complete(4), 3).ok());
    EXPECT_EQ(check_fconnected_warmup(Graph::complete(4), 3).fact_value("cuts"), "0");
    try {
        check_fconnected_warmup(Graph::path(5), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotFConnected);
    }
}
