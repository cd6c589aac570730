#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"

using namespace vcut;
using fixtures::matrix;

TEST(Graph, RejectsMalformedInput) {
    EXPECT_THROW(Graph(3, {{0, 0}}), Error);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), Error);
    EXPECT_THROW(Graph(3, {{0, 3}}), Error);
    try {
        Graph(2, {{0, 5}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
    }
}

TEST(Graph, BuildersAndDegrees) {
    auto k4 = Graph::complete(4);
    EXPECT_EQ(k4.m(), 6u);
    EXPECT_EQ(k4.max_degree(), 3u);
    auto s = Graph::star(5);
    EXPECT_EQ(s.degree(0), 4u);
    EXPECT_TRUE(s.adjacent(3, 0));
    EXPECT_FALSE(s.adjacent(1, 2));
    EXPECT_EQ(Graph::cycle(6).m(), 6u);
}

TEST(VertexSetOps, SetAlgebra) {
    VertexSet a{5, 1, 3}, b{3, 4};
    EXPECT_EQ(a.to_string(), "{1,3,5}");
    EXPECT_EQ(a.unite(b), (VertexSet{1, 3, 4, 5}));
    EXPECT_EQ(a.intersect(b), (VertexSet{3}));
    EXPECT_EQ(a.minus(b), (VertexSet{1, 5}));
    EXPECT_TRUE((VertexSet{3}).subset_of(a));
    EXPECT_THROW(VertexSet({1, 1}), Error);
    EXPECT_EQ(VertexSet::dedup({2, 2, 0}), (VertexSet{0, 2}));
}

TEST(VertexSetOps, SubsetEnumerationCountsMatchBinomials) {
    const auto all = VertexSet::range(9);
    std::size_t count = 0;
    for_each_subset_up_to(all.span(), 3, [&](const VertexSet&) {
        ++count;
        return true;
    });
    EXPECT_EQ(count, count_subsets_up_to(9, 3));
    EXPECT_EQ(count, 1u + 9 + 36 + 84);
}

TEST(IsCut, WorkedExamples) {
    EXPECT_TRUE(is_cut_bruteforce(Graph::path(4), {1}));
    EXPECT_FALSE(is_cut_bruteforce(Graph::complete(4), {0, 1}));
    EXPECT_TRUE(is_cut_bruteforce(Graph::cycle(6), {0, 3}));
    EXPECT_FALSE(is_cut_bruteforce(Graph::cycle(6), {0, 1}));
}

TEST(IsCut, EdgeCases) {
    auto p4 = Graph::path(4);
    EXPECT_FALSE(is_cut_bruteforce(p4, {}));
    EXPECT_FALSE(is_cut_bruteforce(p4, {0, 1, 2, 3}));
    EXPECT_FALSE(is_cut_bruteforce(p4, {0, 1, 2}));
    Graph split(4, {{0, 1}, {2, 3}});
    try {
        is_cut_bruteforce(split, {0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DisconnectedInput);
    }
    EXPECT_THROW(is_cut_bruteforce(p4, {7}), Error);
}

TEST(IsCut, AgreesWithMatrixDfs) {
    for (std::uint64_t s = 1; s <= 6; ++s) {
        auto g = gen_random(11, 0.3, s, true).graph;
        auto mg = matrix(g);
        brute::subsets(g.n(), 3, [&](const std::vector<unsigned>& f) {
            ASSERT_EQ(is_cut_bruteforce(g, fixtures::set_of(f)), brute::is_cut(mg, f));
        });
    }
}

TEST(SeparatesTerminals, WorkedExamples) {
    EXPECT_TRUE(separates_terminals(Graph::path(4), {1}, {0, 3}));
    EXPECT_FALSE(separates_terminals(Graph::path(4), {1}, {2, 3}));
    EXPECT_FALSE(separates_terminals(Graph::cycle(6), {0, 3}, {1, 2}));
}

TEST(SeparatesTerminals, AgreesWithMatrixDfs) {
    auto g = gen_random(10, 0.3, 4, true).graph;
    auto mg = matrix(g);
    const std::vector<unsigned> t{0, 3, 6, 9};
    brute::subsets(g.n(), 3, [&](const std::vector<unsigned>& f) {
        ASSERT_EQ(separates_terminals(g, fixtures::set_of(f), {0, 3, 6, 9}), brute::separates(mg, f, t));
    });
}

TEST(Sparsify, K5KeepsSingleVertexVerdicts) {
    auto k5 = Graph::complete(5);
    auto h = sparsify(k5, 1);
    EXPECT_LE(h.m(), 10u);
    EXPECT_EQ(h.n(), 5u);
    for (Vertex v = 0; v < 5; ++v) EXPECT_EQ(is_cut_bruteforce(h, {v}), is_cut_bruteforce(k5, {v}));
}

TEST(Sparsify, TreeIsItsOwnCertificate) {
    std::vector<Edge> e;
    for (Vertex v = 1; v < 15; ++v) e.emplace_back((v - 1) / 2, v);
    Graph t(15, e);
    EXPECT_EQ(sparsify(t, 2).edges(), t.edges());
}

TEST(Sparsify, DenseRandomGraphExhaustive) {
    auto g = gen_random(24, 0.5, 1, true).graph;
    auto h = sparsify(g, 3);
    EXPECT_LE(h.m(), 96u);
    std::size_t disagreements = 0;
    for_each_subset_up_to(VertexSet::range(24).span(), 3, [&](const VertexSet& f) {
        disagreements += is_cut_bruteforce(g, f) != is_cut_bruteforce(h, f);
        return true;
    });
    EXPECT_EQ(disagreements, 0u);
}

TEST(Expander, WorkedExamples) {
    EXPECT_TRUE(is_terminal_expander(Graph::complete(4), VertexSet::range(4), Ratio(1, 2)));
    // The separator {1} leaves one terminal on each side: 1 >= 1/2 * min(2, 2).
    EXPECT_TRUE(is_terminal_expander(Graph::path(4), {0, 3}, Ratio(1, 2)));
    EXPECT_FALSE(is_terminal_expander(Graph::star(5), {1, 2, 3, 4}, Ratio(1, 1)));
}

TEST(Expander, ExpansionMatchesEnumeration) {
    for (std::uint64_t s = 1; s <= 8; ++s) {
        auto g = gen_random(8, 0.35, s, true).graph;
        const std::vector<unsigned> t{0, 2, 4, 5, 7};
        auto [num, den] = brute::expansion(matrix(g), t);
        auto phi = terminal_expansion(g, {0, 2, 4, 5, 7});
        if (den == 0) {
            EXPECT_EQ(phi, Ratio(1, 1));
            continue;
        }
        EXPECT_EQ(phi, Ratio(std::min<std::size_t>(num, den), den)) << "seed " << s;
    }
}

TEST(EdgeList, RoundTripAndErrors) {
    auto g = gen_random(12, 0.3, 2, true).graph;
    std::stringstream ss;
    write_edge_list(ss, g);
    auto back = read_edge_list(ss);
    EXPECT_EQ(back.n(), g.n());
    EXPECT_EQ(back.edges(), g.edges());

    std::stringstream bad("3 1\n0 7\n");
    EXPECT_THROW(read_edge_list(bad), Error);
    std::stringstream junk("hello\n");
    EXPECT_THROW(read_edge_list(junk), Error);
}

TEST(EdgeList, QueryParsing) {
    EXPECT_EQ(parse_vertex_list("3,1, 2"), (VertexSet{1, 2, 3}));
    EXPECT_EQ(parse_vertex_list(""), VertexSet{});
    EXPECT_THROW(parse_vertex_list("1,x"), Error);
}
