#pragma once

#include <algorithm>
#include <vector>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/graph.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

/// The two cut-respecting graphs of a T-cut (L,S,R). All sets are root IDs.
struct LeftRightPair {
    SubGraph g_left;   // on L u S u U_R
    SubGraph g_right;  // on R u S u U_L
    VertexSet u_left;
    VertexSet u_right;
};

/// Representatives of one side: terminals first, then the rest, ascending ID within each
/// class; the first `count` are kept (all of them if the side is small).
inline VertexSet pick_representatives(const VertexSet& side, const VertexSet& t_set, std::size_t count) {
    std::vector<Vertex> order;
    order.reserve(side.size());
    for (Vertex v : side)
        if (t_set.contains(v)) order.push_back(v);
    for (Vertex v : side)
        if (!t_set.contains(v)) order.push_back(v);
    if (order.size() > count) order.resize(count);
    return VertexSet(std::move(order));
}

/// Validates (L,S,R) against a node graph given in root IDs.
inline void check_cut(const SubGraph& g, const VertexCutPartition& cut) {
    const auto all = cut.left.unite(cut.sep).unite(cut.right);
    require(all == g.ids() && all.size() == cut.left.size() + cut.sep.size() + cut.right.size(),
            ErrorKind::InvalidCut, "L, S, R do not partition the vertex set");
    for (auto [u, v] : g.root_edges()) {
        bool lr = (cut.left.contains(u) && cut.right.contains(v)) || (cut.left.contains(v) && cut.right.contains(u));
        require(!lr, ErrorKind::InvalidCut, "edge " + std::to_string(u) + "-" + std::to_string(v) + " joins L and R");
    }
}

namespace detail {

inline SubGraph one_side(const SubGraph& g, const VertexSet& keep_side, const VertexSet& sep, const VertexSet& reps) {
    const auto vertices = keep_side.unite(sep).unite(reps);
    auto edges = g.root_edges();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) edges.emplace_back(reps[i], reps[j]);
        for (Vertex s : sep) edges.emplace_back(std::min(reps[i], s), std::max(reps[i], s));
    }
    return make_subgraph(vertices, edges);
}

}  // namespace detail

/// Left graph: delete R - U_R, make U_R a clique and join it completely to S. The right
/// graph is symmetric. U has min(f+1, |side|) members, or a single one in singleton mode.
inline LeftRightPair build_left_right(const SubGraph& g, const VertexSet& t_set, const VertexCutPartition& cut,
                                      std::size_t f, bool singleton_mode = false) {
    check_cut(g, cut);
    const std::size_t count = singleton_mode ? 1 : f + 1;
    LeftRightPair p;
    p.u_right = pick_representatives(cut.right, t_set, count);
    p.u_left = pick_representatives(cut.left, t_set, count);
    p.g_left = detail::one_side(g, cut.left, cut.sep, p.u_right);
    p.g_right = detail::one_side(g, cut.right, cut.sep, p.u_left);
    return p;
}

inline LeftRightPair build_left_right(const Graph& g, const VertexSet& t_set, const VertexCutPartition& cut,
                                      std::size_t f, bool singleton_mode = false) {
    return build_left_right(SubGraph::root(g), t_set, cut, f, singleton_mode);
}

}  // namespace vcut
