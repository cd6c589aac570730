#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/expander.hpp"
#include "vcut/graph.hpp"
#include "vcut/left_right.hpp"
#include "vcut/ratio.hpp"
#include "vcut/report.hpp"
#include "vcut/sparse_cut.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

enum class NodeKind { InternalBalanced, InternalExpander, LeafFewT, LeafExpander, LeafStepchild };

constexpr std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::InternalBalanced: return "InternalBalanced";
        case NodeKind::InternalExpander: return "InternalExpander";
        case NodeKind::LeafFewT: return "LeafFewT";
        case NodeKind::LeafExpander: return "LeafExpander";
        case NodeKind::LeafStepchild: return "LeafStepchild";
    }
    return "?";
}

constexpr bool is_leaf(NodeKind k) {
    return k == NodeKind::LeafFewT || k == NodeKind::LeafExpander || k == NodeKind::LeafStepchild;
}

struct LrParams {
    double c = 4.0;                           // eps = 1 / ceil(c * log2 |T|)
    std::optional<Ratio> eps;                 // overrides the formula above
    std::optional<std::size_t> leaf_threshold;  // overrides (f+1)/eps
    bool singleton_mode = false;              // one representative per side
    double k_factor = 1.0;                    // extra divisor of eps (hit-miss family size)
    SparseCutOptions cut;
    std::size_t max_nodes = 1u << 20;
};

struct LrNode {
    NodeKind kind = NodeKind::LeafFewT;
    std::size_t depth = 0;
    std::int32_t parent = -1;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t step = -1;
    VertexSet vertices;   // V(G_q), root IDs
    VertexSet terminals;  // T_q
    VertexCutPartition cut;
    VertexSet u_left, u_right, u_s;
    std::size_t edge_count = 0;
    Ratio phi{1, 1};      // certified expansion (LeafExpander)
    bool phi_exact = false;
    bool forced_leaf = false;  // made a leaf because its terminal set did not shrink
    std::optional<SubGraph> graph;  // dropped once detectors are built, unless retained
};

struct LrTree {
    std::vector<LrNode> nodes;  // nodes[0] is the root
    VertexSet s_star;
    Ratio eps{1, 1};
    std::size_t leaf_threshold = 0;
    std::size_t f = 0;
    std::size_t depth = 0;
    std::size_t root_terminals = 0;
    double c = 4.0;
    std::size_t sum_vertices = 0;
    std::size_t sum_edges = 0;
    std::size_t forced_leaves = 0;
    bool unverified_expanders = false;

    const LrNode& root() const { return nodes.front(); }
    void drop_graphs() {
        for (auto& n : nodes) n.graph.reset();
    }
};

inline double log2_at_least_one(std::size_t x) { return std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(x, 1)))); }

/// eps = 1 / ceil(c * k * log2 |T|), rounded so that it is an exact ratio.
inline Ratio default_eps(std::size_t t_size, double c, double k_factor = 1.0) {
    auto den = static_cast<std::uint64_t>(std::ceil(c * k_factor * log2_at_least_one(t_size)));
    return Ratio(1, std::max<std::uint64_t>(den, 1));
}

/// Degeneracy: an upper bound on arboricity, used for the edge-count checks.
inline std::size_t degeneracy(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::size_t> deg(n);
    std::size_t maxd = 0;
    for (Vertex v = 0; v < n; ++v) maxd = std::max(maxd, deg[v] = g.degree(v));
    std::vector<std::vector<Vertex>> bucket(maxd + 1);
    for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
    std::vector<char> gone(n, 0);
    std::size_t best = 0, d = 0;
    for (std::size_t done = 0; done < n;) {
        d = 0;
        while (d <= maxd) {
            while (!bucket[d].empty() && (gone[bucket[d].back()] || deg[bucket[d].back()] != d)) bucket[d].pop_back();
            if (!bucket[d].empty()) break;
            ++d;
        }
        Vertex v = bucket[d].back();
        bucket[d].pop_back();
        gone[v] = 1;
        ++done;
        best = std::max(best, d);
        for (Vertex w : g.neighbors(v))
            if (!gone[w]) bucket[--deg[w]].push_back(w);
    }
    return best;
}

namespace detail {

class LrBuilder {
public:
    LrBuilder(LrTree& tree, const LrParams& p) : t_(tree), p_(p) {}

    std::int32_t add_leaf(SubGraph g, VertexSet terms, NodeKind kind, std::size_t depth, std::int32_t parent) {
        LrNode node;
        node.kind = kind;
        node.depth = depth;
        node.parent = parent;
        node.vertices = g.ids();
        node.terminals = std::move(terms);
        node.edge_count = g.m();
        node.graph = std::move(g);
        return push(std::move(node));
    }

    std::int32_t build(SubGraph g, VertexSet terms, std::size_t depth, std::int32_t parent) {
        if (terms.size() <= t_.leaf_threshold) return add_leaf(std::move(g), std::move(terms), NodeKind::LeafFewT, depth, parent);
        auto local_t = g.to_local(terms);
        auto res = find_balanced_or_expander(g.graph(), local_t, t_.eps, t_.f, p_.cut);
        if (auto bad = check_sparse_cut(g.graph(), local_t, t_.eps, res))
            fail(ErrorKind::ContractUnsatisfiable, "cut finder broke its contract: " + *bad);
        VertexCutPartition cut{g.to_root(res.cut.left), g.to_root(res.cut.sep), g.to_root(res.cut.right)};
        auto lr = build_left_right(g, terms, cut, t_.f, p_.singleton_mode);

        LrNode node;
        node.kind = res.case_tag == CutCase::Balanced ? NodeKind::InternalBalanced : NodeKind::InternalExpander;
        node.depth = depth;
        node.parent = parent;
        node.vertices = g.ids();
        node.terminals = terms;
        node.edge_count = g.m();
        node.u_left = lr.u_left;
        node.u_right = lr.u_right;
        auto ts = terms.intersect(cut.sep);
        node.u_s = VertexSet::from_sorted_unchecked(
            std::vector<Vertex>(ts.begin(), ts.begin() + static_cast<std::ptrdiff_t>(std::min(ts.size(), t_.f + 1))));
        node.cut = cut;
        node.graph = g;
        const auto id = push(std::move(node));
        t_.s_star = t_.s_star.unite(cut.sep);

        auto left_terms = terms.intersect(lr.g_left.ids());
        std::int32_t left = child(std::move(lr.g_left), std::move(left_terms), terms.size(), depth + 1, id);
        std::int32_t right = -1, step = -1;
        if (res.case_tag == CutCase::Balanced) {
            auto right_terms = terms.intersect(lr.g_right.ids());
            right = child(std::move(lr.g_right), std::move(right_terms), terms.size(), depth + 1, id);
        } else {
            auto right_terms = terms.intersect(cut.right);
            auto step_terms = lr.u_left.unite(lr.u_right).unite(t_.nodes[static_cast<std::size_t>(id)].u_s);
            SubGraph step_graph = lr.g_right;
            right = add_leaf(std::move(lr.g_right), std::move(right_terms), NodeKind::LeafExpander, depth + 1, id);
            auto& rn = t_.nodes[static_cast<std::size_t>(right)];
            rn.phi = res.phi_certified;
            rn.phi_exact = res.phi_exact;
            if (!res.phi_exact) t_.unverified_expanders = true;
            step = add_leaf(std::move(step_graph), std::move(step_terms), NodeKind::LeafStepchild, depth + 1, id);
        }
        auto& n = t_.nodes[static_cast<std::size_t>(id)];
        n.left = left;
        n.right = right;
        n.step = step;
        return id;
    }

private:
    std::int32_t child(SubGraph g, VertexSet terms, std::size_t parent_terms, std::size_t depth, std::int32_t parent) {
        if (terms.size() >= parent_terms) {
            ++t_.forced_leaves;
            auto id = add_leaf(std::move(g), std::move(terms), NodeKind::LeafFewT, depth, parent);
            t_.nodes[static_cast<std::size_t>(id)].forced_leaf = true;
            return id;
        }
        return build(std::move(g), std::move(terms), depth, parent);
    }

    std::int32_t push(LrNode node) {
        require(t_.nodes.size() < p_.max_nodes, ErrorKind::BudgetExceeded, "LR tree node budget exhausted");
        t_.depth = std::max(t_.depth, node.depth);
        t_.sum_vertices += node.vertices.size();
        t_.sum_edges += node.edge_count;
        t_.nodes.push_back(std::move(node));
        return static_cast<std::int32_t>(t_.nodes.size() - 1);
    }

    LrTree& t_;
    const LrParams& p_;
};

}  // namespace detail

/// Builds the f-LR tree of (g, T). `g` carries root IDs; T is given in root IDs.
inline LrTree build_lr_tree(const SubGraph& g, const VertexSet& t_set, std::size_t f, const LrParams& params = {}) {
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(t_set.subset_of(g.ids()), ErrorKind::OutOfRange, "terminal outside graph");
    require(is_connected(g.graph()), ErrorKind::DisconnectedInput, "graph not connected");
    LrTree tree;
    tree.f = f;
    tree.c = params.c;
    tree.root_terminals = t_set.size();
    tree.eps = params.eps ? *params.eps : default_eps(t_set.size(), params.c, params.k_factor);
    require(tree.eps.num > 0 && tree.eps.num <= tree.eps.den, ErrorKind::InvalidParams, "eps must lie in (0,1]");
    tree.leaf_threshold = params.leaf_threshold ? *params.leaf_threshold
                                                : static_cast<std::size_t>((f + 1) * tree.eps.den / tree.eps.num);
    detail::LrBuilder(tree, params).build(g, t_set, 0, -1);
    return tree;
}

inline LrTree build_lr_tree(const Graph& g, const VertexSet& t_set, std::size_t f, const LrParams& params = {}) {
    t_set.check_range(g.n(), "terminal set");
    return build_lr_tree(SubGraph::root(g), t_set, f, params);
}

/// Structural checks on a built tree. `expander_check_max_n` bounds the graphs on which a
/// LeafExpander's certified expansion is re-verified by enumeration.
inline ValidationReport validate_lr_tree(const LrTree& tree, const Graph& g, const VertexSet& t_set,
                                         std::size_t expander_check_max_n = 12) {
    ValidationReport rep;
    const auto f = tree.f;
    const double logt = log2_at_least_one(t_set.size());
    const auto depth_bound = static_cast<std::size_t>(std::ceil(tree.c * logt));
    VertexSet recomputed;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& q = tree.nodes[i];
        const auto tag = "node " + std::to_string(i) + ": ";
        if (!q.terminals.subset_of(q.vertices)) rep.violation("structure: " + tag + "T_q not inside V(G_q)");
        if (is_leaf(q.kind)) {
            const bool small = q.terminals.size() <= tree.leaf_threshold;
            if (q.kind == NodeKind::LeafStepchild) {
                if (q.terminals.size() > 3 * (f + 1)) rep.violation("property1: " + tag + "stepchild with too many terminals");
            } else if (q.kind == NodeKind::LeafExpander) {
                if (q.graph && q.graph->n() <= expander_check_max_n &&
                    !is_terminal_expander(q.graph->graph(), q.graph->to_local(q.terminals), q.phi))
                    rep.violation("property1: " + tag + "expander leaf fails its certified expansion");
            } else if (!small) {
                rep.violation("property1: " + tag + "leaf with " + std::to_string(q.terminals.size()) +
                              " terminals above threshold" + (q.forced_leaf ? " (forced)" : ""));
            }
            continue;
        }
        recomputed = recomputed.unite(q.cut.sep);
        const auto& l = tree.nodes[static_cast<std::size_t>(q.left)];
        const auto& r = tree.nodes[static_cast<std::size_t>(q.right)];
        // Shrink: |T_ql| <= 0.9 |T_q|, and the same for an internal right child.
        if (10 * l.terminals.size() > 9 * q.terminals.size()) rep.violation("shrink: " + tag + "left child too large");
        if (!is_leaf(r.kind) && 10 * r.terminals.size() > 9 * q.terminals.size())
            rep.violation("shrink: " + tag + "right child too large");
        // (1+3eps) inequalities, exact arithmetic.
        const auto lhs_v = l.vertices.size() + r.vertices.size();
        const auto lhs_t = l.terminals.size() + r.terminals.size();
        const auto scale = tree.eps.den + 3 * tree.eps.num;
        if (lhs_v * tree.eps.den > scale * q.vertices.size()) rep.violation("claim-vertices: " + tag + "child vertex sum too large");
        if (lhs_t * tree.eps.den > scale * q.terminals.size()) rep.violation("claim-terminals: " + tag + "child terminal sum too large");
        if (q.cut.sep.size() * tree.eps.den > tree.eps.num * q.terminals.size())
            rep.violation("sparsity: " + tag + "separator larger than eps |T_q|");
    }
    if (!(recomputed == tree.s_star)) rep.violation("property3: s_star differs from the union of internal separators");
    if (2 * tree.s_star.size() > t_set.size()) rep.violation("property3: |S*| > |T|/2");
    if (tree.depth > std::max<std::size_t>(depth_bound, 1)) rep.violation("property2: depth above c log|T|");

    // Property 4: vertex sum within 2 n sum_i (1+3eps)^i, edges within the arboricity proxy.
    const double e = tree.eps.value();
    double geo = 0;
    for (std::size_t i = 0; i <= tree.depth; ++i) geo += std::pow(1 + 3 * e, static_cast<double>(i));
    const double v_bound = 2.0 * static_cast<double>(g.n()) * geo;
    if (static_cast<double>(tree.sum_vertices) > v_bound) rep.violation("property4: vertex sum above bound");
    const auto alpha = degeneracy(g);
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& q = tree.nodes[i];
        const auto arb = alpha + q.depth * (f + 1);
        if (q.vertices.size() > 0 && q.edge_count > arb * (q.vertices.size() - 1))
            rep.violation("arboricity: node " + std::to_string(i) + " has too many edges");
    }
    rep.fact("depth", std::to_string(tree.depth));
    rep.fact("s_star", std::to_string(tree.s_star.size()));
    rep.fact("nodes", std::to_string(tree.nodes.size()));
    rep.fact("sum_vertices", std::to_string(tree.sum_vertices));
    rep.fact("sum_edges", std::to_string(tree.sum_edges));
    rep.fact("vertex_bound", std::to_string(v_bound));
    return rep;
}

}  // namespace vcut
