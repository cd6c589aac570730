#pragma once

#include <algorithm>
#include <bit>
#include <memory>
#include <queue>
#include <string_view>
#include <vector>

#include "vcut/conn_oracle.hpp"
#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/graph.hpp"
#include "vcut/set_array.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

enum class Verdict { Cut, Fail };

constexpr std::string_view to_string(Verdict v) { return v == Verdict::Cut ? "cut" : "fail"; }

/// Answers Cut iff some pair of live terminals is disconnected in G - F. All sets passed
/// in and out use the IDs of the root graph; the detector keeps its own local copy.
class FewTDetector {
public:
    FewTDetector() = default;
    FewTDetector(SubGraph g, VertexSet terminals, std::size_t f)
        : sub_(std::make_shared<const SubGraph>(std::move(g))), terminals_(std::move(terminals)), f_(f) {
        require(is_connected(sub_->graph()), ErrorKind::DisconnectedInput, "FewT detector graph not connected");
        require(terminals_.subset_of(sub_->ids()), ErrorKind::OutOfRange, "terminal outside detector graph");
        local_terminals_ = sub_->to_local(terminals_);
        oracle_ = FailureConnectivityOracle(std::shared_ptr<const Graph>(sub_, &sub_->graph()), f_);
    }

    Verdict query(const VertexSet& f_set) {
        auto local = sub_->to_local(f_set);
        oracle_.update(local);
        auto live = local_terminals_.minus(local);
        if (live.size() <= 1) return Verdict::Fail;
        const Vertex s = live.front();
        for (std::size_t i = 1; i < live.size(); ++i)
            if (!oracle_.connected(s, live[i])) return Verdict::Cut;
        return Verdict::Fail;
    }

    const SubGraph& subgraph() const { return *sub_; }
    const VertexSet& terminals() const noexcept { return terminals_; }
    std::size_t f() const noexcept { return f_; }

private:
    std::shared_ptr<const SubGraph> sub_;
    VertexSet terminals_;
    VertexSet local_terminals_;
    std::size_t f_ = 0;
    FailureConnectivityOracle oracle_;
};

inline FewTDetector build_fewt(const Graph& g, const VertexSet& t_set, std::size_t f) {
    t_set.check_range(g.n(), "terminal set");
    return FewTDetector(SubGraph::root(g), t_set, f);
}

/// Steiner tree for T: BFS tree from the smallest terminal, with branches that contain
/// no terminal pruned away. Edges are in local IDs of the graph it was built on.
struct SteinerTree {
    std::vector<Edge> edges;
    std::vector<std::vector<Vertex>> adj;  // per local vertex, tree neighbours (sorted)
    std::size_t max_degree = 0;
};

inline SteinerTree steiner_tree(const Graph& g, const VertexSet& local_terminals) {
    SteinerTree tree;
    tree.adj.assign(g.n(), {});
    if (local_terminals.empty()) return tree;
    const std::size_t n = g.n();
    std::vector<std::int64_t> parent(n, -1);
    std::vector<Vertex> order;
    std::vector<char> seen(n, 0);
    std::queue<Vertex> q;
    const Vertex root = local_terminals.front();
    seen[root] = 1;
    q.push(root);
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        order.push_back(u);
        for (Vertex w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = u;
                q.push(w);
            }
        }
    }
    std::vector<char> keep(n, 0);
    for (Vertex t : local_terminals) keep[t] = 1;
    for (auto it = order.rbegin(); it != order.rend(); ++it)
        if (keep[*it] && parent[*it] >= 0) keep[static_cast<std::size_t>(parent[*it])] = 1;
    for (Vertex v : order) {
        if (!keep[v] || parent[v] < 0) continue;
        auto p = static_cast<Vertex>(parent[v]);
        tree.edges.emplace_back(std::min(p, v), std::max(p, v));
        tree.adj[p].push_back(v);
        tree.adj[v].push_back(p);
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    for (auto& a : tree.adj) {
        std::sort(a.begin(), a.end());
        tree.max_degree = std::max(tree.max_degree, a.size());
    }
    return tree;
}

/// Detector for terminal expanders: after failing F, checks that every live tree
/// neighbour of F is connected to the smallest one.
class TEDetector {
public:
    TEDetector() = default;
    TEDetector(SubGraph g, VertexSet terminals, std::size_t f)
        : sub_(std::make_shared<const SubGraph>(std::move(g))), terminals_(std::move(terminals)), f_(f) {
        require(!terminals_.empty(), ErrorKind::InvalidParams, "TE detector needs a terminal");
        require(is_connected(sub_->graph()), ErrorKind::DisconnectedInput, "TE detector graph not connected");
        require(terminals_.subset_of(sub_->ids()), ErrorKind::OutOfRange, "terminal outside detector graph");
        tree_ = steiner_tree(sub_->graph(), sub_->to_local(terminals_));
        oracle_ = FailureConnectivityOracle(std::shared_ptr<const Graph>(sub_, &sub_->graph()), f_);
    }

    Verdict query(const VertexSet& f_set) {
        auto local = sub_->to_local(f_set);
        oracle_.update(local);
        std::vector<Vertex> nbrs;
        for (Vertex x : local)
            for (Vertex y : tree_.adj[x])
                if (!oracle_.is_failed(y)) nbrs.push_back(y);
        if (nbrs.empty()) return Verdict::Fail;
        const Vertex v_star = *std::min_element(nbrs.begin(), nbrs.end());
        for (Vertex y : nbrs)
            if (!oracle_.connected(v_star, y)) return Verdict::Cut;
        return Verdict::Fail;
    }

    const SteinerTree& tree() const noexcept { return tree_; }
    const SubGraph& subgraph() const { return *sub_; }
    const VertexSet& terminals() const noexcept { return terminals_; }
    std::size_t f() const noexcept { return f_; }

private:
    std::shared_ptr<const SubGraph> sub_;
    VertexSet terminals_;
    std::size_t f_ = 0;
    SteinerTree tree_;
    FailureConnectivityOracle oracle_;
};

inline TEDetector build_te(const Graph& g, const VertexSet& t_set, std::size_t f) {
    t_set.check_range(g.n(), "terminal set");
    return TEDetector(SubGraph::root(g), t_set, f);
}

enum class UsCase { SeparatesS, SupersetDisconnected, ComponentSwallowed, NotACut };

constexpr std::string_view to_string(UsCase c) {
    switch (c) {
        case UsCase::SeparatesS: return "SeparatesS";
        case UsCase::SupersetDisconnected: return "SupersetDisconnected";
        case UsCase::ComponentSwallowed: return "ComponentSwallowed";
        case UsCase::NotACut: return "NotACut";
    }
    return "?";
}

/// Which of the three ways F can cut G relative to S hold (each flag evaluated on its own).
struct UsOptions {
    bool separates_s = false;
    bool superset_disconnected = false;
    bool component_swallowed = false;
};

inline UsOptions us_options(const Graph& g, const VertexSet& s_set, const VertexSet& f_set) {
    s_set.check_range(g.n(), "S");
    f_set.check_range(g.n(), "F");
    UsOptions o;
    o.separates_s = separates_terminals(g, f_set, s_set);
    const auto sf = s_set.unite(f_set);
    auto comps = components_without(g, sf);
    if (s_set.subset_of(f_set)) {
        o.superset_disconnected = comps.count >= 2;
    } else {
        auto fmask = removal_mask(g.n(), f_set);
        std::vector<char> ok(comps.count, 1);
        for (Vertex v = 0; v < g.n(); ++v) {
            auto l = comps.label[v];
            if (l < 0) continue;
            for (Vertex w : g.neighbors(v))
                if (comps.label[w] != l && !fmask[w]) ok[static_cast<std::size_t>(l)] = 0;
        }
        o.component_swallowed = std::find(ok.begin(), ok.end(), 1) != ok.end();
    }
    return o;
}

/// Reference classification used to test the US detector; options are checked in order.
inline UsCase us_trichotomy(const Graph& g, const VertexSet& s_set, const VertexSet& f_set) {
    auto o = us_options(g, s_set, f_set);
    if (o.separates_s) return UsCase::SeparatesS;
    if (o.superset_disconnected) return UsCase::SupersetDisconnected;
    if (o.component_swallowed) return UsCase::ComponentSwallowed;
    return UsCase::NotACut;
}

struct UsBudget {
    std::size_t u_cap = 0;      // 0 means 2f+2
    std::size_t hard_cap = 24;  // never exceeded, whatever u_cap says
};

/// Detector restricted to queries F inside S u U. For every W subset of U (|W| <= f) it
/// keeps the neighbour sets N(C) of size <= f of the components C of G - (S u W), plus
/// whether G - (S u W) is disconnected. Everything is stored in root IDs, so the graph
/// itself is not retained.
class USDetector {
public:
    USDetector() = default;

    USDetector(const SubGraph& g, VertexSet u_set, VertexSet s_set, std::size_t f, bool f_connected = false,
               UsBudget budget = {})
        : s_(std::move(s_set)), f_(f), f_connected_(f_connected) {
        require(s_.subset_of(g.ids()), ErrorKind::OutOfRange, "S outside detector graph");
        require(u_set.subset_of(g.ids()), ErrorKind::OutOfRange, "U outside detector graph");
        u_ = u_set.minus(s_);
        const std::size_t cap = std::min(budget.u_cap ? budget.u_cap : 2 * f + 2, budget.hard_cap);
        require(u_.size() <= cap, ErrorKind::BudgetExceeded,
                "|U|=" + std::to_string(u_.size()) + " exceeds table budget " + std::to_string(cap));
        const std::size_t masks = std::size_t{1} << u_.size();
        tables_.assign(masks, {});
        disconnected_.assign(masks, 0);
        const auto& graph = g.graph();
        const auto local_s = g.to_local(s_);
        const auto local_u = g.to_local(u_);
        for (std::size_t mask = 0; mask < masks; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > f_) continue;
            std::vector<char> removed(graph.n(), 0);
            for (Vertex v : local_s) removed[v] = 1;
            for (std::size_t i = 0; i < local_u.size(); ++i)
                if (mask >> i & 1u) removed[local_u[i]] = 1;
            auto comps = components_without(graph, removed);
            disconnected_[mask] = comps.count >= 2 ? 1 : 0;
            std::vector<std::vector<Vertex>> nbr(comps.count);
            for (Vertex v = 0; v < graph.n(); ++v) {
                auto l = comps.label[v];
                if (l < 0) continue;
                for (Vertex w : graph.neighbors(v))
                    if (removed[w]) nbr[static_cast<std::size_t>(l)].push_back(g.root_of(w));
            }
            std::vector<std::vector<Vertex>> small;
            for (auto& s : nbr) {
                std::sort(s.begin(), s.end());
                s.erase(std::unique(s.begin(), s.end()), s.end());
                if (s.size() <= f_) small.push_back(std::move(s));
            }
            tables_[mask] = SetArray::build(std::move(small));
        }
    }

    /// Rebuilds a detector from stored tables (deserialization).
    static USDetector from_parts(VertexSet u, VertexSet s, std::size_t f, bool f_connected,
                                 std::vector<SetArray> tables, std::vector<char> disconnected) {
        USDetector d;
        d.u_ = std::move(u);
        d.s_ = std::move(s);
        d.f_ = f;
        d.f_connected_ = f_connected;
        d.tables_ = std::move(tables);
        d.disconnected_ = std::move(disconnected);
        return d;
    }

    Verdict query(const VertexSet& f_set) const {
        require(f_set.size() <= f_, ErrorKind::TooManyFailures,
                "|F|=" + std::to_string(f_set.size()) + " exceeds f=" + std::to_string(f_));
        const auto w = f_set.minus(s_);
        require(w.subset_of(u_), ErrorKind::QueryOutsideSU, "query " + f_set.to_string() + " not inside S u U");
        const auto mask = mask_of(w);
        if (s_.subset_of(f_set)) return disconnected_[mask] ? Verdict::Cut : Verdict::Fail;
        const auto& table = tables_[mask];
        if (f_connected_) return table.contains(f_set.span()) ? Verdict::Cut : Verdict::Fail;
        bool hit = false;
        for_each_subset_up_to(f_set.span(), f_set.size(), [&](const VertexSet& sub) {
            if (table.contains(sub.span())) hit = true;
            return !hit;
        });
        return hit ? Verdict::Cut : Verdict::Fail;
    }

    std::size_t mask_of(const VertexSet& w) const {
        std::size_t mask = 0;
        for (Vertex v : w) {
            auto it = std::lower_bound(u_.begin(), u_.end(), v);
            mask |= std::size_t{1} << static_cast<std::size_t>(it - u_.begin());
        }
        return mask;
    }

    const VertexSet& u() const noexcept { return u_; }
    const VertexSet& s() const noexcept { return s_; }
    std::size_t f() const noexcept { return f_; }
    bool f_connected() const noexcept { return f_connected_; }
    const std::vector<SetArray>& tables() const noexcept { return tables_; }
    const std::vector<char>& disconnected() const noexcept { return disconnected_; }
    const SetArray& table(const VertexSet& w) const { return tables_[mask_of(w)]; }

    std::size_t stored_ids() const {
        std::size_t total = 0;
        for (const auto& t : tables_) total += t.data().size() + t.size();
        return total;
    }

private:
    VertexSet u_;
    VertexSet s_;
    std::size_t f_ = 0;
    bool f_connected_ = false;
    std::vector<SetArray> tables_;
    std::vector<char> disconnected_;
};

inline USDetector build_us(const Graph& g, const VertexSet& u_set, const VertexSet& s_set, std::size_t f,
                           bool f_connected = false, UsBudget budget = {}) {
    u_set.check_range(g.n(), "U");
    s_set.check_range(g.n(), "S");
    return USDetector(SubGraph::root(g), u_set, s_set, f, f_connected, budget);
}

}  // namespace vcut
