#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "vcut/error.hpp"
#include "vcut/graph.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

/// Connected components of g minus a removed set. label[v] == -1 for removed vertices.
struct Components {
    std::vector<std::int32_t> label;
    std::size_t count = 0;

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s(count, 0);
        for (auto l : label)
            if (l >= 0) ++s[static_cast<std::size_t>(l)];
        return s;
    }
};

inline Components components_without(const Graph& g, const std::vector<char>& removed) {
    Components c;
    c.label.assign(g.n(), -1);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.n(); ++s) {
        if (removed[s] || c.label[s] >= 0) continue;
        const auto id = static_cast<std::int32_t>(c.count++);
        c.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(u)) {
                if (!removed[w] && c.label[w] < 0) {
                    c.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return c;
}

inline std::vector<char> removal_mask(std::size_t n, const VertexSet& removed) {
    std::vector<char> mask(n, 0);
    for (Vertex v : removed) mask[v] = 1;
    return mask;
}

inline Components components_without(const Graph& g, const VertexSet& removed) {
    removed.check_range(g.n());
    return components_without(g, removal_mask(g.n(), removed));
}

inline bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    return components_without(g, std::vector<char>(g.n(), 0)).count == 1;
}

/// True iff g - F has at least two components. No connectivity precondition.
inline bool disconnected_after_removal(const Graph& g, const VertexSet& f_set) {
    return components_without(g, f_set).count >= 2;
}

/// Ground truth for "F is a vertex cut": g - F has >= 2 components. F = V and F = {} on a
/// connected graph are both "not a cut".
inline bool is_cut_bruteforce(const Graph& g, const VertexSet& f_set) {
    f_set.check_range(g.n(), "query set");
    require(is_connected(g), ErrorKind::DisconnectedInput, "input graph is not connected");
    return disconnected_after_removal(g, f_set);
}

/// True iff two vertices of T - F lie in different components of g - F.
inline bool separates_terminals(const Graph& g, const VertexSet& f_set, const VertexSet& t_set) {
    f_set.check_range(g.n(), "query set");
    t_set.check_range(g.n(), "terminal set");
    auto comps = components_without(g, f_set);
    std::int32_t seen = -1;
    for (Vertex t : t_set) {
        auto l = comps.label[t];
        if (l < 0) continue;
        if (seen < 0) seen = l;
        else if (l != seen) return true;
    }
    return false;
}

/// A vertex cut (L, S, R): a partition of the vertex set with no L-R edges.
struct VertexCutPartition {
    VertexSet left;
    VertexSet sep;
    VertexSet right;
};

/// Checks that (L,S,R) partitions [0,n) with no L-R edge. Nonemptiness is left to callers.
inline bool is_valid_partition(const Graph& g, const VertexCutPartition& c) {
    if (c.left.size() + c.sep.size() + c.right.size() != g.n()) return false;
    std::vector<std::uint8_t> side(g.n(), 255);
    auto mark = [&](const VertexSet& s, std::uint8_t tag) {
        for (Vertex v : s) {
            if (v >= g.n() || side[v] != 255) return false;
            side[v] = tag;
        }
        return true;
    };
    if (!mark(c.left, 0) || !mark(c.sep, 1) || !mark(c.right, 2)) return false;
    for (auto [u, v] : g.edges())
        if ((side[u] == 0 && side[v] == 2) || (side[u] == 2 && side[v] == 0)) return false;
    return true;
}

namespace detail {

/// Dinic max-flow on the split-vertex network used for vertex separators.
class VertexFlow {
public:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int32_t>::max();

    explicit VertexFlow(std::size_t nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

    void add_edge(std::size_t u, std::size_t v, std::int64_t cap) {
        edges_.push_back({v, head_[u], cap});
        head_[u] = static_cast<std::int64_t>(edges_.size() - 1);
        edges_.push_back({u, head_[v], 0});
        head_[v] = static_cast<std::int64_t>(edges_.size() - 1);
    }

    /// Returns the max flow, or stops as soon as it exceeds `limit`.
    std::int64_t run(std::size_t s, std::size_t t, std::int64_t limit) {
        std::int64_t flow = 0;
        while (flow <= limit && bfs(s, t)) {
            it_ = head_;
            while (flow <= limit) {
                auto pushed = dfs(s, t, kInf);
                if (pushed == 0) break;
                flow += pushed;
            }
        }
        return flow;
    }

    std::vector<char> reachable(std::size_t s) const {
        std::vector<char> seen(head_.size(), 0);
        std::vector<std::size_t> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto e = head_[u]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
                const auto& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && !seen[ed.to]) {
                    seen[ed.to] = 1;
                    stack.push_back(ed.to);
                }
            }
        }
        return seen;
    }

private:
    struct E {
        std::size_t to;
        std::int64_t next;
        std::int64_t cap;
    };

    bool bfs(std::size_t s, std::size_t t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            auto u = q.front();
            q.pop();
            for (auto e = head_[u]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
                const auto& ed = edges_[static_cast<std::size_t>(e)];
                if (ed.cap > 0 && level_[ed.to] < 0) {
                    level_[ed.to] = level_[u] + 1;
                    q.push(ed.to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t f) {
        if (u == t) return f;
        for (auto& e = it_[u]; e >= 0; e = edges_[static_cast<std::size_t>(e)].next) {
            auto& ed = edges_[static_cast<std::size_t>(e)];
            if (ed.cap > 0 && level_[ed.to] == level_[u] + 1) {
                auto d = dfs(ed.to, t, std::min(f, ed.cap));
                if (d > 0) {
                    ed.cap -= d;
                    edges_[static_cast<std::size_t>(e) ^ 1].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    std::vector<E> edges_;
    std::vector<std::int64_t> head_;
    std::vector<int> level_;
    std::vector<std::int64_t> it_;
};

}  // namespace detail

/// Minimum vertex set hitting every path from `sources` to `sinks`. When `protect_ends`
/// is set the endpoints themselves may not be cut. Returns nothing if the separator
/// would exceed `limit` vertices (or no finite separator exists).
inline std::optional<VertexCutPartition> min_vertex_separator(const Graph& g, const VertexSet& sources,
                                                              const VertexSet& sinks, std::size_t limit,
                                                              bool protect_ends) {
    const std::size_t n = g.n();
    const std::size_t src = 2 * n, snk = 2 * n + 1;
    detail::VertexFlow net(2 * n + 2);
    std::vector<char> prot(n, 0);
    if (protect_ends) {
        for (Vertex v : sources) prot[v] = 1;
        for (Vertex v : sinks) prot[v] = 1;
    }
    for (Vertex v = 0; v < n; ++v) net.add_edge(2 * v, 2 * v + 1, prot[v] ? detail::VertexFlow::kInf : 1);
    for (auto [u, v] : g.edges()) {
        net.add_edge(2 * u + 1, 2 * v, detail::VertexFlow::kInf);
        net.add_edge(2 * v + 1, 2 * u, detail::VertexFlow::kInf);
    }
    for (Vertex a : sources) net.add_edge(src, 2 * a, detail::VertexFlow::kInf);
    for (Vertex b : sinks) net.add_edge(2 * b + 1, snk, detail::VertexFlow::kInf);
    auto flow = net.run(src, snk, static_cast<std::int64_t>(limit));
    if (flow > static_cast<std::int64_t>(limit)) return std::nullopt;
    auto reach = net.reachable(src);
    std::vector<Vertex> l, s, r;
    for (Vertex v = 0; v < n; ++v) {
        if (reach[2 * v + 1]) l.push_back(v);
        else if (reach[2 * v]) s.push_back(v);
        else r.push_back(v);
    }
    return VertexCutPartition{VertexSet::from_sorted_unchecked(std::move(l)),
                              VertexSet::from_sorted_unchecked(std::move(s)),
                              VertexSet::from_sorted_unchecked(std::move(r))};
}

/// True iff g has no vertex cut of size < f (complete graphs are f-connected for all f).
inline bool is_f_connected(const Graph& g, std::size_t f) {
    if (f == 0 || g.n() <= 1) return true;
    if (!is_connected(g)) return false;
    for (Vertex s = 0; s < g.n(); ++s) {
        for (Vertex t = s + 1; t < g.n(); ++t) {
            if (g.adjacent(s, t)) continue;
            if (min_vertex_separator(g, VertexSet{s}, VertexSet{t}, f - 1, true)) return false;
        }
    }
    return true;
}

/// Vertex connectivity: size of a minimum vertex cut, or n-1 for complete graphs.
inline std::size_t vertex_connectivity(const Graph& g) {
    if (g.n() <= 1) return 0;
    if (!is_connected(g)) return 0;
    std::size_t best = g.n() - 1;
    for (Vertex s = 0; s < g.n(); ++s) {
        for (Vertex t = s + 1; t < g.n(); ++t) {
            if (g.adjacent(s, t)) continue;
            if (best == 0) return 0;
            if (auto cut = min_vertex_separator(g, VertexSet{s}, VertexSet{t}, best - 1, true))
                best = cut->sep.size();
        }
    }
    return best;
}

}  // namespace vcut
