#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vcut/error.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

using Edge = std::pair<Vertex, Vertex>;

/// Immutable undirected simple graph over dense IDs 0..n-1.
class Graph {
public:
    Graph() = default;

    /// Rejects self-loops, parallel edges and out-of-range endpoints.
    Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
        for (auto& [u, v] : edges) {
            require(u < n && v < n, ErrorKind::OutOfRange,
                    "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
            require(u != v, ErrorKind::InvalidParams, "self-loop at " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        require(std::adjacent_find(edges.begin(), edges.end()) == edges.end(), ErrorKind::InvalidParams,
                "parallel edge");
        edges_ = std::move(edges);
        build_adjacency();
    }

    /// Drops self-loops and duplicate edges instead of rejecting them.
    static Graph simplified(std::size_t n, std::vector<Edge> edges) {
        std::vector<Edge> clean;
        clean.reserve(edges.size());
        for (auto [u, v] : edges) {
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            clean.emplace_back(u, v);
        }
        std::sort(clean.begin(), clean.end());
        clean.erase(std::unique(clean.begin(), clean.end()), clean.end());
        return Graph(n, std::move(clean));
    }

    static Graph complete(std::size_t n) {
        std::vector<Edge> e;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
        return Graph(n, std::move(e));
    }
    static Graph path(std::size_t n) {
        std::vector<Edge> e;
        for (Vertex u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
        return Graph(n, std::move(e));
    }
    static Graph cycle(std::size_t n) {
        std::vector<Edge> e;
        for (Vertex u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
        if (n >= 3) e.emplace_back(0, static_cast<Vertex>(n - 1));
        return Graph(n, std::move(e));
    }
    /// Star on n vertices with centre 0.
    static Graph star(std::size_t n) {
        std::vector<Edge> e;
        for (Vertex v = 1; v < n; ++v) e.emplace_back(0, v);
        return Graph(n, std::move(e));
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t m() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
    bool adjacent(Vertex u, Vertex v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }
    std::size_t max_degree() const {
        std::size_t d = 0;
        for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    void build_adjacency() {
        offsets_.assign(n_ + 1, 0);
        for (auto [u, v] : edges_) {
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (std::size_t i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
        adj_.resize(2 * edges_.size());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (auto [u, v] : edges_) {
            adj_[fill[u]++] = v;
            adj_[fill[v]++] = u;
        }
        for (Vertex v = 0; v < n_; ++v) std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
    }

    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> adj_;
};

/// A graph whose local vertex i stands for root vertex ids()[i]. IDs ascend, so local
/// order and root order agree.
class SubGraph {
public:
    SubGraph() = default;
    SubGraph(Graph g, VertexSet ids) : graph_(std::move(g)), ids_(std::move(ids)) {
        require(graph_.n() == ids_.size(), ErrorKind::InvalidParams, "id map size mismatch");
    }

    /// The root graph itself, with the identity map.
    static SubGraph root(Graph g) {
        auto ids = VertexSet::range(static_cast<Vertex>(g.n()));
        return SubGraph(std::move(g), std::move(ids));
    }

    const Graph& graph() const noexcept { return graph_; }
    const VertexSet& ids() const noexcept { return ids_; }
    std::size_t n() const noexcept { return graph_.n(); }
    std::size_t m() const noexcept { return graph_.m(); }

    Vertex root_of(Vertex local) const { return ids_[local]; }
    std::optional<Vertex> local_of(Vertex root) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), root);
        if (it == ids_.end() || *it != root) return std::nullopt;
        return static_cast<Vertex>(it - ids_.begin());
    }
    bool contains(Vertex root) const { return ids_.contains(root); }

    /// Local IDs of the members of `roots` present in this graph.
    VertexSet to_local(const VertexSet& roots) const {
        std::vector<Vertex> out;
        for (Vertex r : roots)
            if (auto l = local_of(r)) out.push_back(*l);
        return VertexSet::from_sorted_unchecked(std::move(out));
    }
    VertexSet to_root(const VertexSet& locals) const {
        std::vector<Vertex> out;
        out.reserve(locals.size());
        for (Vertex l : locals) out.push_back(ids_[l]);
        return VertexSet::from_sorted_unchecked(std::move(out));
    }

    /// Root-ID edge list.
    std::vector<Edge> root_edges() const {
        std::vector<Edge> out;
        out.reserve(graph_.m());
        for (auto [u, v] : graph_.edges()) out.emplace_back(ids_[u], ids_[v]);
        return out;
    }

private:
    Graph graph_;
    VertexSet ids_;
};

/// Builds the graph on root vertex set `vertices` from root-ID edges (edges touching
/// vertices outside the set are dropped, duplicates merged).
inline SubGraph make_subgraph(const VertexSet& vertices, const std::vector<Edge>& root_edges) {
    std::vector<Edge> local;
    local.reserve(root_edges.size());
    for (auto [u, v] : root_edges) {
        auto lu = std::lower_bound(vertices.begin(), vertices.end(), u);
        auto lv = std::lower_bound(vertices.begin(), vertices.end(), v);
        if (lu == vertices.end() || *lu != u || lv == vertices.end() || *lv != v) continue;
        local.emplace_back(static_cast<Vertex>(lu - vertices.begin()), static_cast<Vertex>(lv - vertices.begin()));
    }
    return SubGraph(Graph::simplified(vertices.size(), std::move(local)), vertices);
}

/// Subgraph induced on `keep` (root IDs of `g`).
inline SubGraph induced(const SubGraph& g, const VertexSet& keep) {
    return make_subgraph(keep, g.root_edges());
}

}  // namespace vcut
