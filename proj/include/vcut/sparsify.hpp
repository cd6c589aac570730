#pragma once

#include <queue>
#include <utility>
#include <vector>

#include "vcut/error.hpp"
#include "vcut/graph.hpp"

namespace vcut {

struct ForestEdge {
    Edge edge;
    std::uint32_t forest;  // 1-based forest index
};

/// Nagamochi-Ibaraki scan: repeatedly scan the unscanned vertex x with the largest
/// counter r (ties by smallest ID); every edge (x,y) to an unscanned y goes to forest
/// r(y)+1 and bumps r(y). Forests E_1, E_2, ... partition E.
inline std::vector<ForestEdge> scan_forests(const Graph& g) {
    const std::size_t n = g.n();
    std::vector<std::uint32_t> r(n, 0);
    std::vector<char> scanned(n, 0);
    using Item = std::pair<std::uint32_t, std::int64_t>;  // (r, -id)
    std::priority_queue<Item> pq;
    for (Vertex v = 0; v < n; ++v) pq.emplace(0, -static_cast<std::int64_t>(v));
    std::vector<ForestEdge> out;
    out.reserve(g.m());
    while (!pq.empty()) {
        auto [rv, neg] = pq.top();
        pq.pop();
        auto x = static_cast<Vertex>(-neg);
        if (scanned[x] || rv != r[x]) continue;
        scanned[x] = 1;
        for (Vertex y : g.neighbors(x)) {
            if (scanned[y]) continue;
            ++r[y];
            out.push_back({{std::min(x, y), std::max(x, y)}, r[y]});
            pq.emplace(r[y], -static_cast<std::int64_t>(y));
        }
    }
    return out;
}

/// Sparse certificate E_1 u ... u E_{f+1}: at most (f+1)n edges, and for every F with
/// |F| <= f, connectivity between vertices outside F matches g - F.
inline Graph sparsify(const Graph& g, std::size_t f) {
    require(f >= 1, ErrorKind::InvalidParams, "sparsify needs f >= 1");
    std::vector<Edge> kept;
    for (const auto& fe : scan_forests(g))
        if (fe.forest <= f + 1) kept.push_back(fe.edge);
    return Graph(g.n(), std::move(kept));
}

}  // namespace vcut
