#pragma once

#include <string>
#include <vector>

#include "brute.hpp"
#include "vcut/vcut.hpp"

namespace fixtures {

using vcut::Graph;
using vcut::Vertex;
using vcut::VertexSet;

/// Two K5 blocks {0..4} and {4..8} sharing vertex 4.
inline Graph two_k5() {
    std::vector<vcut::Edge> e;
    for (Vertex base : {0u, 4u})
        for (Vertex a = base; a < base + 5; ++a)
            for (Vertex b = a + 1; b < base + 5; ++b) e.emplace_back(a, b);
    return Graph(9, e);
}

inline brute::Matrix matrix(const Graph& g) {
    brute::Edges e;
    for (auto [u, v] : g.edges()) e.emplace_back(u, v);
    return brute::Matrix(g.n(), e);
}

inline std::vector<unsigned> ids(const VertexSet& s) { return {s.begin(), s.end()}; }

inline VertexSet set_of(const std::vector<unsigned>& v) { return VertexSet(std::vector<Vertex>(v.begin(), v.end())); }

struct Named {
    std::string name;
    Graph g;
};

/// Fixed small suite: named graphs, 30 seeded random graphs with n in [8,20] and 10
/// seeded f-connected graphs.
inline std::vector<Named> small_suite() {
    std::vector<Named> out{{"P4", Graph::path(4)},   {"C6", Graph::cycle(6)},      {"K4", Graph::complete(4)},
                           {"S8", Graph::star(8)},   {"two-K5", two_k5()}};
    for (std::uint64_t s = 1; s <= 30; ++s) {
        const std::size_t n = 8 + (s * 7) % 13;
        const double p = 0.15 + 0.05 * static_cast<double>(s % 6);
        out.push_back({"random-" + std::to_string(s), vcut::gen_random(n, p, s, true).graph});
    }
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const std::size_t n = 8 + (s * 5) % 9;
        const std::size_t f = 2 + s % 2;
        out.push_back({"fconnected-" + std::to_string(s), vcut::gen_f_connected(n, f, s).graph});
    }
    return out;
}

}  // namespace fixtures
