#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/graph.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

enum class GenKind { Random, FConnected, LBFamily, LBPath, OVGraph, OuMvGraph };

constexpr std::string_view to_string(GenKind k) {
    switch (k) {
        case GenKind::Random: return "random";
        case GenKind::FConnected: return "fconnected";
        case GenKind::LBFamily: return "lb-family";
        case GenKind::LBPath: return "lb-path";
        case GenKind::OVGraph: return "ov";
        case GenKind::OuMvGraph: return "oumv";
    }
    return "?";
}

/// A generated graph together with the manifest recording how it was made.
struct Generated {
    Graph graph;
    nlohmann::json manifest;
};

inline nlohmann::json gen_manifest(GenKind kind, const Graph& g, nlohmann::json params) {
    return {{"schema_version", 1}, {"kind", std::string(to_string(kind))}, {"params", std::move(params)},
            {"n", g.n()}, {"m", g.m()}};
}

namespace detail {

/// Joins the components of g by adding an edge between the smallest vertices of
/// consecutive components.
inline Graph connect_components(std::size_t n, std::vector<Edge> edges) {
    Graph g(n, edges);
    const auto comps = components_without(g, std::vector<char>(n, 0));
    std::vector<Vertex> first(comps.count, 0);
    std::vector<char> seen(comps.count, 0);
    for (Vertex v = 0; v < n; ++v) {
        auto c = static_cast<std::size_t>(comps.label[v]);
        if (!seen[c]) {
            seen[c] = 1;
            first[c] = v;
        }
    }
    for (std::size_t c = 1; c < comps.count; ++c) edges.emplace_back(first[c - 1], first[c]);
    return Graph(n, std::move(edges));
}

}  // namespace detail

/// G(n, p), optionally patched to be connected.
inline Generated gen_random(std::size_t n, double p, std::uint64_t seed, bool connected = false) {
    require(n >= 1, ErrorKind::InvalidParams, "n must be positive");
    require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidParams, "p must lie in [0,1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    Graph g = connected ? detail::connect_components(n, std::move(edges)) : Graph(n, std::move(edges));
    auto m = gen_manifest(GenKind::Random, g, {{"n", n}, {"p", p}, {"seed", seed}, {"connected", connected}});
    return {std::move(g), std::move(m)};
}

/// Uniform graph with exactly m edges, optionally patched to be connected.
inline Generated gen_random_m(std::size_t n, std::size_t m, std::uint64_t seed, bool connected = false) {
    require(n >= 1, ErrorKind::InvalidParams, "n must be positive");
    require(m <= n * (n - 1) / 2, ErrorKind::InvalidParams, "too many edges requested");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    std::set<Edge> chosen;
    while (chosen.size() < m) {
        Vertex u = pick(rng), v = pick(rng);
        if (u == v) continue;
        chosen.emplace(std::min(u, v), std::max(u, v));
    }
    std::vector<Edge> edges(chosen.begin(), chosen.end());
    Graph g = connected ? detail::connect_components(n, std::move(edges)) : Graph(n, std::move(edges));
    auto man = gen_manifest(GenKind::Random, g, {{"n", n}, {"m", m}, {"seed", seed}, {"connected", connected}});
    return {std::move(g), std::move(man)};
}

/// Harary graph H_{k,n}: the sparsest k-connected graph on n vertices.
inline Graph harary(std::size_t k, std::size_t n) {
    require(k >= 1 && k < n, ErrorKind::InvalidParams, "Harary graph needs 1 <= k < n");
    std::set<Edge> edges;
    auto add = [&](std::size_t a, std::size_t b) {
        a %= n;
        b %= n;
        if (a != b) edges.emplace(static_cast<Vertex>(std::min(a, b)), static_cast<Vertex>(std::max(a, b)));
    };
    const std::size_t r = k / 2;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 1; d <= std::max<std::size_t>(r, 1); ++d)
            if (d <= r || k == 1) add(i, i + d);
    if (k % 2 == 1 && k > 1) {
        if (n % 2 == 0) {
            for (std::size_t i = 0; i < n / 2; ++i) add(i, i + n / 2);
        } else {
            for (std::size_t i = 0; i <= (n - 1) / 2; ++i) add(i, i + (n + 1) / 2);
        }
    }
    return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

/// f-connected graph: a Harary graph with extra random edges and a random relabelling.
/// Certified by exact vertex-connectivity checks when n <= certify_max_n; above that the
/// guarantee rests on the construction and the manifest says so.
inline Generated gen_f_connected(std::size_t n, std::size_t f, std::uint64_t seed, double extra_p = 0.1,
                                 std::size_t certify_max_n = 64) {
    require(f >= 1 && f < n, ErrorKind::InvalidParams, "need 1 <= f < n");
    require(extra_p >= 0.0 && extra_p <= 1.0, ErrorKind::InvalidParams, "extra edge probability must lie in [0,1]");
    std::mt19937_64 rng(seed);
    const Graph base = harary(f, n);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::set<Edge> edges;
    for (auto [u, v] : base.edges()) edges.emplace(std::min(perm[u], perm[v]), std::max(perm[u], perm[v]));
    std::bernoulli_distribution coin(extra_p);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace(u, v);
    Graph g(n, std::vector<Edge>(edges.begin(), edges.end()));
    std::string certified = "construction";
    if (n <= certify_max_n) {
        require(is_f_connected(g, f), ErrorKind::CertificationFailed,
                "generated graph is not " + std::to_string(f) + "-connected");
        certified = "exact";
    }
    auto m = gen_manifest(GenKind::FConnected, g,
                          {{"n", n}, {"f", f}, {"seed", seed}, {"extra_p", extra_p}, {"certified", certified}});
    return {std::move(g), std::move(m)};
}

/// Lower-bound family: U = {0..n/2-1}, W = {n/2..n-1} a clique, u_i joined to a distinct
/// f-subset F_i of W.
struct LbFamily {
    Graph graph;
    std::vector<VertexSet> collection;  // F_i, neighbourhood of u_i = i
    VertexSet u, w;
    nlohmann::json manifest;
};

inline LbFamily gen_lb_family(std::size_t n, std::size_t f, std::uint64_t seed) {
    require(n % 2 == 0, ErrorKind::InvalidParams, "n must be even");
    require(f >= 2 && 4 * f <= n, ErrorKind::InvalidParams, "need 2 <= f <= n/4");
    const std::size_t half = n / 2;
    LbFamily out;
    out.u = VertexSet::range(static_cast<Vertex>(half));
    std::vector<Vertex> w(half);
    std::iota(w.begin(), w.end(), static_cast<Vertex>(half));
    out.w = VertexSet::from_sorted_unchecked(w);

    std::mt19937_64 rng(seed);
    std::set<VertexSet> seen;
    while (out.collection.size() < half) {
        std::vector<Vertex> pick;
        std::sample(w.begin(), w.end(), std::back_inserter(pick), static_cast<std::ptrdiff_t>(f), rng);
        auto s = VertexSet::from_sorted_unchecked(std::move(pick));
        if (seen.insert(s).second) out.collection.push_back(std::move(s));
    }
    std::vector<Edge> edges;
    for (Vertex a = static_cast<Vertex>(half); a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    for (std::size_t i = 0; i < half; ++i)
        for (Vertex x : out.collection[i]) edges.emplace_back(static_cast<Vertex>(i), x);
    out.graph = Graph(n, std::move(edges));
    nlohmann::json coll = nlohmann::json::array();
    for (const auto& s : out.collection) coll.push_back(std::vector<Vertex>(s.begin(), s.end()));
    out.manifest = gen_manifest(GenKind::LBFamily, out.graph, {{"n", n}, {"f", f}, {"seed", seed}});
    out.manifest["collection"] = std::move(coll);
    return out;
}

/// Path v_1..v_n (IDs 0..n-1) with an optional chord (v_{2k-1}, v_{2k+1}) for each
/// 1 <= k < n/2. chords[k-1] says whether chord k is present.
struct LbPath {
    Graph graph;
    std::vector<bool> chords;
    nlohmann::json manifest;

    /// The query that reveals chord k: the single vertex v_{2k}.
    static VertexSet query_for(std::size_t k) { return {static_cast<Vertex>(2 * k - 1)}; }
};

/// Number of chord slots: k ranges over 1 <= k < n/2.
inline std::size_t lb_path_chord_count(std::size_t n) { return n >= 1 ? (n - 1) / 2 : 0; }

inline LbPath gen_lb_path_with(std::size_t n, std::vector<bool> chords) {
    require(n >= 3, ErrorKind::InvalidParams, "path needs n >= 3");
    const std::size_t count = lb_path_chord_count(n);
    require(chords.size() == count, ErrorKind::InvalidParams,
            "expected " + std::to_string(count) + " chord bits, got " + std::to_string(chords.size()));
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    for (std::size_t k = 1; k <= count; ++k)
        if (chords[k - 1]) edges.emplace_back(static_cast<Vertex>(2 * k - 2), static_cast<Vertex>(2 * k));
    LbPath p;
    p.graph = Graph(n, std::move(edges));
    p.chords = std::move(chords);
    p.manifest = gen_manifest(GenKind::LBPath, p.graph, {{"n", n}});
    p.manifest["chords"] = p.chords;
    return p;
}

inline LbPath gen_lb_path(std::size_t n, std::uint64_t seed) {
    require(n >= 3, ErrorKind::InvalidParams, "path needs n >= 3");
    const std::size_t count = lb_path_chord_count(n);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<bool> bits(count);
    for (std::size_t k = 0; k < count; ++k) bits[k] = coin(rng);
    auto p = gen_lb_path_with(n, std::move(bits));
    p.manifest["params"]["seed"] = seed;
    return p;
}

using BitVector = std::vector<std::uint8_t>;  // entries 0 or 1

/// OV graph: x_a for each vector (IDs 0..|A|-1), y_1..y_f (IDs |A|..|A|+f-1), z last.
/// x_a ~ y_i iff a_i = 1, and every y_i ~ z. F_b = {y_i : b_i = 0}.
struct OvGraph {
    Graph graph;
    std::size_t dim = 0;
    std::size_t count = 0;
    nlohmann::json manifest;

    VertexSet query_for(const BitVector& b) const {
        require(b.size() == dim, ErrorKind::InvalidParams, "query vector has the wrong length");
        std::vector<Vertex> f;
        for (std::size_t i = 0; i < dim; ++i)
            if (!b[i]) f.push_back(static_cast<Vertex>(count + i));
        return VertexSet::from_sorted_unchecked(std::move(f));
    }
};

inline OvGraph gen_ov_graph(const std::vector<BitVector>& a) {
    require(!a.empty(), ErrorKind::InvalidParams, "need at least one vector");
    const std::size_t dim = a.front().size();
    require(dim >= 1, ErrorKind::InvalidParams, "vectors must be nonempty");
    std::vector<Edge> edges;
    const auto z = static_cast<Vertex>(a.size() + dim);
    for (std::size_t j = 0; j < a.size(); ++j) {
        require(a[j].size() == dim, ErrorKind::InvalidParams, "vectors differ in length");
        bool any = false;
        for (std::size_t i = 0; i < dim; ++i) {
            require(a[j][i] <= 1, ErrorKind::InvalidParams, "vector entries must be 0 or 1");
            if (a[j][i]) {
                edges.emplace_back(static_cast<Vertex>(j), static_cast<Vertex>(a.size() + i));
                any = true;
            }
        }
        require(any, ErrorKind::InvalidParams, "zero vector would leave x_a isolated");
    }
    for (std::size_t i = 0; i < dim; ++i) edges.emplace_back(static_cast<Vertex>(a.size() + i), z);
    OvGraph o;
    o.graph = Graph(a.size() + dim + 1, std::move(edges));
    o.dim = dim;
    o.count = a.size();
    o.manifest = gen_manifest(GenKind::OVGraph, o.graph, {{"vectors", a}});
    return o;
}

/// OuMv graph: cliques A = {0..k-1} and B = {k..2k-1}, a_i ~ b_j iff M[i][j] = 1.
/// Query (u, v) maps to F = {a_i : u_i = 0} u {b_j : v_j = 0}.
struct OumvGraph {
    Graph graph;
    std::size_t k = 0;
    nlohmann::json manifest;

    VertexSet query_for(const BitVector& u, const BitVector& v) const {
        require(u.size() == k && v.size() == k, ErrorKind::InvalidParams, "query vectors have the wrong length");
        std::vector<Vertex> f;
        for (std::size_t i = 0; i < k; ++i)
            if (!u[i]) f.push_back(static_cast<Vertex>(i));
        for (std::size_t j = 0; j < k; ++j)
            if (!v[j]) f.push_back(static_cast<Vertex>(k + j));
        return VertexSet::from_sorted_unchecked(std::move(f));
    }
};

inline OumvGraph gen_oumv_graph(const std::vector<BitVector>& m) {
    const std::size_t k = m.size();
    require(k >= 1, ErrorKind::InvalidParams, "matrix must be nonempty");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < k; ++i) {
        require(m[i].size() == k, ErrorKind::InvalidParams, "matrix must be square");
        for (std::size_t j = 0; j < k; ++j) {
            require(m[i][j] <= 1, ErrorKind::InvalidParams, "matrix entries must be 0 or 1");
            if (m[i][j]) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(k + j));
        }
    }
    for (Vertex a = 0; a < k; ++a)
        for (Vertex b = a + 1; b < k; ++b) {
            edges.emplace_back(a, b);
            edges.emplace_back(static_cast<Vertex>(k + a), static_cast<Vertex>(k + b));
        }
    OumvGraph o;
    o.graph = Graph(2 * k, std::move(edges));
    o.k = k;
    o.manifest = gen_manifest(GenKind::OuMvGraph, o.graph, {{"matrix", m}});
    return o;
}

}  // namespace vcut
