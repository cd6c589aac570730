#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/expander.hpp"
#include "vcut/io.hpp"
#include "vcut/lr_tree.hpp"
#include "vcut/report.hpp"
#include "vcut/sparsify.hpp"

namespace vcut {

struct TedPair {
    SubGraph graph;  // carries the root-ID map
    VertexSet terminals;
    NodeKind kind = NodeKind::LeafFewT;
    Ratio phi{1, 1};
    bool phi_exact = false;
    std::size_t round = 0;
};

struct TedParams {
    LrParams lr;
    bool sparsify = true;
};

struct TedCollection {
    std::size_t n = 0;
    std::size_t f = 0;
    std::vector<TedPair> pairs;
    Ratio phi{1, 1};                 // smallest certified expansion over expander pairs
    std::size_t few_terminal_bound = 0;  // largest |T_i| admitted for a non-expander pair
    std::size_t rounds = 0;
};

/// Iterates LR trees on (g, T_i) with T_1 = V and T_{i+1} = S*_i, collecting every leaf.
inline TedCollection export_ted(const Graph& g, std::size_t f, const TedParams& p = {}) {
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(is_connected(g), ErrorKind::DisconnectedInput, "input graph is not connected");
    TedCollection ted;
    ted.n = g.n();
    ted.f = f;
    const auto root = SubGraph::root(p.sparsify ? sparsify(g, f) : g);
    // Few-terminal pairs may hold up to (f+1) ceil(c log2 n) terminals, whatever threshold
    // the trees were built with.
    ted.few_terminal_bound = (f + 1) * default_eps(g.n(), p.lr.c).den;
    auto terminals = VertexSet::range(static_cast<Vertex>(g.n()));
    while (!terminals.empty()) {
        auto tree = build_lr_tree(root, terminals, f, p.lr);
        ted.few_terminal_bound = std::max({ted.few_terminal_bound, tree.leaf_threshold, 3 * (f + 1)});
        for (auto& q : tree.nodes) {
            if (!is_leaf(q.kind)) continue;
            TedPair pair{std::move(*q.graph), q.terminals, q.kind, q.phi, q.phi_exact, ted.rounds};
            if (pair.kind == NodeKind::LeafExpander && pair.phi < ted.phi) ted.phi = pair.phi;
            ted.pairs.push_back(std::move(pair));
        }
        ++ted.rounds;
        require(tree.s_star.size() < terminals.size(), ErrorKind::TerminalReductionViolated,
                "terminal set did not shrink during TED export");
        terminals = tree.s_star;
    }
    return ted;
}

struct TedCheckOptions {
    std::size_t exhaustive_max_n = 16;  // enumerate every F up to this n
    std::size_t max_n = 200;            // SizeCapExceeded above this
    std::size_t samples = 4000;         // random F per check when sampling
    std::size_t expander_check_max_n = 16;
    double vertex_factor = 4.0;  // sum |V(G_i)| <= vertex_factor * n * log2(n)^2
    double edge_factor = 4.0;    // sum |E(G_i)| <= edge_factor * (f+1) * n * log2(n)^2
    std::uint64_t seed = 7;
};

namespace detail {

/// Calls fn on every F (|F| <= f) over `universe`, or on a seeded random sample when the
/// universe is too large to enumerate. fn returns false to stop.
template <class Fn>
void for_each_query(const VertexSet& universe, std::size_t f, bool exhaustive, std::size_t samples,
                    std::mt19937_64& rng, Fn&& fn) {
    if (exhaustive) {
        for_each_subset_up_to(universe.span(), f, fn);
        return;
    }
    if (universe.empty()) return;
    std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
    std::uniform_int_distribution<std::size_t> size(1, f);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Vertex> v;
        for (std::size_t k = size(rng); v.size() < std::min(k, universe.size());) {
            Vertex x = universe[pick(rng)];
            if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
        }
        if (!fn(VertexSet::dedup(std::move(v)))) return;
    }
}

}  // namespace detail

/// Checks the four decomposition properties against g: leaf kind, soundness, completeness
/// and lightness. Exhaustive for n <= exhaustive_max_n, sampled above.
inline ValidationReport validate_ted(const TedCollection& ted, const Graph& g, std::size_t f,
                                     const TedCheckOptions& opt = {}) {
    require(g.n() <= opt.max_n, ErrorKind::SizeCapExceeded,
            "graph with " + std::to_string(g.n()) + " vertices exceeds the TED check cap");
    ValidationReport rep;
    const bool exhaustive = g.n() <= opt.exhaustive_max_n;
    std::mt19937_64 rng(opt.seed);
    std::size_t sum_v = 0, sum_e = 0;

    for (std::size_t i = 0; i < ted.pairs.size(); ++i) {
        const auto& p = ted.pairs[i];
        const auto tag = "pair " + std::to_string(i) + ": ";
        sum_v += p.graph.n();
        sum_e += p.graph.m();
        if (!p.terminals.subset_of(p.graph.ids())) rep.violation("kind: " + tag + "terminals outside V(G_i)");
        if (!p.graph.ids().empty() && p.graph.ids().back() >= g.n()) rep.violation("kind: " + tag + "vertex outside V");
        if (p.kind == NodeKind::LeafExpander) {
            if (p.graph.n() <= opt.expander_check_max_n &&
                !is_terminal_expander(p.graph.graph(), p.graph.to_local(p.terminals), ted.phi))
                rep.violation("kind: " + tag + "not a terminal expander at the collection's phi");
        } else if (p.terminals.size() > ted.few_terminal_bound) {
            rep.violation("kind: " + tag + "too many terminals for a few-terminal pair");
        }

        // Soundness: every small cut of G_i is a cut of g.
        const auto local_all = VertexSet::range(static_cast<Vertex>(p.graph.n()));
        detail::for_each_query(local_all, f, p.graph.n() <= opt.exhaustive_max_n, opt.samples, rng,
                               [&](const VertexSet& fl) {
                                   if (is_cut_bruteforce(p.graph.graph(), fl) &&
                                       !is_cut_bruteforce(g, p.graph.to_root(fl))) {
                                       rep.violation("soundness: " + tag + "cut " + p.graph.to_root(fl).to_string() +
                                                     " of G_i is not a cut of G");
                                       return false;
                                   }
                                   return true;
                               });
    }

    // Completeness: every small cut of g separates the terminals of some pair.
    std::size_t cuts = 0;
    detail::for_each_query(VertexSet::range(static_cast<Vertex>(g.n())), f, exhaustive, opt.samples, rng,
                           [&](const VertexSet& fs) {
                               if (!is_cut_bruteforce(g, fs)) return true;
                               ++cuts;
                               for (const auto& p : ted.pairs)
                                   if (separates_terminals(p.graph.graph(), p.graph.to_local(fs),
                                                           p.graph.to_local(p.terminals)))
                                       return true;
                               rep.violation("completeness: cut " + fs.to_string() + " is separated in no pair");
                               return true;
                           });

    const double n = static_cast<double>(std::max<std::size_t>(g.n(), 2));
    const double l2 = std::pow(std::log2(n), 2);
    const double v_bound = opt.vertex_factor * n * l2;
    const double e_bound = opt.edge_factor * static_cast<double>(f + 1) * n * l2;
    if (static_cast<double>(sum_v) > v_bound) rep.violation("lightness: vertex sum above bound");
    if (static_cast<double>(sum_e) > e_bound) rep.violation("lightness: edge sum above bound");

    rep.fact("pairs", std::to_string(ted.pairs.size()));
    rep.fact("rounds", std::to_string(ted.rounds));
    rep.fact("cuts_checked", std::to_string(cuts));
    rep.fact("sum_vertices", std::to_string(sum_v));
    rep.fact("sum_edges", std::to_string(sum_e));
    rep.fact("phi", ted.phi.to_string());
    rep.fact("exhaustive", exhaustive ? "true" : "false");
    return rep;
}

inline nlohmann::json ted_manifest(const TedCollection& ted) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = ted.n;
    j["f"] = ted.f;
    j["rounds"] = ted.rounds;
    j["phi"] = {ted.phi.num, ted.phi.den};
    j["few_terminal_bound"] = ted.few_terminal_bound;
    auto& arr = j["pairs"] = nlohmann::json::array();
    for (std::size_t i = 0; i < ted.pairs.size(); ++i) {
        const auto& p = ted.pairs[i];
        arr.push_back({{"file", "pair_" + std::to_string(i) + ".txt"},
                       {"round", p.round},
                       {"kind", std::string(to_string(p.kind))},
                       {"phi", {p.phi.num, p.phi.den}},
                       {"phi_exact", p.phi_exact},
                       {"vertices", std::vector<Vertex>(p.graph.ids().begin(), p.graph.ids().end())},
                       {"terminals", std::vector<Vertex>(p.terminals.begin(), p.terminals.end())}});
    }
    return j;
}

/// Writes one local-ID edge list per pair plus manifest.json into `dir`.
inline void write_ted_dir(const TedCollection& ted, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto manifest = ted_manifest(ted);
    for (std::size_t i = 0; i < ted.pairs.size(); ++i)
        write_edge_list_file((dir / manifest["pairs"][i]["file"].get<std::string>()).string(), ted.pairs[i].graph.graph());
    std::ofstream out(dir / "manifest.json");
    require(static_cast<bool>(out), ErrorKind::FormatError, "cannot write TED manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

inline NodeKind parse_node_kind(const std::string& s) {
    for (auto k : {NodeKind::InternalBalanced, NodeKind::InternalExpander, NodeKind::LeafFewT, NodeKind::LeafExpander,
                   NodeKind::LeafStepchild})
        if (to_string(k) == s) return k;
    fail(ErrorKind::ParseError, "unknown node kind '" + s + "'");
}

inline TedCollection read_ted_dir(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    require(static_cast<bool>(in), ErrorKind::ParseError, "missing manifest.json in " + dir.string());
    TedCollection ted;
    try {
        const auto j = nlohmann::json::parse(in);
        require(j.at("schema_version").get<int>() == 1, ErrorKind::ParseError, "unsupported TED schema version");
        ted.n = j.at("n").get<std::size_t>();
        ted.f = j.at("f").get<std::size_t>();
        ted.rounds = j.at("rounds").get<std::size_t>();
        ted.phi = Ratio(j.at("phi")[0].get<std::uint64_t>(), j.at("phi")[1].get<std::uint64_t>());
        ted.few_terminal_bound = j.at("few_terminal_bound").get<std::size_t>();
        for (const auto& pj : j.at("pairs")) {
            auto ids = VertexSet(pj.at("vertices").get<std::vector<Vertex>>());
            auto local = read_edge_list_file((dir / pj.at("file").get<std::string>()).string());
            require(local.n() == ids.size(), ErrorKind::ParseError, "pair graph size differs from its vertex map");
            TedPair p{SubGraph(std::move(local), std::move(ids)), VertexSet(pj.at("terminals").get<std::vector<Vertex>>()),
                      parse_node_kind(pj.at("kind").get<std::string>()),
                      Ratio(pj.at("phi")[0].get<std::uint64_t>(), pj.at("phi")[1].get<std::uint64_t>()),
                      pj.at("phi_exact").get<bool>(), pj.at("round").get<std::size_t>()};
            ted.pairs.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("bad TED manifest: ") + e.what());
    }
    return ted;
}

}  // namespace vcut
