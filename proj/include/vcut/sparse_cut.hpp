#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/expander.hpp"
#include "vcut/graph.hpp"
#include "vcut/ratio.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

enum class CutCase { Balanced, Expander };

constexpr std::string_view to_string(CutCase c) { return c == CutCase::Balanced ? "Balanced" : "Expander"; }

struct SparseCutResult {
    VertexCutPartition cut;
    CutCase case_tag = CutCase::Expander;
    /// Expander case: expansion of G[R] w.r.t. T n R that is actually certified.
    Ratio phi_certified{1, 1};
    /// True when phi_certified is the exact expansion (small graphs); otherwise it is the
    /// trivial 1/|T n R| bound and the expander claim is flagged unverified.
    bool phi_exact = false;
    /// True when the balanced search enumerated every admissible separator.
    bool exhaustive = false;
};

struct SparseCutOptions {
    std::size_t exact_max_n = 18;
    std::uint64_t exact_separator_budget = 400'000;
    std::size_t expansion_exact_max_n = 14;
    std::size_t heuristic_seeds = 8;
};

namespace detail {

inline std::size_t count_in(const VertexSet& a, const std::vector<char>& mask) {
    std::size_t c = 0;
    for (Vertex v : a) c += mask[v] ? 1 : 0;
    return c;
}

/// Orients a cut so L is the side with more terminals and checks the Balanced contract.
inline std::optional<VertexCutPartition> accept_balanced(VertexCutPartition cut, const std::vector<char>& term,
                                                         std::size_t t_total, Ratio eps) {
    if (cut.left.empty() || cut.right.empty()) return std::nullopt;
    const auto ts = count_in(cut.sep, term);
    auto tl = count_in(cut.left, term) + ts;
    auto tr = count_in(cut.right, term) + ts;
    if (tr > tl) {
        std::swap(cut.left, cut.right);
        std::swap(tl, tr);
    }
    if (3 * tr < t_total || 3 * tl < t_total) return std::nullopt;
    if (cut.sep.size() * eps.den > eps.num * tl) return std::nullopt;
    return cut;
}

inline std::vector<Vertex> bfs_order(const Graph& g, Vertex s) {
    std::vector<Vertex> order;
    std::vector<char> seen(g.n(), 0);
    std::queue<Vertex> q;
    seen[s] = 1;
    q.push(s);
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        order.push_back(u);
        for (Vertex w : g.neighbors(u))
            if (!seen[w]) {
                seen[w] = 1;
                q.push(w);
            }
    }
    return order;
}

inline std::size_t max_sep_size(Ratio eps, std::size_t t_total) { return eps.num * t_total / eps.den; }

inline std::optional<VertexCutPartition> exact_balanced(const Graph& g, const VertexSet& t_set,
                                                        const std::vector<char>& term, Ratio eps) {
    std::optional<VertexCutPartition> found;
    auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    for_each_subset_up_to(all.span(), max_sep_size(eps, t_set.size()), [&](const VertexSet& sep) {
        auto split = best_split_for(g, sep, term);
        if (!split) return true;
        if (auto c = accept_balanced(split->cut, term, t_set.size(), eps)) {
            found = std::move(c);
            return false;
        }
        return true;
    });
    return found;
}

/// Min vertex separators between the first and last thirds of the terminals in BFS
/// orders from a few spread-out seeds; the smallest admissible one wins.
inline std::optional<VertexCutPartition> heuristic_balanced(const Graph& g, const VertexSet& t_set,
                                                            const std::vector<char>& term, Ratio eps,
                                                            std::size_t seeds) {
    const std::size_t limit = max_sep_size(eps, t_set.size());
    const std::size_t third = (t_set.size() + 2) / 3;
    std::optional<VertexCutPartition> best;
    Vertex seed = t_set.front();
    std::vector<char> used(g.n(), 0);
    for (std::size_t round = 0; round < seeds; ++round) {
        used[seed] = 1;
        auto order = bfs_order(g, seed);
        std::vector<Vertex> terms;
        for (Vertex v : order)
            if (term[v]) terms.push_back(v);
        VertexSet a(std::vector<Vertex>(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(third)));
        VertexSet b(std::vector<Vertex>(terms.end() - static_cast<std::ptrdiff_t>(third), terms.end()));
        if (!a.intersects(b)) {
            auto cap = best ? best->sep.size() : limit + 1;
            if (cap > 0) {
                if (auto cut = min_vertex_separator(g, a, b, cap - 1, false)) {
                    if (auto ok = accept_balanced(*cut, term, t_set.size(), eps)) best = std::move(ok);
                }
            }
        }
        // next seed: the farthest terminal not yet used
        bool next = false;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it)
            if (!used[*it]) {
                seed = *it;
                next = true;
                break;
            }
        if (!next) break;
    }
    return best;
}

}  // namespace detail

/// Finds a sparse balanced T-cut, or falls back to the Expander case with L = S = {} and
/// R = V. Works in the IDs of `g`.
inline SparseCutResult find_balanced_or_expander(const Graph& g, const VertexSet& t_set, Ratio eps, std::size_t f,
                                                 const SparseCutOptions& opt = {}) {
    (void)f;
    require(!t_set.empty(), ErrorKind::InvalidParams, "empty terminal set");
    t_set.check_range(g.n(), "terminal set");
    require(is_connected(g), ErrorKind::DisconnectedInput, "cut finder input not connected");
    auto term = detail::terminal_mask(g.n(), t_set);
    SparseCutResult res;
    const auto max_sep = std::min(detail::max_sep_size(eps, t_set.size()), g.n());
    const bool exact = g.n() <= opt.exact_max_n && count_subsets_up_to(g.n(), max_sep) <= opt.exact_separator_budget;
    std::optional<VertexCutPartition> cut =
        exact ? detail::exact_balanced(g, t_set, term, eps)
              : detail::heuristic_balanced(g, t_set, term, eps, opt.heuristic_seeds);
    res.exhaustive = exact;
    if (cut) {
        res.case_tag = CutCase::Balanced;
        res.cut = std::move(*cut);
        return res;
    }
    res.case_tag = CutCase::Expander;
    res.cut = {VertexSet{}, VertexSet{}, VertexSet::range(static_cast<Vertex>(g.n()))};
    if (g.n() <= opt.expansion_exact_max_n) {
        res.phi_certified = terminal_expansion(g, t_set);
        res.phi_exact = true;
    } else {
        res.phi_certified = Ratio(1, t_set.size());
    }
    return res;
}

/// Checks a result against the finder contract; returns a description of the first
/// violation, or nothing.
inline std::optional<std::string> check_sparse_cut(const Graph& g, const VertexSet& t_set, Ratio eps,
                                                   const SparseCutResult& r) {
    if (!is_valid_partition(g, r.cut)) return "not a partition without L-R edges";
    auto term = detail::terminal_mask(g.n(), t_set);
    const auto ts = detail::count_in(r.cut.sep, term);
    const auto tl = detail::count_in(r.cut.left, term) + ts;
    const auto tr = detail::count_in(r.cut.right, term) + ts;
    if (r.cut.sep.size() * eps.den > eps.num * tl && !(r.cut.left.empty() && r.cut.sep.empty()))
        return "separator not sparse";
    if (r.case_tag == CutCase::Balanced) {
        if (r.cut.left.empty() || r.cut.right.empty()) return "balanced cut with empty side";
        if (3 * tl < t_set.size() || 3 * tr < t_set.size()) return "cut not balanced";
    } else {
        if (2 * detail::count_in(r.cut.right, term) < t_set.size()) return "expander side holds too few terminals";
    }
    return std::nullopt;
}

}  // namespace vcut
