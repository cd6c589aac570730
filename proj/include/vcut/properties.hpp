#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vcut/connectivity.hpp"
#include "vcut/cut_detector.hpp"
#include "vcut/detectors.hpp"
#include "vcut/error.hpp"
#include "vcut/labels.hpp"
#include "vcut/left_right.hpp"
#include "vcut/lr_tree.hpp"
#include "vcut/oracle.hpp"
#include "vcut/report.hpp"

namespace vcut {

struct PropertyOptions {
    std::size_t max_n = 12;            // SizeCapExceeded above this
    std::size_t max_sep = 3;           // separators enumerated up to this size
    std::size_t max_components = 10;   // bipartitions enumerated only below this many components
    std::size_t terminal_samples = 2;  // random terminal sets tried besides T = V
    std::uint64_t seed = 11;
};

/// Calls fn(L, S, R) for every vertex cut with 1 <= |S| <= max_sep and L, R nonempty
/// unions of components of g - S.
template <class Fn>
void for_each_vertex_cut(const Graph& g, std::size_t max_sep, std::size_t max_components, Fn&& fn) {
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    for_each_subset_up_to(all.span(), max_sep, [&](const VertexSet& sep) {
        if (sep.empty()) return true;
        const auto comps = components_without(g, sep);
        if (comps.count < 2 || comps.count > max_components) return true;
        // Component 0 always goes left, so each unordered split is seen once.
        const std::uint32_t splits = 1u << (comps.count - 1);
        for (std::uint32_t mask = 0; mask + 1 < splits; ++mask) {
            std::vector<Vertex> l, r;
            for (Vertex v = 0; v < g.n(); ++v) {
                const auto c = comps.label[v];
                if (c < 0) continue;
                const bool right = c > 0 && ((~mask >> (c - 1)) & 1u);
                (right ? r : l).push_back(v);
            }
            if (r.empty()) continue;
            VertexCutPartition cut{VertexSet::from_sorted_unchecked(std::move(l)), sep,
                                   VertexSet::from_sorted_unchecked(std::move(r))};
            if (!fn(cut)) return false;
        }
        return true;
    });
}

namespace detail {

inline std::vector<VertexSet> property_terminal_sets(const Graph& g, const PropertyOptions& opt) {
    std::vector<VertexSet> out{VertexSet::range(static_cast<Vertex>(g.n()))};
    std::mt19937_64 rng(opt.seed);
    std::vector<Vertex> pool(out.front().begin(), out.front().end());
    for (std::size_t i = 0; i < opt.terminal_samples && g.n() >= 2; ++i) {
        std::uniform_int_distribution<std::size_t> size(2, g.n());
        std::vector<Vertex> pick;
        std::sample(pool.begin(), pool.end(), std::back_inserter(pick), size(rng), rng);
        out.push_back(VertexSet(std::move(pick)));
    }
    return out;
}

/// True iff every pair separated in `side - F` is also separated in g - F.
inline bool side_separations_hold_in(const Graph& g, const SubGraph& side, const VertexSet& f_root) {
    const auto in_side = components_without(side.graph(), side.to_local(f_root));
    const auto in_g = components_without(g, f_root);
    std::vector<std::int32_t> seen(in_g.count, -1);
    for (Vertex x = 0; x < side.n(); ++x) {
        const auto ls = in_side.label[x];
        if (ls < 0) continue;
        auto& slot = seen[static_cast<std::size_t>(in_g.label[side.ids()[x]])];
        if (slot < 0) slot = ls;
        else if (slot != ls) return false;
    }
    return true;
}

inline bool separates_in(const SubGraph& side, const VertexSet& f_root, const VertexSet& t_root) {
    return separates_terminals(side.graph(), side.to_local(f_root.intersect(side.ids())),
                               side.to_local(t_root.intersect(side.ids())));
}

}  // namespace detail

/// Completeness, soundness and stepchild properties of the f-left/right graphs, plus the
/// arboricity proxy, over every enumerated cut and every F with |F| <= f.
inline ValidationReport check_left_right_properties(const Graph& g, std::size_t f, const PropertyOptions& opt = {}) {
    require(g.n() <= opt.max_n, ErrorKind::SizeCapExceeded,
            "property suites enumerate cuts; n=" + std::to_string(g.n()) + " exceeds " + std::to_string(opt.max_n));
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(is_connected(g), ErrorKind::DisconnectedInput, "input graph is not connected");
    ValidationReport rep;
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    const auto alpha = degeneracy(g);
    std::size_t cuts = 0, queries = 0, stepchild_cases = 0;
    for (const auto& t_set : detail::property_terminal_sets(g, opt)) {
        for_each_vertex_cut(g, opt.max_sep, opt.max_components, [&](const VertexCutPartition& cut) {
            ++cuts;
            const auto lr = build_left_right(g, t_set, cut, f);
            const auto tag = "T=" + t_set.to_string() + " S=" + cut.sep.to_string() + " L=" + cut.left.to_string() + ": ";
            for (const auto* side : {&lr.g_left, &lr.g_right})
                if (side->m() > (alpha + f + 1) * (side->n() - 1))
                    rep.violation("arboricity: " + tag + "side graph above the alpha+f+1 edge budget");

            for_each_subset_up_to(all.span(), f, [&](const VertexSet& fs) {
                ++queries;
                if (separates_terminals(g, fs, t_set) && !separates_terminals(g, fs, cut.sep) &&
                    !detail::separates_in(lr.g_left, fs, t_set) && !detail::separates_in(lr.g_right, fs, t_set))
                    rep.violation("completeness: " + tag + "F=" + fs.to_string() + " separated in neither side");
                for (const auto* side : {&lr.g_left, &lr.g_right})
                    if (fs.subset_of(side->ids()) && !detail::side_separations_hold_in(g, *side, fs))
                        rep.violation("soundness: " + tag + "F=" + fs.to_string() + " separates a pair only in a side graph");
                return true;
            });

            // Stepchild, stated for G_R and checked symmetrically for G_L.
            const auto u_s = pick_representatives(cut.sep.intersect(t_set), t_set, f + 1);
            const auto u_all = lr.u_left.unite(lr.u_right).unite(u_s);
            struct Side {
                const SubGraph* graph;
                const VertexSet* own;
            };
            for (auto [side, own] : {Side{&lr.g_right, &cut.right}, Side{&lr.g_left, &cut.left}}) {
                const auto t_side = t_set.intersect(side->ids());
                const auto t_own = t_set.intersect(*own);
                for_each_subset_up_to(side->ids().span(), f, [&](const VertexSet& fs) {
                    const auto local = side->to_local(fs);
                    if (!separates_terminals(side->graph(), local, side->to_local(t_side))) return true;
                    if (separates_terminals(side->graph(), local, side->to_local(cut.sep))) return true;
                    if (separates_terminals(side->graph(), local, side->to_local(t_own))) return true;
                    ++stepchild_cases;
                    if (!separates_terminals(side->graph(), local, side->to_local(u_all.intersect(side->ids()))))
                        rep.violation("stepchild: " + tag + "F=" + fs.to_string() + " does not separate U_L u U_R u U_S");
                    return true;
                });
            }
            return true;
        });
    }
    rep.fact("cuts", std::to_string(cuts));
    rep.fact("queries", std::to_string(queries));
    rep.fact("stepchild_cases", std::to_string(stepchild_cases));
    return rep;
}

/// F is a cut iff it separates S, or contains S with G - (S u F) disconnected, or leaves a
/// component of G - (S u F) whose whole neighbourhood lies in F. Checked for all S with
/// |S| <= max_sep + 1 and all F with |F| <= f.
inline ValidationReport check_us_trichotomy(const Graph& g, std::size_t f, const PropertyOptions& opt = {}) {
    require(g.n() <= opt.max_n, ErrorKind::SizeCapExceeded,
            "property suites enumerate cuts; n=" + std::to_string(g.n()) + " exceeds " + std::to_string(opt.max_n));
    require(is_connected(g), ErrorKind::DisconnectedInput, "input graph is not connected");
    ValidationReport rep;
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    std::vector<char> is_cut;
    std::vector<VertexSet> fsets;
    for_each_subset_up_to(all.span(), f, [&](const VertexSet& fs) {
        fsets.push_back(fs);
        is_cut.push_back(disconnected_after_removal(g, fs));
        return true;
    });
    std::size_t checked = 0;
    for_each_subset_up_to(all.span(), opt.max_sep + 1, [&](const VertexSet& s) {
        for (std::size_t i = 0; i < fsets.size(); ++i) {
            ++checked;
            const auto o = us_options(g, s, fsets[i]);
            const bool any = o.separates_s || o.superset_disconnected || o.component_swallowed;
            if (any != static_cast<bool>(is_cut[i]))
                rep.violation("us: S=" + s.to_string() + " F=" + fsets[i].to_string() +
                              (any ? " satisfies an option but is not a cut" : " is a cut matching no option"));
        }
        return true;
    });
    rep.fact("pairs", std::to_string(checked));
    return rep;
}

/// Properties that need g to be f-connected: the strengthened completeness (F inside one
/// side plus the separator), inheritance of f-connectivity by both side graphs, and the
/// warm-up claim that every x in a minimum cut has two separated neighbours.
inline ValidationReport check_fconnected_properties(const Graph& g, std::size_t f, const PropertyOptions& opt = {}) {
    require(g.n() <= opt.max_n, ErrorKind::SizeCapExceeded,
            "property suites enumerate cuts; n=" + std::to_string(g.n()) + " exceeds " + std::to_string(opt.max_n));
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(is_f_connected(g, f), ErrorKind::NotFConnected, "graph is not " + std::to_string(f) + "-connected");
    ValidationReport rep = check_fconnected_warmup(g, f, opt.max_n);
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    std::size_t cuts = 0, cases = 0, both = 0;
    for (const auto& t_set : detail::property_terminal_sets(g, opt)) {
        for_each_vertex_cut(g, opt.max_sep, opt.max_components, [&](const VertexCutPartition& cut) {
            ++cuts;
            const auto lr = build_left_right(g, t_set, cut, f);
            const auto tag = "T=" + t_set.to_string() + " S=" + cut.sep.to_string() + " L=" + cut.left.to_string() + ": ";
            if (!is_f_connected(lr.g_left.graph(), f) || !is_f_connected(lr.g_right.graph(), f))
                rep.violation("inheritance: " + tag + "a side graph is not " + std::to_string(f) + "-connected");
            const auto left_s = cut.left.unite(cut.sep);
            const auto right_s = cut.right.unite(cut.sep);
            for_each_subset_up_to(all.span(), f, [&](const VertexSet& fs) {
                if (fs.size() != f) return true;
                if (!separates_terminals(g, fs, t_set) || separates_terminals(g, fs, cut.sep)) return true;
                ++cases;
                const bool left = fs.subset_of(left_s) && detail::separates_in(lr.g_left, fs, t_set);
                const bool right = fs.subset_of(right_s) && detail::separates_in(lr.g_right, fs, t_set);
                if (left && right) ++both;
                if (!left && !right)
                    rep.violation("fconn-strengthening: " + tag + "F=" + fs.to_string() + " fits neither side");
                return true;
            });
            return true;
        });
    }
    rep.fact("fconn_cuts", std::to_string(cuts));
    rep.fact("fconn_cases", std::to_string(cases));
    rep.fact("fconn_both_sides", std::to_string(both));
    return rep;
}

/// Whenever K inside F (|F| <= f < n/2) has |A_K| < n - |F|, or |A_K| >= n - |F| with B_K
/// not inside F, F must be a cut.
inline ValidationReport check_explicit_cut(const Graph& g, std::size_t f, const PropertyOptions& opt = {}) {
    require(g.n() <= opt.max_n, ErrorKind::SizeCapExceeded,
            "property suites enumerate cuts; n=" + std::to_string(g.n()) + " exceeds " + std::to_string(opt.max_n));
    require(2 * f < g.n(), ErrorKind::FTooLarge, "explicit-cut property needs f < n/2");
    ValidationReport rep;
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    std::size_t certified = 0;
    for_each_subset_up_to(all.span(), f, [&](const VertexSet& fs) {
        const bool cut = disconnected_after_removal(g, fs);
        for_each_subset_up_to(fs.span(), fs.size(), [&](const VertexSet& k) {
            const auto e = make_explicit_label(g, k, f);
            const bool cond = e.size_a + fs.size() < g.n() || (e.b_set && !e.b_set->subset_of(fs));
            if (!cond) return true;
            ++certified;
            if (!cut) rep.violation("explicit-cut: K=" + k.to_string() + " certifies F=" + fs.to_string() + " which is not a cut");
            return true;
        });
        return true;
    });
    rep.fact("certified", std::to_string(certified));
    return rep;
}

/// Runs every property suite that applies to g. The f-connected suites use
/// min(f, vertex connectivity) so any 1-connected input contributes.
inline ValidationReport run_property_suites(const Graph& g, std::size_t f, const PropertyOptions& opt = {}) {
    ValidationReport rep;
    auto absorb = [&](const ValidationReport& r, const std::string& prefix) {
        for (const auto& v : r.violations) rep.violation(v);
        for (const auto& [k, v] : r.facts) rep.fact(prefix + k, v);
    };
    absorb(check_left_right_properties(g, f, opt), "lr_");
    absorb(check_us_trichotomy(g, f, opt), "us_");
    if (2 * f < g.n()) absorb(check_explicit_cut(g, f, opt), "explicit_");
    const auto kappa = std::min(f, vertex_connectivity(g));
    if (kappa >= 1 && kappa < g.n() - 1) absorb(check_fconnected_properties(g, kappa, opt), "");
    rep.fact("fconnected_f", std::to_string(kappa));
    return rep;
}

/// Per-query laws for one detector query: branch nodes with |F_q| = x number at most
/// 2^(|F|-x), and the query visits at most 8 (depth+1) 2^|F| nodes. In f-connected mode the
/// query is one root-to-leaf path plus stepchildren and never branches.
inline void check_query_laws(const TerminalCutDetector& d, std::size_t f_size, const QueryStats& st,
                             ValidationReport& rep, const std::string& tag) {
    const auto depth = d.tree().depth;
    if (d.mode() == DetectorMode::FConnected) {
        if (st.branches() != 0) rep.violation("single-path: " + tag + "branch node in an f-connected query");
        if (st.visited > depth + 1 + st.stepchild_visits)
            rep.violation("single-path: " + tag + std::to_string(st.visited) + " nodes visited, depth " + std::to_string(depth));
        return;
    }
    for (std::size_t x = 0; x < st.branch_by_size.size(); ++x) {
        if (st.branch_by_size[x] == 0) continue;
        if (x > f_size || st.branch_by_size[x] > (std::uint64_t{1} << (f_size - x)))
            rep.violation("branch-law: " + tag + std::to_string(st.branch_by_size[x]) + " branch nodes with |F_q|=" +
                          std::to_string(x));
    }
    if (st.visited > 8 * (depth + 1) * (std::uint64_t{1} << f_size))
        rep.violation("visit-law: " + tag + std::to_string(st.visited) + " nodes visited at depth " + std::to_string(depth));
}

/// Answers like VertexCutOracle::query, but queries each detector with its own stats and
/// records law violations. `total` (optional) receives the merged stats.
inline bool audited_query(VertexCutOracle& o, const VertexSet& f_set, ValidationReport& rep, QueryStats* total = nullptr) {
    require(f_set.size() <= o.f(), ErrorKind::TooManyFailures,
            "|F|=" + std::to_string(f_set.size()) + " exceeds f=" + std::to_string(o.f()));
    f_set.check_range(o.n(), "query set");
    if (o.mode() == OracleMode::FConnected && f_set.size() < o.f()) return false;
    for (std::size_t r = 0; r < o.rounds().size(); ++r) {
        auto& round = o.rounds()[r];
        for (std::size_t i = 0; i < round.detectors.size(); ++i) {
            if (o.mode() == OracleMode::HitMiss && round.family[i].intersects(f_set)) continue;
            QueryStats st;
            const bool cut = round.detectors[i].query(f_set, &st) == Verdict::Cut;
            check_query_laws(round.detectors[i], f_set.size(), st, rep,
                             "F=" + f_set.to_string() + " round " + std::to_string(r) + " detector " + std::to_string(i) + ": ");
            if (total) total->merge(st);
            if (cut) return true;
        }
    }
    return false;
}

/// Terminal reduction across rounds: each round at least halves the terminal set and the
/// round count stays within ceil(log2 n) + 1.
inline ValidationReport check_terminal_reduction(const VertexCutOracle& o) {
    ValidationReport rep;
    for (std::size_t r = 0; r < o.rounds().size(); ++r) {
        const auto& round = o.rounds()[r];
        if (2 * round.next_terminals.size() > round.terminals.size())
            rep.violation("reduction: round " + std::to_string(r) + " keeps " + std::to_string(round.next_terminals.size()) +
                          " of " + std::to_string(round.terminals.size()) + " terminals");
    }
    if (o.rounds().size() > round_limit(o.n()))
        rep.violation("reduction: " + std::to_string(o.rounds().size()) + " rounds exceed ceil(log2 n) + 1");
    rep.fact("rounds", std::to_string(o.rounds().size()));
    return rep;
}

/// Detector contract on a tree built with retained graphs: a Cut verdict at node q means
/// F_q cuts G_q, and the whole detector answers Cut whenever F separates T but not S*.
inline ValidationReport check_detector_contract(TerminalCutDetector& d, const Graph& g, std::size_t max_queries_n = 14) {
    ValidationReport rep;
    const auto& tree = d.tree();
    for (const auto& q : tree.nodes)
        require(q.graph.has_value(), ErrorKind::InvalidParams, "detector contract check needs retained node graphs");
    require(g.n() <= max_queries_n, ErrorKind::SizeCapExceeded, "detector contract check enumerates queries");
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    NodeAudit audit = [&](std::size_t i, const VertexSet& f_q, Verdict v) {
        if (v != Verdict::Cut) return;
        const auto& sg = *tree.nodes[i].graph;
        if (!disconnected_after_removal(sg.graph(), sg.to_local(f_q)))
            rep.violation("node-soundness: node " + std::to_string(i) + " answered Cut for " + f_q.to_string());
    };
    for_each_subset_up_to(all.span(), tree.f, [&](const VertexSet& fs) {
        const bool cut = d.query(fs, nullptr, &audit) == Verdict::Cut;
        if (cut && !disconnected_after_removal(g, fs)) rep.violation("detector-soundness: Cut for non-cut " + fs.to_string());
        const bool must = separates_terminals(g, fs, d.terminals()) && !separates_terminals(g, fs, d.s_star());
        if (d.mode() == DetectorMode::FConnected && fs.size() < tree.f) return true;
        if (must && !cut) rep.violation("detector-completeness: missed " + fs.to_string());
        return true;
    });
    return rep;
}

}  // namespace vcut
