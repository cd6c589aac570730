#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/graph.hpp"
#include "vcut/ratio.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

struct ExpanderCheckLimits {
    std::size_t size_cap = 64;                 // largest n accepted
    std::uint64_t separator_budget = 20'000'000;  // candidate separators enumerated at most
};

/// A cut (L,S,R) and its terminal-side value min(|T n (L u S)|, |T n (R u S)|).
struct TerminalSplit {
    VertexCutPartition cut;
    std::size_t value = 0;
};

namespace detail {

/// Given separator S, groups the components of g - S into two nonempty sides to maximise
/// min(|T n (L u S)|, |T n (R u S)|). Returns nothing if g - S has fewer than 2 components.
inline std::optional<TerminalSplit> best_split_for(const Graph& g, const VertexSet& sep,
                                                   const std::vector<char>& is_terminal) {
    auto comps = components_without(g, sep);
    if (comps.count < 2) return std::nullopt;
    std::size_t t_sep = 0;
    for (Vertex v : sep) t_sep += is_terminal[v] ? 1 : 0;
    std::vector<std::size_t> tc(comps.count, 0);
    for (Vertex v = 0; v < g.n(); ++v)
        if (comps.label[v] >= 0 && is_terminal[v]) ++tc[static_cast<std::size_t>(comps.label[v])];
    std::size_t total = 0;
    for (auto c : tc) total += c;

    // reach[i][s][mask]: after the first i components, L holds s terminals; mask bit0 = L
    // nonempty, bit1 = R nonempty. choice records the side of component i-1.
    const std::size_t k = comps.count;
    const std::size_t width = (total + 1) * 4;
    std::vector<std::int8_t> state((k + 1) * width, -1);
    auto at = [&](std::size_t i, std::size_t s, unsigned mask) -> std::int8_t& {
        return state[i * width + s * 4 + mask];
    };
    at(0, 0, 0) = 2;  // start marker
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t s = 0; s <= total; ++s) {
            for (unsigned mask = 0; mask < 4; ++mask) {
                if (at(i, s, mask) < 0) continue;
                auto& toL = at(i + 1, s + tc[i], mask | 1u);
                if (toL < 0) toL = 0;
                auto& toR = at(i + 1, s, mask | 2u);
                if (toR < 0) toR = 1;
            }
        }
    }
    std::optional<std::size_t> best_s;
    std::size_t best_val = 0;
    for (std::size_t s = 0; s <= total; ++s) {
        if (at(k, s, 3) < 0) continue;
        auto val = std::min(s + t_sep, total - s + t_sep);
        if (!best_s || val > best_val) {
            best_s = s;
            best_val = val;
        }
    }
    // Walk back to recover which components went left.
    std::vector<char> left_comp(k, 0);
    std::size_t s = *best_s;
    unsigned mask = 3;
    for (std::size_t i = k; i > 0; --i) {
        // find a predecessor state consistent with a choice at component i-1
        bool done = false;
        for (unsigned pm = 0; pm < 4 && !done; ++pm) {
            if ((pm | 1u) == mask && s >= tc[i - 1] && at(i - 1, s - tc[i - 1], pm) >= 0) {
                left_comp[i - 1] = 1;
                s -= tc[i - 1];
                mask = pm;
                done = true;
            }
        }
        for (unsigned pm = 0; pm < 4 && !done; ++pm) {
            if ((pm | 2u) == mask && at(i - 1, s, pm) >= 0) {
                mask = pm;
                done = true;
            }
        }
    }
    std::vector<Vertex> l, r;
    for (Vertex v = 0; v < g.n(); ++v) {
        auto lab = comps.label[v];
        if (lab < 0) continue;
        (left_comp[static_cast<std::size_t>(lab)] ? l : r).push_back(v);
    }
    return TerminalSplit{{VertexSet::from_sorted_unchecked(std::move(l)), sep, VertexSet::from_sorted_unchecked(std::move(r))},
                         best_val};
}

inline std::vector<char> terminal_mask(std::size_t n, const VertexSet& t_set) {
    std::vector<char> m(n, 0);
    for (Vertex t : t_set) m[t] = 1;
    return m;
}

inline void check_enumeration(const Graph& g, std::size_t max_sep, const ExpanderCheckLimits& lim) {
    require(g.n() <= lim.size_cap, ErrorKind::SizeCapExceeded,
            "n=" + std::to_string(g.n()) + " above size cap " + std::to_string(lim.size_cap));
    require(count_subsets_up_to(g.n(), max_sep) <= lim.separator_budget, ErrorKind::SizeCapExceeded,
            "separator enumeration too large");
}

}  // namespace detail

/// A cut violating (T, phi)-expansion, if one exists. Only separators with
/// |S| < phi * |T| are enumerated; no violation can have a larger separator.
inline std::optional<TerminalSplit> find_expansion_violation(const Graph& g, const VertexSet& t_set, Ratio phi,
                                                             const ExpanderCheckLimits& lim = {}) {
    require(phi.num > 0 && phi.num <= phi.den, ErrorKind::InvalidParams, "phi must lie in (0,1]");
    t_set.check_range(g.n(), "terminal set");
    // largest k with k < phi*|T|
    std::size_t max_sep = 0;
    while (less_than_scaled(max_sep + 1, phi, t_set.size())) ++max_sep;
    max_sep = std::min(max_sep, g.n());
    detail::check_enumeration(g, max_sep, lim);
    auto term = detail::terminal_mask(g.n(), t_set);
    std::optional<TerminalSplit> found;
    auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    for_each_subset_up_to(all.span(), max_sep, [&](const VertexSet& sep) {
        auto split = detail::best_split_for(g, sep, term);
        if (split && less_than_scaled(sep.size(), phi, split->value)) {
            found = std::move(split);
            return false;
        }
        return true;
    });
    return found;
}

inline bool is_terminal_expander(const Graph& g, const VertexSet& t_set, Ratio phi,
                                 const ExpanderCheckLimits& lim = {}) {
    return !find_expansion_violation(g, t_set, phi, lim).has_value();
}

/// Exact terminal expansion min |S| / min(|T n (L u S)|, |T n (R u S)|) over all cuts with
/// a nonzero denominator, capped at 1. Graphs without such cuts report 1.
inline Ratio terminal_expansion(const Graph& g, const VertexSet& t_set, const ExpanderCheckLimits& lim = {}) {
    t_set.check_range(g.n(), "terminal set");
    if (t_set.empty()) return Ratio(1, 1);
    Ratio best(1, 1);
    auto term = detail::terminal_mask(g.n(), t_set);
    auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    // Any separator of size k has ratio >= k/|T|, so sizes with k/|T| >= best are skipped.
    std::size_t k = 0;
    for (; k <= g.n(); ++k) {
        if (!(Ratio(k, t_set.size()) < best)) break;
        detail::check_enumeration(g, k, lim);
        std::vector<Vertex> universe(all.begin(), all.end());
        // enumerate exactly size-k subsets
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        const std::size_t n = g.n();
        while (true) {
            std::vector<Vertex> cur;
            for (auto i : idx) cur.push_back(universe[i]);
            auto split = detail::best_split_for(g, VertexSet::from_sorted_unchecked(cur), term);
            if (split && split->value > 0) {
                Ratio r(k, split->value);
                if (r < best) best = r;
            }
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return best;
}

}  // namespace vcut
