#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "vcut/connectivity.hpp"
#include "vcut/cut_detector.hpp"
#include "vcut/error.hpp"
#include "vcut/hit_miss.hpp"
#include "vcut/sparsify.hpp"

namespace vcut {

using OracleMode = DetectorMode;

struct OracleParams {
    OracleMode mode = OracleMode::General;
    LrParams lr;
    UsBudget us_budget;
    bool sparsify = true;
    std::size_t fconnected_verify_max_n = 64;
    bool attest_fconnected = false;  // caller vouches for f-connectivity above the verify limit
    HitMissParams hit_miss;
    std::uint64_t seed = 1;
    bool retain_graphs = false;
};

/// One terminal-reduction round: the detectors built for T_i (several in hit-miss mode,
/// one per family member) and the next terminal set.
struct OracleRound {
    VertexSet terminals;
    std::vector<TerminalCutDetector> detectors;
    std::vector<VertexSet> family;  // detector terminal sets (hit-miss only)
    VertexSet next_terminals;
    std::size_t family_rounds = 0;
    bool family_exhaustive = true;
};

struct OracleFlags {
    bool sparsified = false;
    bool fconnected_verified = false;
    bool fconnected_attested = false;
    bool unverified_expanders = false;
    std::size_t reduction_violations = 0;  // rounds with |T_{i+1}| > |T_i|/2
    std::size_t forced_leaves = 0;
};

/// f-vertex cut oracle: F (|F| <= f) is a cut iff some round's detector says so.
class VertexCutOracle {
public:
    VertexCutOracle() = default;
    VertexCutOracle(std::size_t n, std::size_t f, OracleMode mode, std::vector<OracleRound> rounds, OracleFlags flags)
        : n_(n), f_(f), mode_(mode), rounds_(std::move(rounds)), flags_(flags) {}

    bool query(const VertexSet& f_set, QueryStats* stats = nullptr) {
        require(f_set.size() <= f_, ErrorKind::TooManyFailures,
                "|F|=" + std::to_string(f_set.size()) + " exceeds f=" + std::to_string(f_));
        f_set.check_range(n_, "query set");
        if (mode_ == OracleMode::FConnected && f_set.size() < f_) return false;
        for (auto& round : rounds_) {
            for (std::size_t i = 0; i < round.detectors.size(); ++i) {
                if (mode_ == OracleMode::HitMiss && round.family[i].intersects(f_set)) continue;
                if (round.detectors[i].query(f_set, stats) == Verdict::Cut) return true;
            }
        }
        return false;
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t f() const noexcept { return f_; }
    OracleMode mode() const noexcept { return mode_; }
    const std::vector<OracleRound>& rounds() const noexcept { return rounds_; }
    std::vector<OracleRound>& rounds() noexcept { return rounds_; }
    const OracleFlags& flags() const noexcept { return flags_; }

private:
    std::size_t n_ = 0;
    std::size_t f_ = 0;
    OracleMode mode_ = OracleMode::General;
    std::vector<OracleRound> rounds_;
    OracleFlags flags_;
};

inline std::size_t round_limit(std::size_t n) {
    return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 1))))) + 1;
}

/// Builds the oracle: T_0 = V, D_i = detector(T_i), T_{i+1} = S*_i, until T_i is empty.
inline VertexCutOracle build_oracle(const Graph& g, std::size_t f, const OracleParams& p = {}) {
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(is_connected(g), ErrorKind::DisconnectedInput, "input graph is not connected");
    OracleFlags flags;
    if (p.mode == OracleMode::FConnected) {
        if (g.n() <= p.fconnected_verify_max_n) {
            require(is_f_connected(g, f), ErrorKind::NotFConnected, "graph is not " + std::to_string(f) + "-connected");
            flags.fconnected_verified = true;
        } else {
            require(p.attest_fconnected, ErrorKind::NotFConnected,
                    "graph too large to verify f-connectivity and no attestation given");
            flags.fconnected_attested = true;
        }
    }
    const Graph work = p.sparsify ? sparsify(g, f) : g;
    flags.sparsified = p.sparsify;
    const auto root = SubGraph::root(work);

    DetectorParams dp;
    dp.lr = p.lr;
    dp.mode = p.mode;
    dp.us_budget = p.us_budget;
    dp.retain_graphs = p.retain_graphs;

    std::vector<OracleRound> rounds;
    VertexSet terminals = VertexSet::range(static_cast<Vertex>(g.n()));
    std::uint64_t seed = p.seed;
    while (!terminals.empty()) {
        OracleRound round;
        round.terminals = terminals;
        if (p.mode == OracleMode::HitMiss) {
            auto fam = build_hit_miss_family(terminals, f, g.n(), seed++, p.hit_miss);
            round.family_rounds = fam.rounds;
            round.family_exhaustive = fam.exhaustive;
            auto lr = dp;
            lr.lr.k_factor = static_cast<double>(fam.k) * p.lr.k_factor;
            for (const auto& ti : fam.sets) {
                if (ti.empty()) continue;
                round.detectors.push_back(build_detector(root, ti, f, lr));
                round.family.push_back(ti);
                round.next_terminals = round.next_terminals.unite(round.detectors.back().s_star());
            }
        } else {
            round.detectors.push_back(build_detector(root, terminals, f, dp));
            round.next_terminals = round.detectors.back().s_star();
        }
        for (const auto& d : round.detectors) {
            flags.unverified_expanders = flags.unverified_expanders || d.tree().unverified_expanders;
            flags.forced_leaves += d.tree().forced_leaves;
        }
        require(round.next_terminals.size() < terminals.size(), ErrorKind::TerminalReductionViolated,
                "terminal set did not shrink (" + std::to_string(terminals.size()) + " -> " +
                    std::to_string(round.next_terminals.size()) + ")");
        if (2 * round.next_terminals.size() > terminals.size()) ++flags.reduction_violations;
        terminals = round.next_terminals;
        rounds.push_back(std::move(round));
    }
    return VertexCutOracle(g.n(), f, p.mode, std::move(rounds), flags);
}

inline VertexCutOracle build_oracle_hitmiss(const Graph& g, std::size_t f, OracleParams p = {}) {
    p.mode = OracleMode::HitMiss;
    return build_oracle(g, f, p);
}

}  // namespace vcut
