#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "vcut/detectors.hpp"
#include "vcut/error.hpp"
#include "vcut/lr_tree.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

enum class DetectorMode { General, FConnected, HitMiss };

constexpr std::string_view to_string(DetectorMode m) {
    switch (m) {
        case DetectorMode::General: return "general";
        case DetectorMode::FConnected: return "fconnected";
        case DetectorMode::HitMiss: return "hitmiss";
    }
    return "?";
}

struct DetectorParams {
    LrParams lr;
    DetectorMode mode = DetectorMode::General;
    UsBudget us_budget;
    bool retain_graphs = false;  // keep per-node graphs for auditing
};

struct QueryStats {
    std::size_t visited = 0;
    std::size_t stepchild_visits = 0;
    std::size_t max_depth = 0;
    std::size_t detector_queries = 0;
    std::size_t trims = 0;
    std::vector<std::size_t> branch_by_size;  // index x = |F_q| at a Branch node

    std::size_t branches() const {
        std::size_t b = 0;
        for (auto c : branch_by_size) b += c;
        return b;
    }
    void merge(const QueryStats& o) {
        visited += o.visited;
        stepchild_visits += o.stepchild_visits;
        max_depth = std::max(max_depth, o.max_depth);
        detector_queries += o.detector_queries;
        trims += o.trims;
        if (branch_by_size.size() < o.branch_by_size.size()) branch_by_size.resize(o.branch_by_size.size(), 0);
        for (std::size_t i = 0; i < o.branch_by_size.size(); ++i) branch_by_size[i] += o.branch_by_size[i];
    }
};

/// Called after each visited node with the node, F_q and the node's answer.
using NodeAudit = std::function<void(std::size_t node, const VertexSet& f_q, Verdict)>;

using LeafDetector = std::variant<std::monostate, FewTDetector, TEDetector>;

/// Terminal cut detector over an LR tree: sound, and complete whenever F separates T but
/// not the tree's S*.
class TerminalCutDetector {
public:
    TerminalCutDetector() = default;

    TerminalCutDetector(LrTree tree, DetectorMode mode, const UsBudget& budget, bool retain_graphs)
        : tree_(std::move(tree)), mode_(mode) {
        const auto n = tree_.nodes.size();
        leaf_.resize(n);
        us_left_.resize(n);
        us_right_.resize(n);
        us_self_.resize(n);
        VertexSet root_terminals = tree_.root().terminals;
        for (std::size_t i = 0; i < n; ++i) {
            auto& q = tree_.nodes[i];
            if (is_leaf(q.kind)) {
                if (q.kind == NodeKind::LeafExpander) leaf_[i] = TEDetector(*q.graph, q.terminals, tree_.f);
                else leaf_[i] = FewTDetector(*q.graph, q.terminals, tree_.f);
                continue;
            }
            if (mode_ == DetectorMode::FConnected) {
                us_self_[i] = USDetector(*q.graph, VertexSet{}, q.cut.sep, tree_.f, true, budget);
                continue;
            }
            auto u = q.u_left.unite(q.u_right);
            if (mode_ == DetectorMode::HitMiss) u = u.minus(root_terminals);
            const auto& gl = *tree_.nodes[static_cast<std::size_t>(q.left)].graph;
            const auto& gr = *tree_.nodes[static_cast<std::size_t>(q.right)].graph;
            us_left_[i] = USDetector(gl, u, q.cut.sep, tree_.f, false, budget);
            us_right_[i] = USDetector(gr, u, q.cut.sep, tree_.f, false, budget);
        }
        if (!retain_graphs) tree_.drop_graphs();
    }

    /// Reassembles a detector from stored parts (deserialization).
    static TerminalCutDetector from_parts(LrTree tree, DetectorMode mode, std::vector<LeafDetector> leaf,
                                          std::vector<std::optional<USDetector>> us_left,
                                          std::vector<std::optional<USDetector>> us_right,
                                          std::vector<std::optional<USDetector>> us_self) {
        TerminalCutDetector d;
        d.tree_ = std::move(tree);
        d.mode_ = mode;
        d.leaf_ = std::move(leaf);
        d.us_left_ = std::move(us_left);
        d.us_right_ = std::move(us_right);
        d.us_self_ = std::move(us_self);
        return d;
    }

    Verdict query(const VertexSet& f_set, QueryStats* stats = nullptr, const NodeAudit* audit = nullptr) {
        require(f_set.size() <= tree_.f, ErrorKind::TooManyFailures,
                "|F|=" + std::to_string(f_set.size()) + " exceeds f=" + std::to_string(tree_.f));
        QueryStats local;
        QueryStats& st = stats ? *stats : local;
        if (mode_ == DetectorMode::FConnected) return visit_fconnected(0, f_set, st, audit);
        return visit(0, f_set, st, audit);
    }

    const LrTree& tree() const noexcept { return tree_; }
    DetectorMode mode() const noexcept { return mode_; }
    const VertexSet& s_star() const noexcept { return tree_.s_star; }
    const VertexSet& terminals() const { return tree_.root().terminals; }
    const std::vector<LeafDetector>& leaves() const noexcept { return leaf_; }
    const std::vector<std::optional<USDetector>>& us_left() const noexcept { return us_left_; }
    const std::vector<std::optional<USDetector>>& us_right() const noexcept { return us_right_; }
    const std::vector<std::optional<USDetector>>& us_self() const noexcept { return us_self_; }

private:
    Verdict leaf_query(std::size_t i, const VertexSet& f_q) {
        return std::visit(
            [&](auto& d) -> Verdict {
                if constexpr (std::is_same_v<std::decay_t<decltype(d)>, std::monostate>) {
                    fail(ErrorKind::InvalidParams, "leaf without detector");
                } else {
                    return d.query(f_q);
                }
            },
            leaf_[i]);
    }

    void enter(std::size_t i, QueryStats& st) const {
        const auto& q = tree_.nodes[i];
        ++st.visited;
        if (q.kind == NodeKind::LeafStepchild) ++st.stepchild_visits;
        st.max_depth = std::max(st.max_depth, q.depth);
    }

    Verdict finish(std::size_t i, const VertexSet& f_q, Verdict v, const NodeAudit* audit) const {
        if (audit && *audit) (*audit)(i, f_q, v);
        return v;
    }

    Verdict visit(std::size_t i, const VertexSet& f_set, QueryStats& st, const NodeAudit* audit) {
        enter(i, st);
        const auto& q = tree_.nodes[i];
        const auto f_q = f_set.intersect(q.vertices);
        if (is_leaf(q.kind)) {
            ++st.detector_queries;
            return finish(i, f_q, leaf_query(i, f_q), audit);
        }
        const auto li = static_cast<std::size_t>(q.left);
        const auto ri = static_cast<std::size_t>(q.right);
        if (f_q.intersect(q.cut.right).subset_of(q.u_right)) {
            ++st.trims;
            ++st.detector_queries;
            const auto f_r = f_q.intersect(tree_.nodes[ri].vertices);
            if (us_right_[i]->query(f_r) == Verdict::Cut) return finish(i, f_q, Verdict::Cut, audit);
            return finish(i, f_q, visit(li, f_set, st, audit), audit);
        }
        if (f_q.intersect(q.cut.left).subset_of(q.u_left)) {
            ++st.trims;
            ++st.detector_queries;
            const auto f_l = f_q.intersect(tree_.nodes[li].vertices);
            if (us_left_[i]->query(f_l) == Verdict::Cut) return finish(i, f_q, Verdict::Cut, audit);
            if (visit(ri, f_set, st, audit) == Verdict::Cut) return finish(i, f_q, Verdict::Cut, audit);
            if (q.step >= 0 && visit(static_cast<std::size_t>(q.step), f_set, st, audit) == Verdict::Cut)
                return finish(i, f_q, Verdict::Cut, audit);
            return finish(i, f_q, Verdict::Fail, audit);
        }
        if (st.branch_by_size.size() <= f_q.size()) st.branch_by_size.resize(f_q.size() + 1, 0);
        ++st.branch_by_size[f_q.size()];
        for (auto c : {q.left, q.right, q.step})
            if (c >= 0 && visit(static_cast<std::size_t>(c), f_set, st, audit) == Verdict::Cut)
                return finish(i, f_q, Verdict::Cut, audit);
        return finish(i, f_q, Verdict::Fail, audit);
    }

    Verdict visit_fconnected(std::size_t i, const VertexSet& f_set, QueryStats& st, const NodeAudit* audit) {
        enter(i, st);
        const auto& q = tree_.nodes[i];
        const auto f_q = f_set.intersect(q.vertices);
        if (is_leaf(q.kind)) {
            ++st.detector_queries;
            return finish(i, f_q, leaf_query(i, f_q), audit);
        }
        if (f_q.subset_of(q.cut.sep)) {
            ++st.trims;
            ++st.detector_queries;
            return finish(i, f_q, us_self_[i]->query(f_q), audit);
        }
        const bool hits_left = f_q.intersects(q.cut.left);
        const bool hits_right = f_q.intersects(q.cut.right);
        if (hits_left && hits_right) return finish(i, f_q, Verdict::Fail, audit);
        if (hits_left) return finish(i, f_q, visit_fconnected(static_cast<std::size_t>(q.left), f_set, st, audit), audit);
        if (visit_fconnected(static_cast<std::size_t>(q.right), f_set, st, audit) == Verdict::Cut)
            return finish(i, f_q, Verdict::Cut, audit);
        if (q.step >= 0 && visit_fconnected(static_cast<std::size_t>(q.step), f_set, st, audit) == Verdict::Cut)
            return finish(i, f_q, Verdict::Cut, audit);
        return finish(i, f_q, Verdict::Fail, audit);
    }

    LrTree tree_;
    DetectorMode mode_ = DetectorMode::General;
    std::vector<LeafDetector> leaf_;
    std::vector<std::optional<USDetector>> us_left_, us_right_, us_self_;
};

inline TerminalCutDetector build_detector(const SubGraph& g, const VertexSet& t_set, std::size_t f,
                                          const DetectorParams& params = {}) {
    auto lr = params.lr;
    if (params.mode == DetectorMode::HitMiss) lr.singleton_mode = true;
    return TerminalCutDetector(build_lr_tree(g, t_set, f, lr), params.mode, params.us_budget, params.retain_graphs);
}

inline TerminalCutDetector build_detector(const Graph& g, const VertexSet& t_set, std::size_t f,
                                          const DetectorParams& params = {}) {
    t_set.check_range(g.n(), "terminal set");
    return build_detector(SubGraph::root(g), t_set, f, params);
}

}  // namespace vcut
