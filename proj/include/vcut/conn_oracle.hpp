#pragma once

#include <memory>
#include <vector>

#include "vcut/dsu.hpp"
#include "vcut/error.hpp"
#include "vcut/graph.hpp"
#include "vcut/sparsify.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

/// Connectivity under at most f vertex failures. This baseline rebuilds a union-find
/// labelling of G - F lazily after each update; faster oracles can replace it behind the
/// same update/connected interface.
class FailureConnectivityOracle {
public:
    FailureConnectivityOracle() = default;
    FailureConnectivityOracle(std::shared_ptr<const Graph> g, std::size_t f) : g_(std::move(g)), f_(f) {
        require(g_ != nullptr, ErrorKind::InvalidParams, "null graph");
        failed_.assign(g_->n(), 0);
    }

    const Graph& graph() const { return *g_; }
    std::size_t max_failures() const noexcept { return f_; }
    const VertexSet& failures() const noexcept { return current_; }

    /// Replaces the failure set.
    void update(const VertexSet& f_set) {
        require(f_set.size() <= f_, ErrorKind::TooManyFailures,
                "|F|=" + std::to_string(f_set.size()) + " exceeds f=" + std::to_string(f_));
        f_set.check_range(g_->n(), "failure set");
        for (Vertex v : current_) failed_[v] = 0;
        current_ = f_set;
        for (Vertex v : current_) failed_[v] = 1;
        fresh_ = false;
    }

    bool is_failed(Vertex v) const { return failed_[v] != 0; }

    bool connected(Vertex s, Vertex t) {
        require(s < g_->n() && t < g_->n(), ErrorKind::OutOfRange, "query vertex out of range");
        require(!failed_[s] && !failed_[t], ErrorKind::QueriedFailedVertex,
                "vertex " + std::to_string(failed_[s] ? s : t) + " is failed");
        if (!fresh_) relabel();
        return dsu_.same(s, t);
    }

private:
    void relabel() {
        dsu_.reset(g_->n());
        for (auto [u, v] : g_->edges())
            if (!failed_[u] && !failed_[v]) dsu_.unite(u, v);
        fresh_ = true;
    }

    std::shared_ptr<const Graph> g_;
    std::size_t f_ = 0;
    VertexSet current_;
    std::vector<char> failed_;
    DisjointSet dsu_;
    bool fresh_ = false;
};

/// Builds the baseline oracle, optionally on the sparse certificate of g.
inline FailureConnectivityOracle build_conn_oracle(const Graph& g, std::size_t f, bool presparsify = false) {
    auto stored = (presparsify && f >= 1) ? std::make_shared<const Graph>(sparsify(g, f))
                                          : std::make_shared<const Graph>(g);
    return FailureConnectivityOracle(std::move(stored), f);
}

inline FailureConnectivityOracle build_conn_oracle(std::shared_ptr<const Graph> g, std::size_t f) {
    return FailureConnectivityOracle(std::move(g), f);
}

}  // namespace vcut
