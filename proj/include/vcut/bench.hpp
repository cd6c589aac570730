#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/oracle.hpp"
#include "vcut/serialize.hpp"

namespace vcut {

struct BenchOptions {
    std::size_t queries = 2000;
    std::size_t threads = 0;  // 0 picks hardware concurrency
    std::uint64_t seed = 1;
    bool check_bruteforce = true;
};

struct TimeSummary {
    double min_us = 0, p50_us = 0, p90_us = 0, p99_us = 0, max_us = 0, mean_us = 0;
};

struct BenchReport {
    std::size_t n = 0, m = 0, f = 0;
    OracleMode mode = OracleMode::General;
    double build_ms = 0;
    std::size_t queries = 0;
    std::size_t threads = 1;
    TimeSummary query_time;
    QueryStats stats;
    std::size_t cuts = 0;
    std::size_t checked = 0;
    std::size_t agreed = 0;
    std::size_t serialized_bytes = 0;

    double agreement() const { return checked == 0 ? 1.0 : static_cast<double>(agreed) / static_cast<double>(checked); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["schema_version"] = 1;
        j["n"] = n;
        j["m"] = m;
        j["f"] = f;
        j["mode"] = std::string(to_string(mode));
        j["build_ms"] = build_ms;
        j["queries"] = queries;
        j["threads"] = threads;
        j["query_time_us"] = {{"min", query_time.min_us}, {"p50", query_time.p50_us}, {"p90", query_time.p90_us},
                              {"p99", query_time.p99_us}, {"max", query_time.max_us}, {"mean", query_time.mean_us}};
        j["stats"] = {{"visited", stats.visited},
                      {"stepchild_visits", stats.stepchild_visits},
                      {"max_depth", stats.max_depth},
                      {"detector_queries", stats.detector_queries},
                      {"trims", stats.trims},
                      {"branches_by_size", stats.branch_by_size}};
        j["cuts"] = cuts;
        j["checked"] = checked;
        j["agreement"] = agreement();
        j["serialized_bytes"] = serialized_bytes;
        return j;
    }
};

/// Seeded query workload: sizes uniform in [1, f], or exactly f in f-connected mode.
inline std::vector<VertexSet> random_queries(std::size_t n, std::size_t f, std::size_t count, std::uint64_t seed,
                                             bool exact_size = false) {
    std::mt19937_64 rng(seed);
    std::vector<Vertex> pool(n);
    for (Vertex v = 0; v < n; ++v) pool[v] = v;
    std::uniform_int_distribution<std::size_t> size(exact_size ? f : 1, f);
    std::vector<VertexSet> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Vertex> pick;
        std::sample(pool.begin(), pool.end(), std::back_inserter(pick), std::min(size(rng), n), rng);
        out.push_back(VertexSet(std::move(pick)));
    }
    return out;
}

inline TimeSummary summarize_times(std::vector<double> us) {
    TimeSummary t;
    if (us.empty()) return t;
    std::sort(us.begin(), us.end());
    auto at = [&](double q) { return us[std::min(us.size() - 1, static_cast<std::size_t>(q * static_cast<double>(us.size())))]; };
    t.min_us = us.front();
    t.max_us = us.back();
    t.p50_us = at(0.5);
    t.p90_us = at(0.9);
    t.p99_us = at(0.99);
    double sum = 0;
    for (double x : us) sum += x;
    t.mean_us = sum / static_cast<double>(us.size());
    return t;
}

/// Builds an oracle for g, then answers a random workload on a pool of threads, each
/// holding its own copy of the oracle.
inline BenchReport run_bench(const Graph& g, std::size_t f, const OracleParams& params, const BenchOptions& opt = {}) {
    using clock = std::chrono::steady_clock;
    BenchReport rep;
    rep.n = g.n();
    rep.m = g.m();
    rep.f = f;
    rep.mode = params.mode;
    const auto t0 = clock::now();
    const auto oracle = build_oracle(g, f, params);
    rep.build_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
    rep.serialized_bytes = serialize_oracle(oracle).size();

    const auto qs = random_queries(g.n(), f, opt.queries, opt.seed, params.mode == OracleMode::FConnected);
    rep.queries = qs.size();
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    rep.threads = std::max<std::size_t>(1, std::min(opt.threads ? opt.threads : hw, std::max<std::size_t>(qs.size(), 1)));

    struct Slot {
        std::vector<double> us;
        QueryStats stats;
        std::size_t cuts = 0, checked = 0, agreed = 0;
    };
    std::vector<Slot> slots(rep.threads);
    auto work = [&](std::size_t w) {
        auto local = oracle;
        auto& s = slots[w];
        for (std::size_t i = w; i < qs.size(); i += rep.threads) {
            const auto a = clock::now();
            const bool cut = local.query(qs[i], &s.stats);
            s.us.push_back(std::chrono::duration<double, std::micro>(clock::now() - a).count());
            s.cuts += cut;
            if (opt.check_bruteforce) {
                ++s.checked;
                s.agreed += cut == disconnected_after_removal(g, qs[i]);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < rep.threads; ++w) pool.emplace_back(work, w);
    work(0);
    for (auto& t : pool) t.join();

    std::vector<double> all;
    for (auto& s : slots) {
        all.insert(all.end(), s.us.begin(), s.us.end());
        rep.stats.merge(s.stats);
        rep.cuts += s.cuts;
        rep.checked += s.checked;
        rep.agreed += s.agreed;
    }
    rep.query_time = summarize_times(std::move(all));
    return rep;
}

}  // namespace vcut
