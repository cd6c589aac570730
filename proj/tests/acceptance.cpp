// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support/fixtures.hpp"
#include "support/tracking.hpp"

using namespace vcut;
using clock_type = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr double c1_budget_s = 300.0;
constexpr double c2_budget_s = 600.0;
constexpr std::size_t c2_queries = 10000;
constexpr std::size_t label_exhaustive_max_n = 20;
constexpr double label_log_power = 4.0;
constexpr double space_c1_min = 1.0;       // bits >= c1 * f n log2(n/f), c1 at least this
constexpr double space_polylog_power = 3.0;  // upper envelope f n log2(n)^power
constexpr double space_c2_max = 64.0;      // c2 at most this

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double seconds) {
    std::printf("[%s] criterion %d: %s (%s; %.1fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

double since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

OracleParams profile(OracleMode mode, bool deep) {
    OracleParams p;
    p.mode = mode;
    if (deep) {
        // Hit-miss halving depends on its own eps = 1/(c k log|T|), so only the leaf size changes there.
        if (mode != OracleMode::HitMiss) p.lr.eps = Ratio(1, 4);
        p.lr.leaf_threshold = 3;
    }
    return p;
}

/// Shared across criteria 1-5: every build and every audited query lands here.
struct Ledger {
    std::size_t builds = 0, queries = 0, mismatches = 0;
    std::size_t fconn_instances = 0, fconn_queries = 0;
    std::vector<std::string> reduction, laws, single_path, mismatch_examples;
    std::mutex mu;

    void absorb_laws(const ValidationReport& rep, bool fconnected) {
        std::lock_guard lock(mu);
        for (const auto& v : rep.violations) {
            if (v.rfind("single-path:", 0) == 0) {
                if (single_path.size() < 5) single_path.push_back(v);
            } else if (laws.size() < 5) {
                laws.push_back(v);
            }
        }
        (void)fconnected;
    }
    void absorb_reduction(const VertexCutOracle& o, const std::string& tag) {
        const auto rep = check_terminal_reduction(o);
        std::lock_guard lock(mu);
        ++builds;
        for (const auto& v : rep.violations) reduction.push_back(tag + ": " + v);
        if (o.flags().reduction_violations) reduction.push_back(tag + ": oracle flagged reduction violations");
    }
    void mismatch(const std::string& what) {
        std::lock_guard lock(mu);
        ++mismatches;
        if (mismatch_examples.size() < 5) mismatch_examples.push_back(what);
    }
};

Ledger ledger;

/// Checks every F (|F| <= f) against brute force; queries also pass through the audited path.
void exhaustive_check(const Graph& g, std::size_t f, const OracleParams& p, const std::string& tag) {
    auto o = build_oracle(g, f, p);
    ledger.absorb_reduction(o, tag);
    auto audited = o;
    ValidationReport laws;
    std::size_t count = 0;
    for_each_subset_up_to(VertexSet::range(static_cast<Vertex>(g.n())).span(), f, [&](const VertexSet& q) {
        const bool truth = is_cut_bruteforce(g, q);
        const bool got = o.query(q);
        const bool got_audited = audited_query(audited, q, laws);
        ++count;
        if (got != truth || got_audited != truth) ledger.mismatch(tag + " F=" + q.to_string());
        return true;
    });
    ledger.absorb_laws(laws, p.mode == OracleMode::FConnected);
    std::lock_guard lock(ledger.mu);
    ledger.queries += count;
    if (p.mode == OracleMode::FConnected) {
        ++ledger.fconn_instances;
        ledger.fconn_queries += count;
    }
}

std::size_t max_depth(const VertexCutOracle& o) {
    std::size_t d = 0;
    for (const auto& r : o.rounds())
        for (const auto& det : r.detectors) d = std::max(d, det.tree().depth);
    return d;
}

/// Random workload split over threads, each with its own oracle copy. Returns the deepest tree.
std::size_t random_check(const Graph& g, std::size_t f, const OracleParams& p, std::size_t count, std::uint64_t seed,
                  const std::string& tag) {
    const auto o = build_oracle(g, f, p);
    ledger.absorb_reduction(o, tag);
    const auto qs = random_queries(g.n(), f, count, seed, p.mode == OracleMode::FConnected);
    const std::size_t threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            auto plain = o;
            auto audited = o;
            ValidationReport laws;
            for (std::size_t i = w; i < qs.size(); i += threads) {
                const bool truth = is_cut_bruteforce(g, qs[i]);
                if (plain.query(qs[i]) != truth || audited_query(audited, qs[i], laws) != truth)
                    ledger.mismatch(tag + " F=" + qs[i].to_string());
            }
            ledger.absorb_laws(laws, p.mode == OracleMode::FConnected);
        });
    }
    for (auto& t : pool) t.join();
    std::lock_guard lock(ledger.mu);
    ledger.queries += qs.size();
    if (p.mode == OracleMode::FConnected) {
        ++ledger.fconn_instances;
        ledger.fconn_queries += qs.size();
    }
    return max_depth(o);
}

std::string join_first(const std::vector<std::string>& v) { return v.empty() ? "" : "; first: " + v.front(); }

Outcome criterion_1() {
    const auto t0 = clock_type::now();
    std::size_t runs = 0;
    const auto before = ledger.queries;
    for (const auto& [name, g] : fixtures::small_suite()) {
        const std::size_t f = std::min<std::size_t>(3, g.n() - 1);
        for (bool deep : {false, true}) {
            for (auto mode : {OracleMode::General, OracleMode::HitMiss}) {
                exhaustive_check(g, f, profile(mode, deep), name + "/" + std::string(to_string(mode)) + (deep ? "/deep" : ""));
                ++runs;
            }
            const auto kappa = std::min<std::size_t>(3, vertex_connectivity(g));
            for (std::size_t k = 1; k <= kappa && k < g.n() - 1; ++k) {
                exhaustive_check(g, k, profile(OracleMode::FConnected, deep), name + "/fconnected f=" + std::to_string(k));
                ++runs;
            }
        }
    }
    const double s = since(t0);
    std::ostringstream d;
    d << runs << " oracle builds, " << ledger.queries - before << " queries, " << ledger.mismatches << " mismatches"
      << join_first(ledger.mismatch_examples);
    return {ledger.mismatches == 0 && s < c1_budget_s, d.str()};
}

Outcome criterion_2() {
    const auto t0 = clock_type::now();
    const auto mismatches_before = ledger.mismatches;
    std::ostringstream d;
    std::size_t depth = 0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        const std::size_t n = 64 + 15 * s;
        const std::size_t f = 4 + s % 3;
        const auto g = gen_random_m(n, 3 * n, 100 + s, true).graph;
        depth = std::max(depth, random_check(g, f, profile(OracleMode::General, true), c2_queries, 500 + s,
                     "G(" + std::to_string(n) + "," + std::to_string(3 * n) + ") f=" + std::to_string(f)));
    }
    const double sec = since(t0);
    const auto bad = ledger.mismatches - mismatches_before;
    d << "10 graphs, n in [64,199], f in {4,5,6}, " << 10 * c2_queries << " queries, max tree depth " << depth << ", " << bad << " mismatches"
      << join_first(ledger.mismatch_examples);
    return {bad == 0 && sec < c2_budget_s, d.str()};
}

Outcome criterion_3() {
    std::ostringstream d;
    d << ledger.builds << " builds, " << ledger.reduction.size() << " violations" << join_first(ledger.reduction);
    return {ledger.reduction.empty() && ledger.builds > 0, d.str()};
}

Outcome criterion_4() {
    std::ostringstream d;
    d << ledger.queries << " audited queries, " << ledger.laws.size() << " violations" << join_first(ledger.laws);
    return {ledger.laws.empty(), d.str()};
}

Outcome criterion_5() {
    // Larger f-connected instances on top of the exhaustive small ones.
    for (std::uint64_t s = 1; s <= 4; ++s) {
        const std::size_t f = 2 + s % 3;
        const auto g = gen_f_connected(40 + 6 * s, f, s, 0.05).graph;
        random_check(g, f, profile(OracleMode::FConnected, true), 2000, 900 + s,
                     "fconnected n=" + std::to_string(g.n()) + " f=" + std::to_string(f));
    }
    std::ostringstream d;
    d << ledger.fconn_instances << " f-connected instances, " << ledger.fconn_queries << " queries, "
      << ledger.single_path.size() << " violations" << join_first(ledger.single_path);
    return {ledger.single_path.empty() && ledger.fconn_instances > 0 && ledger.mismatches == 0, d.str()};
}

Outcome criterion_6() {
    std::size_t graphs = 0, runs = 0, cuts = 0, fconn_cases = 0, us_pairs = 0, stepchild = 0;
    std::vector<std::string> bad;
    for (const auto& [name, g] : fixtures::small_suite()) {
        if (g.n() > 12) continue;
        ++graphs;
        for (std::size_t f = 1; f <= 3 && f + 1 < g.n(); ++f) {
            const auto rep = run_property_suites(g, f);
            ++runs;
            for (const auto& v : rep.violations) bad.push_back(name + " f=" + std::to_string(f) + ": " + v);
            auto num = [&](const std::string& k) {
                const auto v = rep.fact_value(k);
                return v.empty() ? std::size_t{0} : static_cast<std::size_t>(std::stoull(v));
            };
            cuts += num("lr_cuts");
            stepchild += num("lr_stepchild_cases");
            us_pairs += num("us_pairs");
            fconn_cases += num("fconn_cases");
        }
    }
    std::ostringstream d;
    d << graphs << " graphs, " << runs << " suite runs, " << cuts << " cuts, " << stepchild << " stepchild cases, "
      << us_pairs << " US pairs, " << fconn_cases << " f-connected cases, " << bad.size() << " counterexamples"
      << join_first(bad);
    return {bad.empty() && cuts > 0 && stepchild > 0 && fconn_cases > 0, d.str()};
}

Outcome criterion_7() {
    std::size_t schemes = 0, queries = 0, wrong = 0, nonlocal = 0, tracked = 0;
    for (const auto& [name, g] : fixtures::small_suite()) {
        if (g.n() > label_exhaustive_max_n) continue;
        for (std::size_t f = 1; f <= 3 && 2 * f < g.n(); ++f) {
            auto base = make_provider("registry", g, f);
            const auto s = build_labels(g, f, base);
            fixtures::TrackingProvider tracker(base);
            ++schemes;
            for_each_subset_up_to(VertexSet::range(static_cast<Vertex>(g.n())).span(), f, [&](const VertexSet& q) {
                const bool truth = is_cut_bruteforce(g, q);
                wrong += query_labels(s, q) != truth;
                const auto [answer, local] = fixtures::tracked_label_query(s, tracker, q);
                wrong += answer != truth;
                nonlocal += !local;
                ++tracked;
                ++queries;
                return true;
            });
        }
    }

    std::vector<std::pair<std::size_t, double>> ratios;
    bool growth_ok = true;
    std::ostringstream scaling;
    for (std::size_t n : {64u, 256u, 1024u}) {
        const auto g = gen_random_m(n, 4 * n, 7, true).graph;
        const auto r = label_length_report(build_labels(g, 2, make_provider("size-model", g, 2)));
        const double ratio = static_cast<double>(r.max_bits) / std::sqrt(static_cast<double>(n));
        ratios.emplace_back(n, ratio);
        scaling << " n=" << n << " max_bits=" << r.max_bits << " ratio=" << ratio;
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        const double allowed = std::pow(std::log2(static_cast<double>(ratios[i].first)) /
                                            std::log2(static_cast<double>(ratios[i - 1].first)),
                                        label_log_power);
        if (ratios[i].second / ratios[i - 1].second > allowed) growth_ok = false;
    }
    std::ostringstream d;
    d << schemes << " schemes, " << queries << " queries, " << wrong << " wrong, " << nonlocal << "/" << tracked
      << " non-local;" << scaling.str();
    return {wrong == 0 && nonlocal == 0 && growth_ok, d.str()};
}

Outcome criterion_8() {
    std::size_t instances = 0, pairs = 0;
    std::vector<std::string> bad;
    for (const auto& [name, g] : fixtures::small_suite()) {
        if (g.n() > 16) continue;
        for (std::size_t f = 1; f <= 3 && f + 1 < g.n(); ++f) {
            for (bool deep : {false, true}) {
                TedParams p;
                if (deep) {
                    p.lr.eps = Ratio(1, 4);
                    p.lr.leaf_threshold = 3;
                }
                const auto ted = export_ted(g, f, p);
                const auto rep = validate_ted(ted, g, f);
                ++instances;
                pairs += ted.pairs.size();
                for (const auto& v : rep.violations) bad.push_back(name + " f=" + std::to_string(f) + ": " + v);
            }
        }
    }
    std::ostringstream d;
    d << instances << " decompositions, " << pairs << " pairs, " << bad.size() << " violations" << join_first(bad);
    return {bad.empty() && instances > 0, d.str()};
}

Outcome criterion_9() {
    std::size_t opposite = 0, pairs = 0, listed_cut = 0, listed = 0, fresh_ok = 0, fresh = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto a = gen_lb_family(32, 3, 2 * s + 1);
        const auto b = gen_lb_family(32, 3, 2 * s + 2);
        const std::set<VertexSet> sb(b.collection.begin(), b.collection.end());
        const VertexSet* distinguishing = nullptr;
        for (const auto& x : a.collection)
            if (!sb.count(x)) {
                distinguishing = &x;
                break;
            }
        if (!distinguishing) continue;
        ++pairs;
        auto oa = build_oracle(a.graph, 3);
        auto ob = build_oracle(b.graph, 3);
        opposite += oa.query(*distinguishing) && !ob.query(*distinguishing);
    }
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const auto lb = gen_lb_family(16, 2, s);
        auto o = build_oracle(lb.graph, 2);
        const std::set<VertexSet> coll(lb.collection.begin(), lb.collection.end());
        for_each_subset_up_to(lb.w.span(), 2, [&](const VertexSet& q) {
            if (q.size() != 2) return true;
            if (coll.count(q)) {
                ++listed;
                listed_cut += o.query(q) && is_cut_bruteforce(lb.graph, q);
            } else {
                ++fresh;
                fresh_ok += !o.query(q) && !is_cut_bruteforce(lb.graph, q);
            }
            return true;
        });
    }
    std::ostringstream d;
    d << opposite << "/" << pairs << " distinguishing queries opposite; " << listed_cut << "/" << listed
      << " listed subsets cut; " << fresh_ok << "/" << fresh << " fresh subsets not cut";
    return {pairs == 20 && opposite == pairs && listed_cut == listed && fresh_ok == fresh && listed > 0, d.str()};
}

BitVector random_bits(std::size_t len, std::mt19937_64& rng, double p, bool nonzero) {
    std::bernoulli_distribution coin(p);
    BitVector v(len);
    do {
        for (auto& x : v) x = coin(rng);
    } while (nonzero && std::find(v.begin(), v.end(), 1) == v.end());
    return v;
}

Outcome criterion_10() {
    std::size_t ov_checked = 0, ov_ok = 0, ov_cuts = 0;
    std::mt19937_64 rng(2024);
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<BitVector> a;
        for (int i = 0; i < 8; ++i) a.push_back(random_bits(4, rng, 0.5, true));
        const auto ov = gen_ov_graph(a);
        auto o = build_oracle(ov.graph, 4);
        for (unsigned mask = 0; mask < 16; ++mask) {
            BitVector b(4);
            for (int i = 0; i < 4; ++i) b[i] = (mask >> i) & 1u;
            bool orthogonal = false;
            for (const auto& x : a) {
                unsigned dot = 0;
                for (int i = 0; i < 4; ++i) dot += x[i] * b[i];
                orthogonal = orthogonal || dot == 0;
            }
            const bool cut = o.query(ov.query_for(b));
            ++ov_checked;
            ov_ok += cut == orthogonal;
            ov_cuts += cut;
        }
    }

    std::size_t mv_checked = 0, mv_ok = 0, mv_cuts = 0;
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<BitVector> m;
        for (int i = 0; i < 6; ++i) m.push_back(random_bits(6, rng, 0.25, false));
        const auto mv = gen_oumv_graph(m);
        if (!is_connected(mv.graph)) continue;
        std::vector<std::pair<BitVector, BitVector>> qs;
        std::size_t f = 1;
        for (int i = 0; i < 50; ++i) {
            auto u = random_bits(6, rng, 0.5, true), v = random_bits(6, rng, 0.5, true);
            f = std::max(f, mv.query_for(u, v).size());
            qs.emplace_back(std::move(u), std::move(v));
        }
        auto o = build_oracle(mv.graph, f);
        for (const auto& [u, v] : qs) {
            unsigned prod = 0;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) prod += u[i] * m[i][j] * v[j];
            const bool cut = o.query(mv.query_for(u, v));
            ++mv_checked;
            mv_ok += cut == (prod == 0);
            mv_cuts += cut;
        }
    }
    std::ostringstream d;
    d << "OV " << ov_ok << "/" << ov_checked << " agree (" << ov_cuts << " cuts); OuMv " << mv_ok << "/" << mv_checked
      << " agree (" << mv_cuts << " cuts)";
    return {ov_checked == 80 && ov_ok == ov_checked && mv_checked >= 100 && mv_ok == mv_checked, d.str()};
}

Outcome criterion_11() {
    const std::size_t f = 3;
    double c1 = 1e300, c2 = 0;
    std::ostringstream d;
    for (std::size_t n : {64u, 128u, 256u}) {
        const auto lb = gen_lb_family(n, f, 1);
        const auto bits = 8.0 * static_cast<double>(serialize_oracle(build_oracle(lb.graph, f)).size());
        const double nn = static_cast<double>(n), ff = static_cast<double>(f);
        c1 = std::min(c1, bits / (ff * nn * std::log2(nn / ff)));
        c2 = std::max(c2, bits / (ff * nn * std::pow(std::log2(nn), space_polylog_power)));
        d << "n=" << n << " bits=" << static_cast<std::size_t>(bits) << "; ";
    }
    d << "c1=" << c1 << " c2=" << c2 << " (polylog power " << space_polylog_power << ")";
    return {c1 >= space_c1_min && c2 <= space_c2_max, d.str()};
}

}  // namespace

int main() {
    struct Step {
        int id;
        const char* title;
        Outcome (*run)();
    };
    const Step steps[] = {
        {1, "exhaustive oracle equivalence on the small suite, all modes", criterion_1},
        {2, "randomized oracle equivalence on larger graphs", criterion_2},
        {3, "terminal reduction per round and round count", criterion_3},
        {4, "branch-count and visit laws per detector query", criterion_4},
        {5, "f-connected queries follow a single path", criterion_5},
        {6, "left/right, US, f-connected, inheritance and warm-up property suites", criterion_6},
        {7, "label equivalence, query locality and label-length scaling", criterion_7},
        {8, "terminal expander decomposition validity", criterion_8},
        {9, "lower-bound family behaviour", criterion_9},
        {10, "orthogonal-vector and OuMv reduction equivalences", criterion_10},
        {11, "serialized size between the information floor and a polylog envelope", criterion_11},
    };
    for (const auto& step : steps) {
        const auto t0 = clock_type::now();
        Outcome o;
        try {
            o = step.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(step.id, step.title, o, since(t0));
    }
    std::printf("%d of %zu criteria failed\n", failures, std::size(steps));
    return failures == 0 ? 0 : 1;
}
