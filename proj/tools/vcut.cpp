#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vcut/vcut.hpp"

using namespace vcut;
using nlohmann::json;

namespace {

struct Common {
    std::string input;
    std::size_t f = 1;
    std::string mode = "general";
    std::uint64_t seed = 1;
    std::string format = "edgelist";
    std::string out;
    std::string eps;
    std::size_t leaf_threshold = 0;
    bool no_sparsify = false;
};

const std::map<std::string, OracleMode> mode_names{
    {"general", OracleMode::General}, {"fconnected", OracleMode::FConnected}, {"hitmiss", OracleMode::HitMiss}};

void add_mode(CLI::App* app, Common& c) {
    app->add_option("--mode", c.mode, "general, fconnected or hitmiss")->check(CLI::IsMember({"general", "fconnected", "hitmiss"}));
}

void add_format(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "graph file format")->check(CLI::IsMember({"edgelist"}));
}

void add_lr(CLI::App* app, Common& c) {
    app->add_option("--eps", c.eps, "fixed sparsity parameter as p/q");
    app->add_option("--leaf-threshold", c.leaf_threshold, "terminal count at which a node becomes a leaf");
    app->add_flag("--no-sparsify", c.no_sparsify, "skip the sparse certificate");
}

Ratio parse_ratio(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Ratio(std::stoull(s), 1);
        return Ratio(std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        fail(ErrorKind::ParseError, "cannot parse ratio '" + s + "'");
    }
}

LrParams lr_params(const Common& c) {
    LrParams lr;
    if (!c.eps.empty()) lr.eps = parse_ratio(c.eps);
    if (c.leaf_threshold) lr.leaf_threshold = c.leaf_threshold;
    return lr;
}

OracleParams oracle_params(const Common& c) {
    OracleParams p;
    p.mode = mode_names.at(c.mode);
    p.seed = c.seed;
    p.lr = lr_params(c);
    p.sparsify = !c.no_sparsify;
    return p;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(out);
    require(static_cast<bool>(f), ErrorKind::ParseError, "cannot write '" + out + "'");
    f << text << '\n';
}

bool is_oracle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[4] = {};
    in.read(magic, 4);
    return in.gcount() == 4 && std::equal(magic, magic + 4, oracle_magic);
}

std::vector<VertexSet> collect_queries(const std::vector<std::string>& inline_queries, const std::string& file) {
    std::vector<VertexSet> qs;
    for (const auto& q : inline_queries) qs.push_back(q == "-" ? VertexSet{} : parse_vertex_list(q));
    if (!file.empty()) {
        auto more = read_query_file(file);
        qs.insert(qs.end(), more.begin(), more.end());
    }
    return qs;
}

std::vector<BitVector> parse_bit_rows(const std::string& text) {
    std::vector<BitVector> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ',')) {
        BitVector r;
        for (char ch : row) {
            if (ch == ' ') continue;
            require(ch == '0' || ch == '1', ErrorKind::ParseError, "bit rows may contain only 0 and 1");
            r.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
        if (!r.empty()) rows.push_back(std::move(r));
    }
    return rows;
}

/// Compares oracle answers with brute force: every F with |F| <= f when that is cheap,
/// otherwise a seeded sample.
void check_equivalence(VertexCutOracle& o, const Graph& g, std::size_t samples, std::uint64_t seed,
                       ValidationReport& rep, bool audit) {
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    std::size_t checked = 0, bad = 0;
    auto one = [&](const VertexSet& q) {
        if (o.mode() == OracleMode::FConnected && q.size() != o.f()) return;
        const bool got = audit ? audited_query(o, q, rep) : o.query(q);
        ++checked;
        if (got != is_cut_bruteforce(g, q)) {
            if (++bad <= 10) rep.violation("equivalence: F=" + q.to_string() + " answered " + (got ? "cut" : "not-cut"));
        }
    };
    const bool exhaustive = count_subsets_up_to(g.n(), o.f()) <= 200000;
    if (exhaustive) {
        for_each_subset_up_to(all.span(), o.f(), [&](const VertexSet& q) {
            one(q);
            return true;
        });
    } else {
        for (const auto& q : random_queries(g.n(), o.f(), samples, seed, o.mode() == OracleMode::FConnected)) one(q);
    }
    rep.fact("equivalence_queries", std::to_string(checked));
    rep.fact("equivalence_exhaustive", exhaustive ? "true" : "false");
    rep.fact("equivalence_mismatches", std::to_string(bad));
}

json report_json(const ValidationReport& rep) {
    json facts = json::object();
    for (const auto& [k, v] : rep.facts) facts[k] = v;
    return {{"schema_version", 1}, {"ok", rep.ok()}, {"violations", rep.violations}, {"facts", facts}};
}

int run_gen(const Common& c, const std::string& kind, std::size_t n, std::optional<double> p, std::optional<std::size_t> m,
            bool connected, const std::string& vectors, const std::string& manifest_out) {
    Graph g;
    json manifest;
    if (kind == "random") {
        auto r = m ? gen_random_m(n, *m, c.seed, connected) : gen_random(n, p.value_or(0.1), c.seed, connected);
        g = std::move(r.graph);
        manifest = std::move(r.manifest);
    } else if (kind == "fconnected") {
        auto r = gen_f_connected(n, c.f, c.seed, p.value_or(0.1));
        g = std::move(r.graph);
        manifest = std::move(r.manifest);
    } else if (kind == "lb-family") {
        auto r = gen_lb_family(n, c.f, c.seed);
        g = std::move(r.graph);
        manifest = std::move(r.manifest);
    } else if (kind == "lb-path") {
        auto r = gen_lb_path(n, c.seed);
        g = std::move(r.graph);
        manifest = std::move(r.manifest);
    } else if (kind == "ov") {
        auto r = gen_ov_graph(parse_bit_rows(vectors));
        g = std::move(r.graph);
        manifest = std::move(r.manifest);
    } else {
        auto r = gen_oumv_graph(parse_bit_rows(vectors));
        g = std::move(r.graph);
        manifest = std::move(r.manifest);
    }
    if (c.out.empty() || c.out == "-") {
        write_edge_list(std::cout, g);
    } else {
        write_edge_list_file(c.out, g);
    }
    if (!manifest_out.empty()) emit(manifest_out, manifest.dump(2));
    return 0;
}

int run_build(const Common& c) {
    const auto g = read_edge_list_file(c.input);
    const auto o = build_oracle(g, c.f, oracle_params(c));
    require(!c.out.empty(), ErrorKind::InvalidParams, "build needs --out");
    write_oracle_file(c.out, o);
    auto manifest = oracle_manifest(o);
    manifest["bytes"] = std::filesystem::file_size(c.out);
    std::cout << manifest.dump(2) << '\n';
    return 0;
}

int run_query(const Common& c, const std::vector<std::string>& qs_inline, const std::string& qfile) {
    const auto qs = collect_queries(qs_inline, qfile);
    std::optional<VertexCutOracle> oracle;
    if (is_oracle_file(c.input)) {
        oracle.emplace(read_oracle_file(c.input).oracle);
    } else {
        oracle.emplace(build_oracle(read_edge_list_file(c.input), c.f, oracle_params(c)));
    }
    std::ostringstream out;
    for (const auto& q : qs) out << q.to_string() << ' ' << (oracle->query(q) ? "cut" : "not-cut") << '\n';
    std::string text = out.str();
    if (!text.empty()) text.pop_back();
    emit(c.out, text);
    return 0;
}

int run_labels(const Common& c, const std::string& provider, const std::string& dump,
               const std::vector<std::string>& qs_inline, const std::string& qfile) {
    const auto g = read_edge_list_file(c.input);
    auto scheme = build_labels(g, c.f, make_provider(provider, g, c.f));
    if (!dump.empty()) emit(dump, label_dump(scheme).dump(2));
    json j = label_length_report(scheme).to_json();
    j.erase("bits");
    json answers = json::array();
    for (const auto& q : collect_queries(qs_inline, qfile))
        answers.push_back({{"query", q.to_string()}, {"cut", query_labels(scheme, q)}});
    if (!answers.empty()) j["answers"] = answers;
    emit(c.out, j.dump(2));
    return 0;
}

int run_decompose(const Common& c, const std::string& dir, bool validate) {
    const auto g = read_edge_list_file(c.input);
    TedParams p;
    p.lr = lr_params(c);
    p.sparsify = !c.no_sparsify;
    const auto ted = export_ted(g, c.f, p);
    if (!dir.empty()) write_ted_dir(ted, dir);
    json j = ted_manifest(ted);
    int code = 0;
    if (validate) {
        const auto rep = validate_ted(ted, g, c.f);
        j["validation"] = report_json(rep);
        code = rep.ok() ? 0 : 1;
    }
    emit(c.out, j.dump(2));
    return code;
}

int run_bench_cmd(const Common& c, std::size_t queries, std::size_t threads, bool no_check) {
    const auto g = read_edge_list_file(c.input);
    BenchOptions opt;
    opt.queries = queries;
    opt.threads = threads;
    opt.seed = c.seed;
    opt.check_bruteforce = !no_check;
    const auto rep = run_bench(g, c.f, oracle_params(c), opt);
    emit(c.out, rep.to_json().dump(2));
    return rep.agreement() == 1.0 ? 0 : 1;
}

int run_validate(const Common& c, const std::string& graph_path, std::size_t samples) {
    ValidationReport rep;
    if (is_oracle_file(c.input)) {
        auto container = read_oracle_file(c.input);
        rep.fact("container", "ok");
        if (!graph_path.empty()) {
            const auto g = read_edge_list_file(graph_path);
            require(g.n() == container.oracle.n(), ErrorKind::InvalidParams, "graph and oracle disagree on n");
            check_equivalence(container.oracle, g, samples, c.seed, rep, false);
        }
    } else {
        const auto g = read_edge_list_file(c.input);
        auto o = build_oracle(g, c.f, oracle_params(c));
        check_equivalence(o, g, samples, c.seed, rep, true);
        for (const auto& v : check_terminal_reduction(o).violations) rep.violation(v);
        if (g.n() <= 12) {
            const auto props = run_property_suites(g, c.f);
            for (const auto& v : props.violations) rep.violation(v);
            rep.fact("property_suites", "run");
        }
        if (2 * c.f < g.n() && g.n() <= 20) {
            const auto scheme = build_labels(g, c.f, make_provider("registry", g, c.f));
            std::size_t bad = 0;
            for_each_subset_up_to(VertexSet::range(static_cast<Vertex>(g.n())).span(), c.f, [&](const VertexSet& q) {
                bad += query_labels(scheme, q) != is_cut_bruteforce(g, q);
                return true;
            });
            if (bad) rep.violation("labels: " + std::to_string(bad) + " label verdicts disagree with brute force");
            rep.fact("labels", "checked");
        }
        if (g.n() <= 16) {
            const auto ted_rep = validate_ted(export_ted(g, c.f), g, c.f);
            for (const auto& v : ted_rep.violations) rep.violation("ted " + v);
            rep.fact("ted", "checked");
        }
    }
    emit(c.out, report_json(rep).dump(2));
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vcut: vertex-cut oracles, labels and terminal expander decompositions"};
    app.require_subcommand(1);
    Common c;

    auto* gen = app.add_subcommand("gen", "generate a graph as an edge list");
    std::string kind = "random", vectors, manifest_out;
    std::size_t n = 16;
    std::optional<double> p;
    std::optional<std::size_t> m;
    bool connected = false;
    gen->add_option("--kind", kind)->check(CLI::IsMember({"random", "fconnected", "lb-family", "lb-path", "ov", "oumv"}));
    gen->add_option("--n", n, "vertex count");
    gen->add_option("--p", p, "edge probability (extra edges for fconnected)");
    gen->add_option("--m", m, "exact edge count for random graphs");
    gen->add_option("--f", c.f);
    gen->add_option("--seed", c.seed);
    gen->add_option("--vectors", vectors, "ov vectors or oumv matrix rows, e.g. 101,011");
    gen->add_flag("--connected", connected, "join components of a random graph");
    gen->add_option("--manifest", manifest_out, "write the generation manifest here");
    gen->add_option("--out", c.out);
    add_format(gen, c);

    auto* build = app.add_subcommand("build", "build an oracle and write its container");
    build->add_option("input", c.input)->required()->check(CLI::ExistingFile);
    build->add_option("--f", c.f)->required();
    build->add_option("--seed", c.seed);
    build->add_option("--out", c.out)->required();
    add_mode(build, c);
    add_format(build, c);
    add_lr(build, c);

    std::vector<std::string> qs_inline;
    std::string qfile;
    auto* query = app.add_subcommand("query", "answer cut queries from an oracle container or a graph");
    query->add_option("input", c.input)->required()->check(CLI::ExistingFile);
    query->add_option("-q,--query", qs_inline, "comma-separated vertex IDs; repeatable");
    query->add_option("--queries", qfile, "file with one query per line")->check(CLI::ExistingFile);
    query->add_option("--f", c.f);
    query->add_option("--seed", c.seed);
    query->add_option("--out", c.out);
    add_mode(query, c);
    add_format(query, c);
    add_lr(query, c);

    std::string provider = "registry", dump;
    auto* labels = app.add_subcommand("labels", "build the vertex labels and report their lengths");
    labels->add_option("input", c.input)->required()->check(CLI::ExistingFile);
    labels->add_option("--f", c.f)->required();
    labels->add_option("--provider", provider)->check(CLI::IsMember({"registry", "size-model"}));
    labels->add_option("--dump", dump, "write the label dump JSON here");
    labels->add_option("-q,--query", qs_inline);
    labels->add_option("--queries", qfile)->check(CLI::ExistingFile);
    labels->add_option("--seed", c.seed);
    labels->add_option("--out", c.out);
    add_format(labels, c);

    std::string ted_dir;
    bool ted_validate = false;
    auto* decompose = app.add_subcommand("decompose", "export the terminal expander decomposition");
    decompose->add_option("input", c.input)->required()->check(CLI::ExistingFile);
    decompose->add_option("--f", c.f)->required();
    decompose->add_option("--dir", ted_dir, "write one edge list per pair into this directory");
    decompose->add_flag("--validate", ted_validate, "check the decomposition properties");
    decompose->add_option("--seed", c.seed);
    decompose->add_option("--out", c.out);
    add_format(decompose, c);
    add_lr(decompose, c);

    std::size_t queries = 2000, threads = 0;
    bool no_check = false;
    auto* bench = app.add_subcommand("bench", "time oracle queries and check them against brute force");
    bench->add_option("input", c.input)->required()->check(CLI::ExistingFile);
    bench->add_option("--f", c.f)->required();
    bench->add_option("--queries", queries);
    bench->add_option("--threads", threads, "0 uses every hardware thread");
    bench->add_flag("--no-check", no_check, "skip brute-force agreement");
    bench->add_option("--seed", c.seed);
    bench->add_option("--out", c.out);
    add_mode(bench, c);
    add_format(bench, c);
    add_lr(bench, c);

    std::string graph_path;
    std::size_t samples = 4000;
    auto* validate = app.add_subcommand("validate", "run the equivalence and property checks; nonzero exit on violations");
    validate->add_option("input", c.input, "edge list, or oracle container")->required()->check(CLI::ExistingFile);
    validate->add_option("--graph", graph_path, "graph to compare a container against")->check(CLI::ExistingFile);
    validate->add_option("--f", c.f);
    validate->add_option("--samples", samples, "random queries when enumeration is too large");
    validate->add_option("--seed", c.seed);
    validate->add_option("--out", c.out);
    add_mode(validate, c);
    add_format(validate, c);
    add_lr(validate, c);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return run_gen(c, kind, n, p, m, connected, vectors, manifest_out);
        if (*build) return run_build(c);
        if (*query) return run_query(c, qs_inline, qfile);
        if (*labels) return run_labels(c, provider, dump, qs_inline, qfile);
        if (*decompose) return run_decompose(c, ted_dir, ted_validate);
        if (*bench) return run_bench_cmd(c, queries, threads, no_check);
        if (*validate) return run_validate(c, graph_path, samples);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
