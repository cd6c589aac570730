#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcut/cut_detector.hpp"
#include "vcut/error.hpp"
#include "vcut/oracle.hpp"

namespace vcut {

inline constexpr std::uint32_t oracle_format_version = 1;
inline constexpr char oracle_magic[4] = {'V', 'C', 'O', 'R'};

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline nlohmann::json oracle_manifest(const VertexCutOracle& o) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["n"] = o.n();
    j["f"] = o.f();
    j["mode"] = std::string(to_string(o.mode()));
    j["rounds"] = o.rounds().size();
    auto& rounds = j["round_info"] = nlohmann::json::array();
    bool family_exhaustive = true;
    for (const auto& r : o.rounds()) {
        nlohmann::json rj{{"terminals", r.terminals.size()}, {"next_terminals", r.next_terminals.size()},
                          {"detectors", r.detectors.size()}};
        std::size_t depth = 0, nodes = 0, sv = 0, se = 0;
        for (const auto& d : r.detectors) {
            depth = std::max(depth, d.tree().depth);
            nodes += d.tree().nodes.size();
            sv += d.tree().sum_vertices;
            se += d.tree().sum_edges;
        }
        rj["max_depth"] = depth;
        rj["nodes"] = nodes;
        rj["sum_vertices"] = sv;
        rj["sum_edges"] = se;
        if (o.mode() == OracleMode::HitMiss) {
            rj["family_size"] = r.family.size();
            rj["family_rounds"] = r.family_rounds;
            rj["family_exhaustive"] = r.family_exhaustive;
            family_exhaustive = family_exhaustive && r.family_exhaustive;
        }
        rounds.push_back(std::move(rj));
    }
    const auto& fl = o.flags();
    j["flags"] = {{"sparsified", fl.sparsified},
                  {"fconnected_verified", fl.fconnected_verified},
                  {"fconnected_attested", fl.fconnected_attested},
                  {"unverified_expanders", fl.unverified_expanders},
                  {"reduction_violations", fl.reduction_violations},
                  {"forced_leaves", fl.forced_leaves}};
    if (o.mode() == OracleMode::HitMiss) {
        j["flags"]["hit_miss_family_verified_exhaustively"] = family_exhaustive;
        j["determinism"] = "deterministic given the verified hit-miss family";
    }
    return j;
}

namespace detail {

class WordWriter {
public:
    void u32(std::uint64_t v) {
        require(v <= 0xffffffffull, ErrorKind::FormatError, "value does not fit in 32 bits");
        for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void set(const VertexSet& s) {
        u32(s.size());
        for (Vertex v : s) u32(v);
    }
    void ratio(const Ratio& r) {
        u32(r.num);
        u32(r.den);
    }
    void subgraph(const SubGraph& g) {
        set(g.ids());
        u32(g.m());
        for (auto [a, b] : g.graph().edges()) {
            u32(a);
            u32(b);
        }
    }
    std::vector<std::uint8_t> bytes;
};

class WordReader {
public:
    WordReader(const std::uint8_t* data, std::size_t len) : p_(data), end_(data + len) {}

    std::uint32_t u32() {
        require(end_ - p_ >= 4, ErrorKind::FormatError, "oracle body truncated");
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t{p_[i]} << (8 * i);
        p_ += 4;
        return v;
    }
    std::size_t count(std::size_t per_item_words = 1) {
        auto c = u32();
        require(static_cast<std::size_t>(end_ - p_) / 4 >= std::size_t{c} * per_item_words, ErrorKind::FormatError,
                "oracle body count exceeds remaining data");
        return c;
    }
    VertexSet set() {
        std::vector<Vertex> v(count());
        for (auto& x : v) x = u32();
        require(std::is_sorted(v.begin(), v.end()) && std::adjacent_find(v.begin(), v.end()) == v.end(),
                ErrorKind::FormatError, "stored vertex set not strictly increasing");
        return VertexSet::from_sorted_unchecked(std::move(v));
    }
    Ratio ratio() {
        auto n = u32();
        auto d = u32();
        require(d != 0, ErrorKind::FormatError, "zero denominator");
        return Ratio(n, d);
    }
    SubGraph subgraph() {
        auto ids = set();
        std::vector<Edge> edges(count(2));
        for (auto& e : edges) {
            e.first = u32();
            e.second = u32();
        }
        try {
            Graph g(ids.size(), std::move(edges));
            return SubGraph(std::move(g), std::move(ids));
        } catch (const Error& e) {
            fail(ErrorKind::FormatError, std::string("stored graph invalid: ") + e.what());
        }
    }
    bool done() const { return p_ == end_; }

private:
    const std::uint8_t* p_;
    const std::uint8_t* end_;
};

inline void write_us(WordWriter& w, const std::optional<USDetector>& d) {
    w.u32(d ? 1 : 0);
    if (!d) return;
    w.set(d->u());
    w.set(d->s());
    w.u32(d->f());
    w.u32(d->f_connected());
    w.u32(d->tables().size());
    for (std::size_t m = 0; m < d->tables().size(); ++m) {
        w.u32(static_cast<unsigned char>(d->disconnected()[m]));
        const auto& t = d->tables()[m];
        w.u32(t.offsets().size());
        for (auto o : t.offsets()) w.u32(o);
        w.u32(t.data().size());
        for (auto v : t.data()) w.u32(v);
    }
}

inline std::optional<USDetector> read_us(WordReader& r) {
    if (!r.u32()) return std::nullopt;
    auto u = r.set();
    auto s = r.set();
    auto f = r.u32();
    bool fc = r.u32() != 0;
    const auto masks = r.count(3);
    require(masks == (std::size_t{1} << u.size()), ErrorKind::FormatError, "US table count does not match |U|");
    std::vector<SetArray> tables;
    std::vector<char> disc;
    for (std::size_t m = 0; m < masks; ++m) {
        disc.push_back(static_cast<char>(r.u32() != 0));
        std::vector<std::uint32_t> offsets(r.count());
        for (auto& o : offsets) o = r.u32();
        std::vector<Vertex> data(r.count());
        for (auto& v : data) v = r.u32();
        require(!offsets.empty() && offsets.front() == 0 && offsets.back() == data.size() &&
                    std::is_sorted(offsets.begin(), offsets.end()),
                ErrorKind::FormatError, "US table offsets inconsistent");
        tables.push_back(SetArray::from_raw(std::move(data), std::move(offsets)));
    }
    return USDetector::from_parts(std::move(u), std::move(s), f, fc, std::move(tables), std::move(disc));
}

inline void write_detector(WordWriter& w, const TerminalCutDetector& d) {
    const auto& t = d.tree();
    w.u32(t.nodes.size());
    w.set(t.s_star);
    w.ratio(t.eps);
    w.u32(t.leaf_threshold);
    w.u32(t.f);
    w.u32(t.depth);
    w.u32(t.root_terminals);
    w.u32(static_cast<std::uint64_t>(t.c * 1000.0 + 0.5));
    w.u32(t.sum_vertices);
    w.u32(t.sum_edges);
    w.u32(t.forced_leaves);
    w.u32(t.unverified_expanders);
    for (const auto& q : t.nodes) {
        w.u32(static_cast<std::uint32_t>(q.kind));
        w.u32(q.depth);
        for (auto link : {q.parent, q.left, q.right, q.step}) w.u32(static_cast<std::uint32_t>(link));
        w.set(q.vertices);
        w.set(q.terminals);
        w.set(q.cut.left);
        w.set(q.cut.sep);
        w.set(q.cut.right);
        w.set(q.u_left);
        w.set(q.u_right);
        w.set(q.u_s);
        w.u32(q.edge_count);
        w.ratio(q.phi);
        w.u32(q.phi_exact);
        w.u32(q.forced_leaf);
    }
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const auto& leaf = d.leaves()[i];
        if (const auto* fw = std::get_if<FewTDetector>(&leaf)) {
            w.u32(1);
            w.subgraph(fw->subgraph());
            w.set(fw->terminals());
        } else if (const auto* te = std::get_if<TEDetector>(&leaf)) {
            w.u32(2);
            w.subgraph(te->subgraph());
            w.set(te->terminals());
        } else {
            w.u32(0);
        }
        write_us(w, d.us_left()[i]);
        write_us(w, d.us_right()[i]);
        write_us(w, d.us_self()[i]);
    }
}

inline TerminalCutDetector read_detector(WordReader& r, DetectorMode mode) {
    LrTree t;
    const auto nodes = r.count();
    t.s_star = r.set();
    t.eps = r.ratio();
    t.leaf_threshold = r.u32();
    t.f = r.u32();
    t.depth = r.u32();
    t.root_terminals = r.u32();
    t.c = r.u32() / 1000.0;
    t.sum_vertices = r.u32();
    t.sum_edges = r.u32();
    t.forced_leaves = r.u32();
    t.unverified_expanders = r.u32() != 0;
    auto link = [&](std::uint32_t v) {
        auto s = static_cast<std::int32_t>(v);
        require(s >= -1 && s < static_cast<std::int32_t>(nodes), ErrorKind::FormatError, "node link out of range");
        return s;
    };
    for (std::size_t i = 0; i < nodes; ++i) {
        LrNode q;
        auto kind = r.u32();
        require(kind <= static_cast<std::uint32_t>(NodeKind::LeafStepchild), ErrorKind::FormatError, "bad node kind");
        q.kind = static_cast<NodeKind>(kind);
        q.depth = r.u32();
        q.parent = link(r.u32());
        q.left = link(r.u32());
        q.right = link(r.u32());
        q.step = link(r.u32());
        q.vertices = r.set();
        q.terminals = r.set();
        q.cut.left = r.set();
        q.cut.sep = r.set();
        q.cut.right = r.set();
        q.u_left = r.set();
        q.u_right = r.set();
        q.u_s = r.set();
        q.edge_count = r.u32();
        q.phi = r.ratio();
        q.phi_exact = r.u32() != 0;
        q.forced_leaf = r.u32() != 0;
        require(is_leaf(q.kind) || (q.left >= 0 && q.right >= 0), ErrorKind::FormatError, "internal node lacks children");
        t.nodes.push_back(std::move(q));
    }
    require(!t.nodes.empty(), ErrorKind::FormatError, "empty LR tree");
    std::vector<LeafDetector> leaves(nodes);
    std::vector<std::optional<USDetector>> usl(nodes), usr(nodes), uss(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const auto tag = r.u32();
        require(tag <= 2, ErrorKind::FormatError, "bad leaf detector tag");
        require((tag != 0) == is_leaf(t.nodes[i].kind), ErrorKind::FormatError, "leaf detector on wrong node");
        if (tag != 0) {
            auto g = r.subgraph();
            auto terms = r.set();
            try {
                if (tag == 1) leaves[i] = FewTDetector(std::move(g), std::move(terms), t.f);
                else leaves[i] = TEDetector(std::move(g), std::move(terms), t.f);
            } catch (const Error& e) {
                fail(ErrorKind::FormatError, std::string("stored leaf detector invalid: ") + e.what());
            }
        }
        usl[i] = read_us(r);
        usr[i] = read_us(r);
        uss[i] = read_us(r);
        const bool internal = !is_leaf(t.nodes[i].kind);
        const bool want_sides = internal && mode != DetectorMode::FConnected;
        const bool want_self = internal && mode == DetectorMode::FConnected;
        require(usl[i].has_value() == want_sides && usr[i].has_value() == want_sides && uss[i].has_value() == want_self,
                ErrorKind::FormatError, "US detectors do not match node kind");
    }
    return TerminalCutDetector::from_parts(std::move(t), mode, std::move(leaves), std::move(usl), std::move(usr),
                                           std::move(uss));
}

}  // namespace detail

/// Container: "VCOR", u32 version, u32 manifest length, manifest JSON, u64 FNV-1a of the
/// body, u64 body length, body (little-endian u32 words).
inline std::vector<std::uint8_t> serialize_oracle(const VertexCutOracle& o) {
    detail::WordWriter body;
    body.u32(o.n());
    body.u32(o.f());
    body.u32(static_cast<std::uint32_t>(o.mode()));
    const auto& fl = o.flags();
    for (std::uint64_t v : {std::uint64_t{fl.sparsified}, std::uint64_t{fl.fconnected_verified},
                            std::uint64_t{fl.fconnected_attested}, std::uint64_t{fl.unverified_expanders},
                            std::uint64_t{fl.reduction_violations}, std::uint64_t{fl.forced_leaves}})
        body.u32(v);
    body.u32(o.rounds().size());
    for (const auto& r : o.rounds()) {
        body.set(r.terminals);
        body.set(r.next_terminals);
        body.u32(r.family_rounds);
        body.u32(r.family_exhaustive);
        body.u32(r.family.size());
        for (const auto& s : r.family) body.set(s);
        body.u32(r.detectors.size());
        for (const auto& d : r.detectors) detail::write_detector(body, d);
    }

    const auto manifest = oracle_manifest(o).dump();
    std::vector<std::uint8_t> out(oracle_magic, oracle_magic + 4);
    auto put = [&](std::uint64_t v, int bytes) {
        for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    put(oracle_format_version, 4);
    put(manifest.size(), 4);
    out.insert(out.end(), manifest.begin(), manifest.end());
    put(fnv1a64(body.bytes.data(), body.bytes.size()), 8);
    put(body.bytes.size(), 8);
    out.insert(out.end(), body.bytes.begin(), body.bytes.end());
    return out;
}

struct OracleContainer {
    nlohmann::json manifest;
    VertexCutOracle oracle;
};

inline OracleContainer deserialize_oracle(const std::vector<std::uint8_t>& in) {
    std::size_t pos = 0;
    auto take = [&](int bytes) {
        require(in.size() - pos >= static_cast<std::size_t>(bytes), ErrorKind::FormatError, "oracle container truncated");
        std::uint64_t v = 0;
        for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[pos + static_cast<std::size_t>(i)]} << (8 * i);
        pos += static_cast<std::size_t>(bytes);
        return v;
    };
    require(in.size() >= 4 && std::memcmp(in.data(), oracle_magic, 4) == 0, ErrorKind::FormatError, "bad magic");
    pos = 4;
    require(take(4) == oracle_format_version, ErrorKind::FormatError, "unsupported oracle format version");
    const auto mlen = take(4);
    require(in.size() - pos >= mlen, ErrorKind::FormatError, "manifest truncated");
    OracleContainer c;
    try {
        c.manifest = nlohmann::json::parse(in.begin() + static_cast<std::ptrdiff_t>(pos),
                                           in.begin() + static_cast<std::ptrdiff_t>(pos + mlen));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::FormatError, std::string("manifest is not JSON: ") + e.what());
    }
    pos += mlen;
    const auto checksum = take(8);
    const auto blen = take(8);
    require(in.size() - pos == blen, ErrorKind::FormatError, "body length mismatch");
    require(fnv1a64(in.data() + pos, blen) == checksum, ErrorKind::FormatError, "body checksum mismatch");

    detail::WordReader r(in.data() + pos, blen);
    const auto n = r.u32();
    const auto f = r.u32();
    const auto mode_raw = r.u32();
    require(mode_raw <= static_cast<std::uint32_t>(DetectorMode::HitMiss), ErrorKind::FormatError, "bad mode");
    const auto mode = static_cast<OracleMode>(mode_raw);
    OracleFlags fl;
    fl.sparsified = r.u32() != 0;
    fl.fconnected_verified = r.u32() != 0;
    fl.fconnected_attested = r.u32() != 0;
    fl.unverified_expanders = r.u32() != 0;
    fl.reduction_violations = r.u32();
    fl.forced_leaves = r.u32();
    std::vector<OracleRound> rounds(r.count());
    for (auto& round : rounds) {
        round.terminals = r.set();
        round.next_terminals = r.set();
        round.family_rounds = r.u32();
        round.family_exhaustive = r.u32() != 0;
        round.family.resize(r.count());
        for (auto& s : round.family) s = r.set();
        const auto dets = r.count();
        for (std::size_t i = 0; i < dets; ++i) round.detectors.push_back(detail::read_detector(r, mode));
        require(mode != OracleMode::HitMiss || round.family.size() == round.detectors.size(), ErrorKind::FormatError,
                "family and detector counts differ");
    }
    require(r.done(), ErrorKind::FormatError, "trailing data in oracle body");
    c.oracle = VertexCutOracle(n, f, mode, std::move(rounds), fl);
    return c;
}

inline void write_oracle_file(const std::string& path, const VertexCutOracle& o) {
    const auto bytes = serialize_oracle(o);
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), ErrorKind::FormatError, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

inline OracleContainer read_oracle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorKind::ParseError, "cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_oracle(bytes);
}

}  // namespace vcut
