#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcut/bits.hpp"
#include "vcut/conn_oracle.hpp"
#include "vcut/connectivity.hpp"
#include "vcut/error.hpp"
#include "vcut/report.hpp"
#include "vcut/sparsify.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

/// Source of the per-vertex connectivity labels l(v). A provider writes l(v) into a label's
/// bit stream, reads it back as an opaque handle, and decides s-t connectivity in G - F
/// from the handles of {s, t} and F.
class StLabelProvider {
public:
    virtual ~StLabelProvider() = default;
    virtual std::string name() const = 0;
    virtual std::size_t label_bits() const = 0;
    virtual void write(BitWriter& out, Vertex v) const = 0;
    virtual Vertex read(BitReader& in) const = 0;
    virtual bool connected(Vertex s, Vertex t, const VertexSet& f_set) = 0;
};

/// l(v) is just v's ID; decisions are delegated to one shared failure-connectivity
/// oracle. Useful for exercising the scheme, not a succinct labelling.
class RegistryProvider : public StLabelProvider {
public:
    RegistryProvider(std::shared_ptr<const Graph> g, std::size_t f)
        : oracle_(std::move(g), f), width_(width_for(oracle_.graph().n() ? oracle_.graph().n() - 1 : 0)) {}

    std::string name() const override { return "registry"; }
    std::size_t label_bits() const override { return width_; }
    void write(BitWriter& out, Vertex v) const override {
        out.write(v, width_);
        out.zeros(label_bits() - width_);
    }
    Vertex read(BitReader& in) const override {
        auto v = static_cast<Vertex>(in.read(width_));
        in.skip(label_bits() - width_);
        return v;
    }
    bool connected(Vertex s, Vertex t, const VertexSet& f_set) override {
        if (!(oracle_.failures() == f_set) || !primed_) {
            oracle_.update(f_set);
            primed_ = true;
        }
        return oracle_.connected(s, t);
    }

protected:
    FailureConnectivityOracle oracle_;
    unsigned width_;
    bool primed_ = false;
};

/// Same decisions as the registry, but each l(v) is padded to a modelled succinct size of
/// ceil(f^f_power * ceil(log2 n)^log_power) bits so that length accounting reflects it.
class SizeModelProvider : public RegistryProvider {
public:
    SizeModelProvider(std::shared_ptr<const Graph> g, std::size_t f, double f_power = 2, double log_power = 3)
        : RegistryProvider(std::move(g), f) {
        const double lg = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(oracle_.graph().n(), 2))));
        bits_ = std::max<std::size_t>(
            width_, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(f), f_power) * std::pow(lg, log_power))));
    }
    std::string name() const override { return "size-model"; }
    std::size_t label_bits() const override { return bits_; }

private:
    std::size_t bits_;
};

inline std::shared_ptr<StLabelProvider> make_provider(const std::string& name, const Graph& g, std::size_t f) {
    auto shared = std::make_shared<const Graph>(g);
    if (name == "registry") return std::make_shared<RegistryProvider>(shared, f);
    if (name == "size-model") return std::make_shared<SizeModelProvider>(shared, f);
    fail(ErrorKind::InvalidParams, "unknown label provider '" + name + "'");
}

struct ExplicitLabel {
    VertexSet k;
    std::size_t size_a = 0;
    std::optional<VertexSet> b_set;  // stored iff size_a >= n - f
};

/// A_K is the largest component of G - K (ties: smallest minimum ID); B_K is the rest.
inline ExplicitLabel make_explicit_label(const Graph& g, const VertexSet& k, std::size_t f) {
    const auto comps = components_without(g, k);
    const auto sizes = comps.sizes();
    // Components are numbered in order of their smallest vertex, so the first maximum wins.
    std::size_t best = 0;
    for (std::size_t c = 1; c < sizes.size(); ++c)
        if (sizes[c] > sizes[best]) best = c;
    ExplicitLabel e;
    e.k = k;
    e.size_a = sizes.empty() ? 0 : sizes[best];
    if (e.size_a + f >= g.n()) {
        std::vector<Vertex> b;
        for (Vertex v = 0; v < g.n(); ++v)
            if (comps.label[v] >= 0 && static_cast<std::size_t>(comps.label[v]) != best) b.push_back(v);
        e.b_set = VertexSet::from_sorted_unchecked(std::move(b));
    }
    return e;
}

struct VertexLabel {
    Vertex id = 0;
    bool high = false;
    std::vector<Vertex> neighbors;  // N(v) if low, N_f(v) if high; each stored with its l(.)
    std::vector<ExplicitLabel> explicit_labels;
};

struct EncodedLabel {
    std::vector<std::uint8_t> bytes;
    std::size_t bits = 0;
};

/// Field widths of the canonical layout, fixed by (n, f).
struct LabelWidths {
    unsigned id, count, small, size;
    LabelWidths(std::size_t n, std::size_t f)
        : id(width_for(n ? n - 1 : 0)), count(width_for(n ? n - 1 : 0)), small(width_for(f)), size(width_for(n)) {}
};

inline EncodedLabel encode_label(const VertexLabel& l, std::size_t n, std::size_t f, const StLabelProvider& p) {
    const LabelWidths w(n, f);
    BitWriter out;
    out.write(l.id, w.id);
    p.write(out, l.id);
    out.bit(l.high);
    out.write(l.neighbors.size(), l.high ? w.small : w.count);
    for (Vertex u : l.neighbors) {
        out.write(u, w.id);
        p.write(out, u);
    }
    if (l.high) {
        out.write(l.explicit_labels.size(), 32);
        for (const auto& e : l.explicit_labels) {
            out.write(e.k.size(), w.small);
            for (Vertex v : e.k) out.write(v, w.id);
            out.write(e.size_a, w.size);
            out.bit(e.b_set.has_value());
            if (e.b_set) {
                out.write(e.b_set->size(), w.small);
                for (Vertex v : *e.b_set) out.write(v, w.id);
            }
        }
    }
    return {out.bytes(), out.bits()};
}

/// Decoded label: the stored records plus the l(.) handles read from the stream.
struct DecodedLabel {
    VertexLabel label;
    Vertex own_handle = 0;
    std::vector<Vertex> neighbor_handles;
};

inline DecodedLabel decode_label(const EncodedLabel& e, std::size_t n, std::size_t f, const StLabelProvider& p) {
    const LabelWidths w(n, f);
    BitReader in(e.bytes, e.bits);
    DecodedLabel d;
    auto& l = d.label;
    l.id = static_cast<Vertex>(in.read(w.id));
    d.own_handle = p.read(in);
    l.high = in.bit();
    const auto count = in.read(l.high ? w.small : w.count);
    for (std::uint64_t i = 0; i < count; ++i) {
        l.neighbors.push_back(static_cast<Vertex>(in.read(w.id)));
        d.neighbor_handles.push_back(p.read(in));
    }
    if (l.high) {
        const auto ex = in.read(32);
        for (std::uint64_t i = 0; i < ex; ++i) {
            ExplicitLabel x;
            std::vector<Vertex> k(in.read(w.small));
            for (auto& v : k) v = static_cast<Vertex>(in.read(w.id));
            x.k = VertexSet(std::move(k));
            x.size_a = in.read(w.size);
            if (in.bit()) {
                std::vector<Vertex> b(in.read(w.small));
                for (auto& v : b) v = static_cast<Vertex>(in.read(w.id));
                x.b_set = VertexSet(std::move(b));
            }
            l.explicit_labels.push_back(std::move(x));
        }
    }
    require(in.done(), ErrorKind::ParseError, "trailing bits in label of vertex " + std::to_string(l.id));
    return d;
}

struct LabelingScheme {
    std::size_t n = 0;
    std::size_t f = 0;
    double threshold = 0;  // low degree iff deg <= threshold
    VertexSet high;
    std::vector<VertexLabel> labels;
    std::vector<EncodedLabel> encoded;
    std::shared_ptr<StLabelProvider> provider;
    std::size_t explicit_count = 0;  // distinct explicit labels L(K)
    bool high_count_ok = true;      // |H| <= n^{1/f}
    bool explicit_count_ok = true;  // per high vertex: exactly sum_{i<f} C(|H|-1, i) labels
};

inline double degree_threshold(std::size_t n, std::size_t f) {
    return 2.0 * static_cast<double>(f + 1) * std::pow(static_cast<double>(n), 1.0 - 1.0 / static_cast<double>(f));
}

/// Builds the vertex labels on the sparse certificate of g: low-degree vertices store their
/// neighbourhoods, high-degree ones their f lowest-ID neighbours plus L(K) for every
/// K of high-degree vertices containing them with |K| <= f.
inline LabelingScheme build_labels(const Graph& g, std::size_t f, std::shared_ptr<StLabelProvider> provider) {
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(2 * f < g.n(), ErrorKind::FTooLarge, "labels need f < n/2");
    require(is_connected(g), ErrorKind::DisconnectedInput, "input graph is not connected");
    require(provider != nullptr, ErrorKind::InvalidParams, "null label provider");
    LabelingScheme s;
    s.n = g.n();
    s.f = f;
    s.provider = std::move(provider);
    s.threshold = degree_threshold(g.n(), f);
    const Graph sg = sparsify(g, f);

    std::vector<Vertex> high;
    for (Vertex v = 0; v < sg.n(); ++v)
        if (static_cast<double>(sg.degree(v)) > s.threshold) high.push_back(v);
    s.high = VertexSet::from_sorted_unchecked(std::move(high));
    s.high_count_ok = static_cast<double>(s.high.size()) <= std::pow(static_cast<double>(g.n()), 1.0 / static_cast<double>(f)) + 1e-9;

    std::map<Vertex, std::vector<ExplicitLabel>> per_vertex;
    for_each_subset_up_to(s.high.span(), f, [&](const VertexSet& k) {
        if (k.empty()) return true;
        auto e = make_explicit_label(sg, k, f);
        ++s.explicit_count;
        for (Vertex v : k) per_vertex[v].push_back(e);
        return true;
    });
    const auto expected = s.high.empty() ? 0 : count_subsets_up_to(s.high.size() - 1, f - 1);

    s.labels.resize(g.n());
    for (Vertex v = 0; v < g.n(); ++v) {
        auto& l = s.labels[v];
        l.id = v;
        l.high = s.high.contains(v);
        const auto nb = sg.neighbors(v);
        const std::size_t keep = l.high ? std::min<std::size_t>(f, nb.size()) : nb.size();
        l.neighbors.assign(nb.begin(), nb.begin() + static_cast<std::ptrdiff_t>(keep));
        if (l.high) {
            l.explicit_labels = std::move(per_vertex[v]);
            if (l.explicit_labels.size() != expected) s.explicit_count_ok = false;
        }
        s.encoded.push_back(encode_label(l, s.n, f, *s.provider));
    }
    return s;
}

/// Decides whether F is a cut from the decoded labels of F alone (plus n and f).
inline bool query_labels(const std::vector<DecodedLabel>& labels, std::size_t n, std::size_t f, StLabelProvider& p) {
    std::vector<Vertex> ids;
    for (const auto& d : labels) ids.push_back(d.label.id);
    const auto f_set = VertexSet::dedup(ids);
    require(f_set.size() <= f, ErrorKind::TooManyFailures,
            "|F|=" + std::to_string(f_set.size()) + " exceeds f=" + std::to_string(f));
    require(2 * f < n, ErrorKind::FTooLarge, "labels need f < n/2");
    f_set.check_range(n, "query set");

    // T: every vertex outside F whose l(.) appears in some label of F.
    std::map<Vertex, Vertex> t_handles;
    for (const auto& d : labels)
        for (std::size_t i = 0; i < d.label.neighbors.size(); ++i)
            if (!f_set.contains(d.label.neighbors[i])) t_handles.emplace(d.label.neighbors[i], d.neighbor_handles[i]);
    std::vector<Vertex> f_handles;
    for (const auto& d : labels) f_handles.push_back(d.own_handle);
    const auto f_handle_set = VertexSet::dedup(f_handles);
    if (!t_handles.empty()) {
        const Vertex s = t_handles.begin()->second;
        for (const auto& [t, handle] : t_handles)
            if (!p.connected(s, handle, f_handle_set)) return true;
    }

    std::vector<Vertex> k_ids;
    for (const auto& d : labels)
        if (d.label.high) k_ids.push_back(d.label.id);
    const auto k = VertexSet::dedup(k_ids);
    if (k.empty()) return false;
    const ExplicitLabel* lk = nullptr;
    for (const auto& d : labels) {
        if (!d.label.high) continue;
        for (const auto& e : d.label.explicit_labels)
            if (e.k == k) lk = &e;
        if (lk) break;
    }
    require(lk != nullptr, ErrorKind::MissingExplicitLabel, "no explicit label for K=" + k.to_string());
    if (lk->size_a + f_set.size() < n) return true;
    require(lk->b_set.has_value(), ErrorKind::MissingExplicitLabel, "explicit label for K=" + k.to_string() + " lacks B_K");
    return !lk->b_set->subset_of(f_set);
}

/// Convenience: decodes the stored labels of F and queries them.
inline bool query_labels(const LabelingScheme& s, const VertexSet& f_set) {
    f_set.check_range(s.n, "query set");
    std::vector<DecodedLabel> labels;
    for (Vertex v : f_set) labels.push_back(decode_label(s.encoded[v], s.n, s.f, *s.provider));
    return query_labels(labels, s.n, s.f, *s.provider);
}

struct LabelLengthReport {
    std::string provider;
    std::size_t n = 0, f = 0;
    std::vector<std::size_t> bits;  // per vertex
    std::size_t max_bits = 0;
    std::size_t total_bits = 0;
    std::size_t high_count = 0;
    std::size_t explicit_labels = 0;
    double a = 4, b = 4;
    double max_ratio = 0;    // max / (n^{1-1/f} log2(n)^a)
    double total_ratio = 0;  // total / (n log2(n)^b)

    nlohmann::json to_json() const {
        return {{"schema_version", 1}, {"provider", provider}, {"n", n}, {"f", f},
                {"max_bits", max_bits}, {"total_bits", total_bits}, {"high_count", high_count},
                {"explicit_labels", explicit_labels}, {"a", a}, {"b", b},
                {"max_ratio", max_ratio}, {"total_ratio", total_ratio}, {"bits", bits}};
    }
};

inline LabelLengthReport label_length_report(const LabelingScheme& s, double a = 4, double b = 4) {
    LabelLengthReport r;
    r.provider = s.provider->name();
    r.n = s.n;
    r.f = s.f;
    r.a = a;
    r.b = b;
    r.high_count = s.high.size();
    r.explicit_labels = s.explicit_count;
    for (const auto& e : s.encoded) {
        r.bits.push_back(e.bits);
        r.max_bits = std::max(r.max_bits, e.bits);
        r.total_bits += e.bits;
    }
    const double n = static_cast<double>(std::max<std::size_t>(s.n, 2));
    const double lg = std::log2(n);
    r.max_ratio = static_cast<double>(r.max_bits) / (std::pow(n, 1.0 - 1.0 / static_cast<double>(s.f)) * std::pow(lg, a));
    r.total_ratio = static_cast<double>(r.total_bits) / (n * std::pow(lg, b));
    return r;
}

/// Dump: scheme manifest plus one record per vertex (ID, class, bit length, hex payload).
inline nlohmann::json label_dump(const LabelingScheme& s) {
    nlohmann::json j{{"schema_version", 1}, {"n", s.n}, {"f", s.f}, {"threshold", s.threshold},
                     {"high_count", s.high.size()}, {"provider", s.provider->name()}};
    auto& arr = j["labels"] = nlohmann::json::array();
    for (std::size_t v = 0; v < s.labels.size(); ++v)
        arr.push_back({{"id", v}, {"class", s.labels[v].high ? "high" : "low"}, {"bits", s.encoded[v].bits},
                       {"hex", to_hex(s.encoded[v].bytes)}});
    return j;
}

/// Reads the encoded labels back from a dump.
inline std::vector<EncodedLabel> read_label_dump(const nlohmann::json& j) {
    std::vector<EncodedLabel> out;
    try {
        require(j.at("schema_version").get<int>() == 1, ErrorKind::ParseError, "unsupported label dump version");
        for (const auto& r : j.at("labels")) {
            EncodedLabel e{from_hex(r.at("hex").get<std::string>()), r.at("bits").get<std::size_t>()};
            require(e.bytes.size() == (e.bits + 7) / 8, ErrorKind::ParseError, "label payload length mismatch");
            out.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::ParseError, std::string("bad label dump: ") + e.what());
    }
    return out;
}

/// On an f-connected graph, every x in a cut F of size f has two neighbours in different
/// components of G - F. Checked over all such F by enumeration.
inline ValidationReport check_fconnected_warmup(const Graph& g, std::size_t f, std::size_t max_n = 16) {
    require(g.n() <= max_n, ErrorKind::SizeCapExceeded,
            "warm-up check enumerates cuts; n=" + std::to_string(g.n()) + " exceeds " + std::to_string(max_n));
    require(f >= 1, ErrorKind::InvalidParams, "f must be at least 1");
    require(is_f_connected(g, f), ErrorKind::NotFConnected, "graph is not " + std::to_string(f) + "-connected");
    ValidationReport rep;
    std::size_t cuts = 0;
    const auto all = VertexSet::range(static_cast<Vertex>(g.n()));
    for_each_subset_up_to(all.span(), f, [&](const VertexSet& fs) {
        if (fs.size() != f) return true;
        const auto comps = components_without(g, fs);
        if (comps.count < 2) return true;
        ++cuts;
        for (Vertex x : fs) {
            std::int32_t first = -1;
            bool split = false;
            for (Vertex u : g.neighbors(x)) {
                const auto l = comps.label[u];
                if (l < 0) continue;
                if (first < 0) first = l;
                else if (l != first) split = true;
            }
            if (!split) rep.violation("warmup: in cut " + fs.to_string() + " vertex " + std::to_string(x) +
                                      " has no two separated neighbours");
        }
        return true;
    });
    rep.fact("cuts", std::to_string(cuts));
    return rep;
}

}  // namespace vcut
