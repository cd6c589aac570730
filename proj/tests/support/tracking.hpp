#pragma once

#include <memory>
#include <set>
#include <string>

#include "vcut/labels.hpp"

namespace fixtures {

/// Provider wrapper recording every handle passed to connected().
class TrackingProvider : public vcut::StLabelProvider {
public:
    explicit TrackingProvider(std::shared_ptr<vcut::StLabelProvider> inner) : inner_(std::move(inner)) {}
    std::string name() const override { return inner_->name(); }
    std::size_t label_bits() const override { return inner_->label_bits(); }
    void write(vcut::BitWriter& out, vcut::Vertex v) const override { inner_->write(out, v); }
    vcut::Vertex read(vcut::BitReader& in) const override { return inner_->read(in); }
    bool connected(vcut::Vertex s, vcut::Vertex t, const vcut::VertexSet& f_set) override {
        seen.insert(s);
        seen.insert(t);
        for (vcut::Vertex v : f_set) seen.insert(v);
        return inner_->connected(s, t, f_set);
    }
    std::set<vcut::Vertex> seen;

private:
    std::shared_ptr<vcut::StLabelProvider> inner_;
};

/// Decodes only the labels of F, answers from them, and reports whether every handle the
/// provider was asked about appears in those labels. Returns {answer, local}.
inline std::pair<bool, bool> tracked_label_query(const vcut::LabelingScheme& s, TrackingProvider& tracker,
                                                 const vcut::VertexSet& q) {
    std::vector<vcut::DecodedLabel> given;
    std::set<vcut::Vertex> visible;
    for (vcut::Vertex v : q) {
        given.push_back(vcut::decode_label(s.encoded[v], s.n, s.f, tracker));
        visible.insert(given.back().own_handle);
        visible.insert(given.back().neighbor_handles.begin(), given.back().neighbor_handles.end());
    }
    tracker.seen.clear();
    const bool answer = vcut::query_labels(given, s.n, s.f, tracker);
    bool local = true;
    for (vcut::Vertex h : tracker.seen) local = local && visible.count(h) > 0;
    return {answer, local};
}

}  // namespace fixtures
