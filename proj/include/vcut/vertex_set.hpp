#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "vcut/error.hpp"

namespace vcut {

using Vertex = std::uint32_t;

/// Sorted, duplicate-free set of vertex IDs. Membership is a binary search.
class VertexSet {
public:
    using const_iterator = std::vector<Vertex>::const_iterator;

    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

    /// Sorts the input; duplicates are rejected.
    explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        require(std::adjacent_find(ids_.begin(), ids_.end()) == ids_.end(),
                ErrorKind::InvalidParams, "vertex set contains duplicate IDs");
    }

    /// Sorts and silently drops duplicates.
    static VertexSet dedup(std::vector<Vertex> ids) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return from_sorted_unchecked(std::move(ids));
    }

    static VertexSet from_sorted_unchecked(std::vector<Vertex> ids) {
        VertexSet s;
        s.ids_ = std::move(ids);
        return s;
    }

    static VertexSet range(Vertex n) {
        std::vector<Vertex> ids(n);
        for (Vertex i = 0; i < n; ++i) ids[i] = i;
        return from_sorted_unchecked(std::move(ids));
    }

    bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    const_iterator begin() const noexcept { return ids_.begin(); }
    const_iterator end() const noexcept { return ids_.end(); }
    Vertex operator[](std::size_t i) const { return ids_[i]; }
    Vertex front() const { return ids_.front(); }
    Vertex back() const { return ids_.back(); }
    const std::vector<Vertex>& ids() const noexcept { return ids_; }
    std::span<const Vertex> span() const noexcept { return ids_; }

    bool subset_of(const VertexSet& other) const {
        return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
    }
    bool intersects(const VertexSet& other) const {
        auto a = ids_.begin();
        auto b = other.ids_.begin();
        while (a != ids_.end() && b != other.ids_.end()) {
            if (*a == *b) return true;
            if (*a < *b) ++a; else ++b;
        }
        return false;
    }

    VertexSet intersect(const VertexSet& other) const {
        std::vector<Vertex> out;
        std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                              std::back_inserter(out));
        return from_sorted_unchecked(std::move(out));
    }
    VertexSet unite(const VertexSet& other) const {
        std::vector<Vertex> out;
        std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                       std::back_inserter(out));
        return from_sorted_unchecked(std::move(out));
    }
    VertexSet minus(const VertexSet& other) const {
        std::vector<Vertex> out;
        std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                            std::back_inserter(out));
        return from_sorted_unchecked(std::move(out));
    }

    void check_range(std::size_t n, const char* what = "vertex set") const {
        if (!ids_.empty() && ids_.back() >= n)
            fail(ErrorKind::OutOfRange, std::string(what) + ": vertex " + std::to_string(ids_.back()) +
                                            " not in [0, " + std::to_string(n) + ")");
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(ids_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.ids_ <=> b.ids_; }

private:
    std::vector<Vertex> ids_;
};

/// Calls fn(const VertexSet&) for every subset of `universe` with at most `max_size`
/// elements, in order of increasing size. Stops early when fn returns false.
template <class Fn>
bool for_each_subset_up_to(std::span<const Vertex> universe, std::size_t max_size, Fn&& fn) {
    std::vector<Vertex> cur;
    const std::size_t n = universe.size();
    for (std::size_t k = 0; k <= std::min(max_size, n); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            cur.clear();
            for (auto i : idx) cur.push_back(universe[i]);
            if (!fn(VertexSet::from_sorted_unchecked(cur))) return false;
            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return true;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

inline std::uint64_t count_subsets_up_to(std::uint64_t n, std::uint64_t k) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i <= std::min(n, k); ++i) total += binomial(n, i);
    return total;
}

}  // namespace vcut
