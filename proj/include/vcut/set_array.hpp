#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "vcut/vertex_set.hpp"

namespace vcut {

/// Immutable sorted collection of small vertex sets. Sets are ordered by size, then
/// lexicographically by their ascending IDs, and stored back to back in one buffer.
class SetArray {
public:
    SetArray() = default;

    static SetArray build(std::vector<std::vector<Vertex>> sets) {
        for (auto& s : sets) std::sort(s.begin(), s.end());
        std::sort(sets.begin(), sets.end(), less);
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
        SetArray a;
        for (const auto& s : sets) {
            a.data_.insert(a.data_.end(), s.begin(), s.end());
            a.offsets_.push_back(static_cast<std::uint32_t>(a.data_.size()));
        }
        return a;
    }

    /// Rebuilds from the raw layout (used by deserialization). Order is not re-checked.
    static SetArray from_raw(std::vector<Vertex> data, std::vector<std::uint32_t> offsets) {
        SetArray a;
        a.data_ = std::move(data);
        a.offsets_ = std::move(offsets);
        return a;
    }

    std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::span<const Vertex> operator[](std::size_t i) const {
        return {data_.data() + offsets_[i], data_.data() + offsets_[i + 1]};
    }
    const std::vector<Vertex>& data() const noexcept { return data_; }
    const std::vector<std::uint32_t>& offsets() const noexcept { return offsets_; }

    bool contains(std::span<const Vertex> key) const {
        std::size_t lo = 0, hi = size();
        while (lo < hi) {
            auto mid = (lo + hi) / 2;
            if (less((*this)[mid], key)) lo = mid + 1;
            else hi = mid;
        }
        return lo < size() && std::ranges::equal((*this)[lo], key);
    }

    bool contains_linear(std::span<const Vertex> key) const {
        for (std::size_t i = 0; i < size(); ++i)
            if (std::ranges::equal((*this)[i], key)) return true;
        return false;
    }

    bool is_sorted() const {
        for (std::size_t i = 1; i < size(); ++i)
            if (!less((*this)[i - 1], (*this)[i])) return false;
        return true;
    }

    static bool less(std::span<const Vertex> a, std::span<const Vertex> b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::vector<Vertex> data_;
    std::vector<std::uint32_t> offsets_{0};
};

}  // namespace vcut
