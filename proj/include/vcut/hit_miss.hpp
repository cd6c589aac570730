#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "vcut/error.hpp"
#include "vcut/vertex_set.hpp"

namespace vcut {

struct HitMissParams {
    double c = 1.0;                          // k = ceil(c (f ln n)^3)
    std::size_t max_rounds = 8;              // sampling rounds before giving up
    std::uint64_t exhaustive_budget = 400'000'000;  // word operations allowed for full verification
    std::size_t spot_checks = 10'000;
};

/// Subsets T_1..T_k of T such that every F (|F| <= f) and live u, v in T - F are caught
/// by some T_i that misses F and contains u and v (u = v allowed).
struct HitMissFamily {
    std::vector<VertexSet> sets;
    std::size_t f = 0;
    std::size_t k = 0;
    std::size_t rounds = 0;        // sampling rounds used
    bool exhaustive = false;       // verified over every F, or only spot-checked
    std::uint64_t seed = 0;
};

namespace detail {

/// Bitset over positions of T.
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(std::size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return w[i >> 6] >> (i & 63) & 1u; }
};

inline Bits to_bits(const VertexSet& s, const VertexSet& t) {
    Bits b(t.size());
    for (Vertex v : s) b.set(static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), v) - t.begin()));
    return b;
}

/// Checks the family for one F (positions in T). Returns false on the first gap.
inline bool covers(const std::vector<Bits>& fam, std::size_t tn, const std::vector<std::size_t>& fpos) {
    std::vector<char> dead(tn, 0);
    for (auto p : fpos) dead[p] = 1;
    std::vector<const Bits*> missing;
    for (const auto& b : fam) {
        bool hit = false;
        for (auto p : fpos)
            if (b.test(p)) {
                hit = true;
                break;
            }
        if (!hit) missing.push_back(&b);
    }
    const std::size_t words = (tn + 63) / 64;
    std::vector<std::uint64_t> acc(words);
    for (std::size_t u = 0; u < tn; ++u) {
        if (dead[u]) continue;
        std::fill(acc.begin(), acc.end(), 0);
        for (const auto* b : missing)
            if (b->test(u))
                for (std::size_t i = 0; i < words; ++i) acc[i] |= b->w[i];
        for (std::size_t v = 0; v < tn; ++v)
            if (!dead[v] && !(acc[v >> 6] >> (v & 63) & 1u)) return false;
    }
    return true;
}

}  // namespace detail

inline std::size_t hit_miss_k(std::size_t f, std::size_t n, double c) {
    const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    return static_cast<std::size_t>(std::ceil(c * std::pow(static_cast<double>(f) * ln, 3)));
}

/// Random family: each terminal joins each T_i with probability 1/(f+1). The family is
/// verified exhaustively when affordable and spot-checked otherwise; a failed round
/// resamples with twice as many sets.
inline HitMissFamily build_hit_miss_family(const VertexSet& t_set, std::size_t f, std::size_t n, std::uint64_t seed,
                                           const HitMissParams& p = {}) {
    require(f >= 1, ErrorKind::InvalidParams, "hit-miss family needs f >= 1");
    HitMissFamily fam;
    fam.f = f;
    fam.seed = seed;
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution join(1.0 / static_cast<double>(f + 1));
    const std::size_t tn = t_set.size();
    std::size_t k = std::max<std::size_t>(hit_miss_k(f, n, p.c), 1);
    const std::size_t words = (tn + 63) / 64 + 1;
    const auto f_count = count_subsets_up_to(tn, f);
    for (std::size_t round = 1; round <= p.max_rounds; ++round, k *= 2) {
        fam.sets.clear();
        std::vector<detail::Bits> bits;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Vertex> s;
            for (Vertex t : t_set)
                if (join(rng)) s.push_back(t);
            fam.sets.push_back(VertexSet::from_sorted_unchecked(std::move(s)));
            bits.push_back(detail::to_bits(fam.sets.back(), t_set));
        }
        fam.k = k;
        fam.rounds = round;
        const double cost = static_cast<double>(f_count) * static_cast<double>(tn) * static_cast<double>(k) *
                            static_cast<double>(words);
        bool ok = true;
        if (tn == 0) {
            fam.exhaustive = true;
        } else if (cost <= static_cast<double>(p.exhaustive_budget)) {
            fam.exhaustive = true;
            std::vector<Vertex> pos(tn);
            for (std::size_t i = 0; i < tn; ++i) pos[i] = static_cast<Vertex>(i);
            for_each_subset_up_to(std::span<const Vertex>(pos), f, [&](const VertexSet& fs) {
                std::vector<std::size_t> fpos(fs.begin(), fs.end());
                ok = detail::covers(bits, tn, fpos);
                return ok;
            });
        } else {
            fam.exhaustive = false;
            std::uniform_int_distribution<std::size_t> pick(0, tn - 1);
            for (std::size_t trial = 0; trial < p.spot_checks && ok; ++trial) {
                std::vector<std::size_t> fpos;
                for (std::size_t j = 0; j < f; ++j) fpos.push_back(pick(rng));
                std::size_t u = pick(rng), v = pick(rng);
                if (std::find(fpos.begin(), fpos.end(), u) != fpos.end() ||
                    std::find(fpos.begin(), fpos.end(), v) != fpos.end())
                    continue;
                bool found = false;
                for (const auto& b : bits) {
                    if (!b.test(u) || !b.test(v)) continue;
                    bool hit = false;
                    for (auto q : fpos) hit = hit || b.test(q);
                    if (!hit) {
                        found = true;
                        break;
                    }
                }
                ok = found;
            }
        }
        if (ok) return fam;
    }
    fail(ErrorKind::VerificationFailed, "hit-miss family not verified after " + std::to_string(p.max_rounds) + " rounds");
}

/// Exhaustive check used by tests: every F in T (|F| <= f) and every live u, v.
inline bool verify_hit_miss(const HitMissFamily& fam, const VertexSet& t_set) {
    std::vector<detail::Bits> bits;
    for (const auto& s : fam.sets) bits.push_back(detail::to_bits(s, t_set));
    std::vector<Vertex> pos(t_set.size());
    for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = static_cast<Vertex>(i);
    bool ok = true;
    for_each_subset_up_to(std::span<const Vertex>(pos), fam.f, [&](const VertexSet& fs) {
        std::vector<std::size_t> fpos(fs.begin(), fs.end());
        ok = detail::covers(bits, t_set.size(), fpos);
        return ok;
    });
    return ok;
}

}  // namespace vcut
