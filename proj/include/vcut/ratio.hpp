#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "vcut/error.hpp"

namespace vcut {

/// Non-negative rational with exact comparison, used for expansion and epsilon values.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    constexpr Ratio() = default;
    constexpr Ratio(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (d == 0) fail(ErrorKind::InvalidParams, "ratio with zero denominator");
        auto g = std::gcd(n, d);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
        return (a.num * b.den) <=> (b.num * a.den);
    }
};

/// k * r compared against an integer: true iff k < r * x.
inline bool less_than_scaled(std::uint64_t k, const Ratio& r, std::uint64_t x) { return k * r.den < r.num * x; }

}  // namespace vcut
