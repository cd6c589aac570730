#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "vcut/error.hpp"

namespace vcut {

/// Number of bits needed to write any value in [0, max_value]; at least 1.
constexpr unsigned width_for(std::uint64_t max_value) {
    return std::max(1u, static_cast<unsigned>(std::bit_width(max_value)));
}

/// Appends fixed-width fields, least significant bit first, packed into bytes LSB-first.
class BitWriter {
public:
    void write(std::uint64_t value, unsigned width) {
        require(width == 64 || value >> width == 0, ErrorKind::FormatError,
                "value " + std::to_string(value) + " does not fit in " + std::to_string(width) + " bits");
        for (unsigned i = 0; i < width; ++i) bit(value >> i & 1u);
    }
    void bit(bool b) {
        if (bits_ % 8 == 0) bytes_.push_back(0);
        if (b) bytes_.back() |= static_cast<std::uint8_t>(1u << (bits_ % 8));
        ++bits_;
    }
    void zeros(std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) bit(false);
    }

    std::size_t bits() const noexcept { return bits_; }
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class BitReader {
public:
    BitReader(const std::vector<std::uint8_t>& bytes, std::size_t bits) : bytes_(bytes), bits_(bits) {}

    std::uint64_t read(unsigned width) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i) v |= std::uint64_t{bit()} << i;
        return v;
    }
    bool bit() {
        require(pos_ < bits_, ErrorKind::ParseError, "bit stream exhausted");
        bool b = bytes_[pos_ / 8] >> (pos_ % 8) & 1u;
        ++pos_;
        return b;
    }
    void skip(std::size_t count) {
        require(pos_ + count <= bits_, ErrorKind::ParseError, "bit stream exhausted");
        pos_ += count;
    }
    std::size_t position() const noexcept { return pos_; }
    bool done() const noexcept { return pos_ == bits_; }

private:
    const std::vector<std::uint8_t>& bytes_;
    std::size_t bits_;
    std::size_t pos_ = 0;
};

inline std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 15]);
    }
    return out;
}

inline std::vector<std::uint8_t> from_hex(const std::string& hex) {
    require(hex.size() % 2 == 0, ErrorKind::ParseError, "odd-length hex string");
    auto nibble = [](char c) -> std::uint8_t {
        if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<std::uint8_t>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<std::uint8_t>(c - 'A' + 10);
        fail(ErrorKind::ParseError, std::string("bad hex digit '") + c + "'");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return out;
}

}  // namespace vcut
