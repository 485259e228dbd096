#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <string>

#include "crystal/bytes.hpp"

namespace crystal {

// A 256-bit unsigned integer stored big-endian, totally ordered so digests
// can be compared against mining and election targets.
struct Digest256 {
    std::array<uint8_t, 32> bytes{};

    static Digest256 zero() { return {}; }
    static Digest256 max() {
        Digest256 d;
        d.bytes.fill(0xff);
        return d;
    }
    static Digest256 from_hex(const std::string& hex);

    std::string hex() const { return to_hex(bytes); }

    // First 8 bytes as an integer; used for cheap map keys and trace hashes.
    uint64_t prefix64() const { return read_u64_be(bytes.data()); }

    bool is_zero() const {
        for (auto b : bytes)
            if (b) return false;
        return true;
    }

    auto operator<=>(const Digest256& o) const {
        int c = std::memcmp(bytes.data(), o.bytes.data(), 32);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }
    bool operator==(const Digest256& o) const { return bytes == o.bytes; }
};

struct Digest256Hasher {
    size_t operator()(const Digest256& d) const { return static_cast<size_t>(d.prefix64()); }
};

// Election / mining target: a threshold on [0, 2^256]. The saturated form
// represents exactly 2^256 (every digest passes), which a Digest256 cannot.
struct Target256 {
    bool saturated = false;
    Digest256 value{};

    static Target256 all() { return {true, {}}; }
    static Target256 none() { return {false, Digest256::zero()}; }
    static Target256 of(const Digest256& v) { return {false, v}; }

    // floor(2^256 * num / den), saturated when num >= den.
    static Target256 fraction(uint64_t num, uint64_t den);

    bool contains(const Digest256& y) const { return saturated || y < value; }

    bool operator==(const Target256&) const = default;
};

}  // namespace crystal
