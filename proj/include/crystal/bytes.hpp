#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

namespace crystal {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

// Append helpers for the canonical wire encodings. All multi-byte integers
// are big-endian so serialized blocks and votes hash identically on every
// platform.
inline void put_u32_be(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void put_u64_be(Bytes& out, uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<uint8_t>(v >> shift));
}

inline void put_i64_be(Bytes& out, int64_t v) { put_u64_be(out, static_cast<uint64_t>(v)); }

inline void put_bytes(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

template <size_t N>
inline void put_array(Bytes& out, const std::array<uint8_t, N>& a) {
    out.insert(out.end(), a.begin(), a.end());
}

inline uint32_t read_u32_be(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

inline uint64_t read_u64_be(const uint8_t* p) {
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
    return v;
}

std::string to_hex(ByteView data);
Bytes from_hex(const std::string& hex);

}  // namespace crystal
