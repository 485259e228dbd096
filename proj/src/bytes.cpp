#include "crystal/bytes.hpp"

#include <stdexcept>

#include "crystal/digest.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace crystal {

std::string to_hex(ByteView data) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2);
    for (uint8_t b : data) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xf]);
    }
    return s;
}

static uint8_t hex_nibble(char c) {
    if (c >= '0' && c <= '9') return static_cast<uint8_t>(c - '0');
    if (c >= 'a' && c <= 'f') return static_cast<uint8_t>(c - 'a' + 10);
    if (c >= 'A' && c <= 'F') return static_cast<uint8_t>(c - 'A' + 10);
    throw std::invalid_argument("bad hex digit");
}

Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>((hex_nibble(hex[2 * i]) << 4) | hex_nibble(hex[2 * i + 1]));
    return out;
}

Digest256 Digest256::from_hex(const std::string& hex) {
    Bytes raw = crystal::from_hex(hex);
    if (raw.size() != 32) throw std::invalid_argument("digest hex must be 32 bytes");
    Digest256 d;
    std::memcpy(d.bytes.data(), raw.data(), 32);
    return d;
}

Target256 Target256::fraction(uint64_t num, uint64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (num >= den) return Target256::all();
    using boost::multiprecision::cpp_int;
    cpp_int t = (cpp_int(1) << 256) * num / den;
    Target256 out;
    for (int i = 31; i >= 0; --i) {
        out.value.bytes[i] = static_cast<uint8_t>(t & 0xff);
        t >>= 8;
    }
    return out;
}

}  // namespace crystal
