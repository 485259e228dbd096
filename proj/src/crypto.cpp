#include "crystal/crypto.hpp"

namespace crystal {

namespace {

// Per-lane invertible mixing (xor + odd multiply mod 2^64). unmix applies
// the modular inverses in reverse order.
constexpr uint64_t kLaneXor[4] = {0xc2b2ae3d27d4eb4full, 0x165667b19e3779f9ull,
                                  0x85ebca77c2b2ae63ull, 0x27d4eb2f165667c5ull};
constexpr uint64_t kLaneMul = 0x9e3779b97f4a7c15ull;   // odd, invertible mod 2^64
constexpr uint64_t kLaneMulInv = 0xf1de83e19937733dull;  // kLaneMul * kLaneMulInv == 1

static_assert(kLaneMul * kLaneMulInv == 1ull);

Digest256 tagged_hash(uint8_t tag, const SecretKey& sk, ByteView x) {
    Sha256 h;
    h.update(ByteView(&tag, 1));
    h.update(ByteView(sk.data(), sk.size()));
    h.update(x);
    return h.finish();
}

}  // namespace

PublicKey public_key_of(const SecretKey& sk) {
    PublicKey pk;
    for (int i = 0; i < 4; ++i) {
        uint64_t lane = read_u64_be(sk.data() + 8 * i);
        lane = (lane ^ kLaneXor[i]) * kLaneMul;
        for (int b = 0; b < 8; ++b) pk[8 * i + b] = static_cast<uint8_t>(lane >> (56 - 8 * b));
    }
    return pk;
}

SecretKey secret_key_of(const PublicKey& pk) {
    SecretKey sk;
    for (int i = 0; i < 4; ++i) {
        uint64_t lane = read_u64_be(pk.data() + 8 * i);
        lane = (lane * kLaneMulInv) ^ kLaneXor[i];
        for (int b = 0; b < 8; ++b) sk[8 * i + b] = static_cast<uint8_t>(lane >> (56 - 8 * b));
    }
    return sk;
}

KeyPair keypair_from_seed(uint64_t seed) {
    Bytes buf;
    put_u64_be(buf, seed);
    return keypair_from_seed(ByteView(buf.data(), buf.size()));
}

KeyPair keypair_from_seed(ByteView seed) {
    KeyPair kp;
    Sha256 h;
    uint8_t tag = 0x4b;
    h.update(ByteView(&tag, 1));
    h.update(seed);
    kp.sk = h.finish().bytes;
    kp.pk = public_key_of(kp.sk);
    return kp;
}

Digest256 hash(ByteView data) { return sha256(data); }

VrfOutput vrf_prove(const SecretKey& sk, ByteView x) {
    VrfOutput out;
    out.y = tagged_hash(0x01, sk, x);
    Digest256 p1 = tagged_hash(0x02, sk, x);
    Digest256 p2 = tagged_hash(0x03, sk, x);
    std::copy(p1.bytes.begin(), p1.bytes.end(), out.proof.begin());
    std::copy(p2.bytes.begin(), p2.bytes.end(), out.proof.begin() + 32);
    return out;
}

bool vrf_verify(const PublicKey& pk, ByteView x, const VrfOutput& out) {
    return vrf_prove(secret_key_of(pk), x) == out;
}

Signature sign(const SecretKey& sk, ByteView msg) {
    Digest256 m = sha256(msg);
    Digest256 s1 = tagged_hash(0x04, sk, ByteView(m.bytes.data(), 32));
    Digest256 s2 = tagged_hash(0x05, sk, ByteView(m.bytes.data(), 32));
    Signature sig;
    std::copy(s1.bytes.begin(), s1.bytes.end(), sig.begin());
    std::copy(s2.bytes.begin(), s2.bytes.end(), sig.begin() + 32);
    return sig;
}

bool verify(const PublicKey& pk, const Signature& sig, ByteView msg) {
    return sign(secret_key_of(pk), msg) == sig;
}

}  // namespace crystal
