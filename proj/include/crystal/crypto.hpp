#pragma once

#include <array>
#include <cstdint>

#include "crystal/bytes.hpp"
#include "crystal/digest.hpp"
#include "crystal/sha256.hpp"

namespace crystal {

// Simulation-grade primitives: hashing is real SHA-256, but signatures and
// the VRF are keyed pseudorandomness. The public key is an invertible mixing
// of the secret key so that verification can recompute the PRF streams; this
// keeps the verify-iff-honestly-produced contract without elliptic curves
// and must never be used outside a simulation. Output/proof sizes match a
// production VRF (32-byte output, 64-byte proof) so overhead accounting is
// representative. All functions are pure; concurrent use is safe.

using SecretKey = std::array<uint8_t, 32>;
using PublicKey = std::array<uint8_t, 32>;
using Signature = std::array<uint8_t, 64>;
using VrfProof = std::array<uint8_t, 64>;

struct KeyPair {
    SecretKey sk{};
    PublicKey pk{};
};

struct VrfOutput {
    Digest256 y{};
    VrfProof proof{};

    bool operator==(const VrfOutput&) const = default;
};

PublicKey public_key_of(const SecretKey& sk);
// Inverse of public_key_of; only meaningful for simulation keys.
SecretKey secret_key_of(const PublicKey& pk);

KeyPair keypair_from_seed(uint64_t seed);
KeyPair keypair_from_seed(ByteView seed);

Digest256 hash(ByteView data);

VrfOutput vrf_prove(const SecretKey& sk, ByteView x);
bool vrf_verify(const PublicKey& pk, ByteView x, const VrfOutput& out);

Signature sign(const SecretKey& sk, ByteView msg);
bool verify(const PublicKey& pk, const Signature& sig, ByteView msg);

}  // namespace crystal
