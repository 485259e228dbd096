#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crystal/bytes.hpp"
#include "crystal/crypto.hpp"
#include "crystal/digest.hpp"

namespace crystal {

// Canonical wire layout (all integers big-endian):
//   header: tx_root(32) | parent_hash(32) | qc_root(32) | reward_pk(32) |
//           election_pk(32) | difficulty_target(32) | timestamp(i64) | nonce(u64)
//   vote:   voter_pk(32) | block_hash(32) | window_index(u32) | y(32) | proof(64)
//   block:  header | tx_count(u32) | tx_byte_size(u32) | vote_count(u32) | votes...
// The block hash is SHA-256 of the serialized header.

struct BlockHeader {
    Digest256 tx_root{};
    Digest256 parent_hash{};
    Digest256 qc_root{};      // Merkle root over the certified ancestor's votes
    PublicKey reward_pk{};
    PublicKey election_pk{};
    Digest256 difficulty_target{};
    int64_t timestamp = 0;    // seconds
    uint64_t nonce = 0;

    bool operator==(const BlockHeader&) const = default;
};

struct Vote {
    PublicKey voter_pk{};
    Digest256 block_hash{};
    uint32_t window_index = 0;  // 1 = the voted block's parent, W = farthest
    Digest256 vrf_y{};
    VrfProof vrf_proof{};

    bool operator==(const Vote&) const = default;
};

// Votes on one block. Validity threshold is share count > m/2 where m is the
// configured expected committee size, one share per (voter, window slot).
struct QuorumCertificate {
    Digest256 block_hash{};
    std::vector<Vote> votes;
    // Injected-committee simulations carry structurally abstract QCs; the
    // flag bypasses vote-level checks while keeping the protocol flow.
    bool synthetic = false;

    // Distinct (voter_pk, window_index) pairs.
    size_t share_count() const;
    bool empty() const { return votes.empty(); }
    bool meets_quorum(uint32_t committee_size_m) const {
        return 2 * share_count() > committee_size_m;
    }
};

// Transactions are opaque: only their count and encoded size matter to the
// protocol dynamics studied here.
struct TxPayload {
    uint32_t count = 0;
    uint32_t byte_size = 0;

    bool operator==(const TxPayload&) const = default;
};

struct Block {
    BlockHeader header;
    TxPayload txs;
    QuorumCertificate parent_qc;  // certifies the ancestor at the configured QC distance

    Digest256 hash() const;
};

Bytes serialize_header(const BlockHeader& h);
Bytes serialize_vote(const Vote& v);
Bytes serialize_block(const Block& b);
Digest256 block_hash(const BlockHeader& h);

// Merkle root over the serialized votes (leaf = SHA-256 of the vote bytes,
// odd node duplicated, empty set = all-zero digest).
Digest256 qc_merkle_root(const std::vector<Vote>& votes);

// Storage footprint of a QC once redundant fields are stripped: 32-byte VRF
// output + 64-byte proof per vote, plus a W-bit membership bitmap.
size_t qc_byte_size(size_t vote_count, uint32_t window_size);

// VRF input for the second-round election: block_hash | window_index(u32 BE).
Bytes election_vrf_input(const Digest256& voted_block_hash, uint32_t window_index);

}  // namespace crystal
