#pragma once

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "crystal/block.hpp"
#include "crystal/block_tree.hpp"

namespace crystal {

struct ElectionParams {
    uint32_t window_size = 3024;    // W
    uint32_t committee_size = 500;  // m
    Target256 election_target;      // d

    // d = floor(m/W * 2^256); requires W >= m >= 1.
    static ElectionParams standard(uint32_t window, uint32_t committee);
};

// One first-round committee seat: the owner of a recent block. Index 1 is the
// voted block's parent, index W the farthest block in the window. Election
// statistics do not depend on this orientation; it is fixed so that votes
// verify identically everywhere.
struct WindowSlot {
    uint32_t index = 0;
    PublicKey owner{};
    Digest256 block_hash{};
};

using SlidingWindow = std::vector<WindowSlot>;

// Window backing the votes on `voted_block`: its parent and the W-1 blocks
// above it. Empty when the chain below the block is shorter than W
// (bootstrap).
SlidingWindow window_for(const BlockTree& tree, const Digest256& voted_block, uint32_t window_size);

// Emits one vote per owned window slot that wins the VRF sortition
// (vrf(sk, hash|index).y < d). Uses only the block, the window, and the
// caller's own keys.
std::vector<Vote> vote_for_block(const Digest256& voted_block_hash, const SlidingWindow& window,
                                 const KeyPair& my_keys, const ElectionParams& params);

enum class VoteCheck { Accepted, UnknownBlock, BadIndex, TargetMiss, WrongOwner, BadProof };

const char* to_string(VoteCheck c);

// Stateless verification of a single vote against a tree.
VoteCheck check_vote(const Vote& v, const BlockTree& tree, const ElectionParams& params);

// Per-node vote state: accumulates shares per block and assembles QCs.
// Votes that arrive before their block are buffered (bounded) and re-checked
// when the block shows up.
class VoteAccumulator {
  public:
    explicit VoteAccumulator(ElectionParams params, size_t buffer_capacity = 4096)
        : params_(params), buffer_capacity_(buffer_capacity) {}

    struct Outcome {
        VoteCheck check = VoteCheck::Accepted;
        bool qc_completed = false;  // share count first crossed m/2
    };

    Outcome on_receipt_vote(const Vote& v, const BlockTree& tree);

    // Re-examine buffered votes for a newly arrived block. Returns true if
    // that block's QC just completed.
    bool on_block_arrival(const Digest256& h, const BlockTree& tree);

    size_t share_count(const Digest256& h) const;
    bool has_quorum(const Digest256& h) const {
        return 2 * share_count(h) > params_.committee_size;
    }
    QuorumCertificate assemble_qc(const Digest256& h) const;

    size_t buffered() const { return buffer_.size(); }

  private:
    Outcome accept(const Vote& v);

    ElectionParams params_;
    size_t buffer_capacity_;
    std::map<Digest256, std::map<std::pair<PublicKey, uint32_t>, Vote>> votes_;
    std::deque<Vote> buffer_;
};

// Test oracle: enumerate the realized committee of a block given every
// participant's keys. The protocol itself never computes this globally.
std::vector<std::pair<PublicKey, uint32_t>> committee_of(const Digest256& voted_block_hash,
                                                         const SlidingWindow& window,
                                                         std::span<const KeyPair> all_keys,
                                                         const ElectionParams& params);

// Full block validation: proof-of-work bound, parent presence, payload
// shape, and the embedded certificate for the ancestor at `qc_distance`.
// Blocks at height < window_size + qc_distance need no certificate
// (bootstrap runs as plain Nakamoto consensus).
struct BlockValidator {
    ElectionParams params;
    uint32_t qc_distance = 1;
    bool allow_synthetic_qc = false;  // injected-committee simulations

    BlockCheck validate(const Block& b, const BlockTree& tree, const Digest256& pow_target) const;
    bool requires_qc(uint64_t block_height) const {
        return block_height >= uint64_t(params.window_size) + qc_distance;
    }
};

}  // namespace crystal
