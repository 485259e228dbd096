#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "crystal/block_tree.hpp"
#include "crystal/committee.hpp"
#include "crystal/rng.hpp"

namespace crystal {

// Integer reward units so conservation can be checked exactly.
struct RewardConfig {
    uint64_t block_reward = 625'000'000;  // R_b
    uint64_t tx_fees = 50'000'000;        // constant per block
    uint64_t vote_reward = 10'000;        // R_v, per vote to the voter
    uint64_t inclusion_reward = 10'000;   // R_i, per included vote to the proposer
};

struct RewardLedger {
    std::map<PublicKey, uint64_t> balances;
    uint64_t escrowed = 0;       // votes whose reward key is unknown
    uint64_t escrow_count = 0;

    uint64_t total() const;
};

// Pays each committed block per the reward rules: block reward + fees to the
// proposer's reward key; for every vote in the block's embedded QC, the vote
// reward to the voter's reward key and the inclusion reward to the proposer.
// Every included vote is paid, including votes beyond the bare quorum.
RewardLedger apply_rewards(const BlockTree& tree, const std::vector<Digest256>& committed_chain,
                           const RewardConfig& cfg,
                           const std::map<PublicKey, PublicKey>& reward_key_of);

// D_new = D_old * elapsed / (2016 * 600s), clamped to the maximum target.
Digest256 adjust_difficulty(const Digest256& d_old, double elapsed_seconds,
                            uint32_t epoch_blocks = 2016, double target_interval = 600.0);
Digest256 adjust_difficulty_from_timestamps(const Digest256& d_old,
                                            const std::vector<int64_t>& epoch_timestamps);

// k-deep confirmation: the chain ending at `tip` minus its last k-1 blocks.
// Shorter chains commit only the genesis block.
std::vector<Digest256> commit_rule(const BlockTree& tree, const Digest256& tip, uint32_t k);

// Longest-chain tip selection with first-seen stickiness: a strictly longer
// chain is always adopted; an equal-length rival triggers a uniform draw
// among the candidates at that height.
class TipTracker {
  public:
    void init(const Digest256& genesis) { current_ = genesis; height_ = 0; }
    const Digest256& current() const { return current_; }
    uint64_t height() const { return height_; }

    // New candidate tip at the given height; returns true if the tip moved.
    bool offer(const Digest256& h, uint64_t height, const BlockTree& tree, Rng& rng);

  private:
    Digest256 current_{};
    uint64_t height_ = 0;
};

// Honest participant: mines on the deepest block whose required certificate
// is available, votes on every valid block it sees, and commits k-deep.
class NodeState {
  public:
    struct Outbox {
        std::optional<Block> block;      // freshly mined
        std::vector<Vote> votes;         // issued for a received block
        std::vector<Digest256> commits;  // newly committed (oldest first)
    };

    NodeState(int id, const Block& genesis, ElectionParams params, uint32_t qc_distance,
              uint32_t k_confirm, uint64_t key_seed, uint64_t rng_seed, bool voter = true);

    int id() const { return id_; }
    const KeyPair& election_keys() const { return election_keys_; }
    const KeyPair& reward_keys() const { return reward_keys_; }
    const BlockTree& tree() const { return tree_; }
    BlockTree& tree() { return tree_; }

    // Block the node is currently trying to extend.
    const Digest256& mining_target() const { return mining_tip_.current(); }
    uint64_t mining_height() const { return mining_tip_.height(); }
    const Digest256& chain_tip() const { return chain_tip_.current(); }
    uint64_t chain_height() const { return chain_tip_.height(); }

    // Mining success: builds and locally processes the new block.
    // The proof-of-work search itself is abstracted away; `pow_target` is
    // stamped into the header.
    Outbox on_mining_success(int64_t now, const TxPayload& payload, const Digest256& pow_target);

    struct ReceiveResult {
        BlockCheck check = BlockCheck::Ok;
        bool duplicate = false;
        Outbox out;
    };
    ReceiveResult on_receive_block(const Block& b, int64_t now);

    VoteCheck on_receive_vote(const Vote& v);

    // Injected-committee mode: a certificate for `h` became available.
    void on_qc_ready(const Digest256& h);

    const std::map<BlockCheck, uint64_t>& rejections() const { return rejections_; }
    bool is_voter() const { return voter_; }
    void set_allow_synthetic_qc(bool allow) { validator_.allow_synthetic_qc = allow; }
    void set_pow_target(const Digest256& d) { pow_target_ = d; }

    std::vector<Digest256> committed_chain() const {
        return commit_rule(tree_, chain_tip_.current(), k_confirm_);
    }

  private:
    void note_certified(const Digest256& h, QuorumCertificate qc, Outbox& out);
    void offer_chain_tip(const Digest256& h, Outbox& out);
    bool extendable(const Digest256& h) const;
    Outbox process_block(const Block& b, bool self_mined);

    int id_;
    ElectionParams params_;
    BlockValidator validator_;
    uint32_t k_confirm_;
    KeyPair election_keys_;
    KeyPair reward_keys_;
    BlockTree tree_;
    VoteAccumulator votes_;
    TipTracker mining_tip_;
    TipTracker chain_tip_;
    Rng rng_;
    bool voter_;
    Digest256 pow_target_ = Digest256::max();
    uint64_t block_counter_ = 0;
    uint64_t committed_height_ = 0;
    Digest256 committed_hash_{};  // hash last committed at committed_height_
    std::map<BlockCheck, uint64_t> rejections_;
};

}  // namespace crystal
