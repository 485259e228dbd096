#include "crystal/node.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace crystal {

uint64_t RewardLedger::total() const {
    uint64_t t = escrowed;
    for (const auto& [pk, v] : balances) t += v;
    return t;
}

RewardLedger apply_rewards(const BlockTree& tree, const std::vector<Digest256>& committed_chain,
                           const RewardConfig& cfg,
                           const std::map<PublicKey, PublicKey>& reward_key_of) {
    RewardLedger ledger;
    for (const Digest256& h : committed_chain) {
        if (h == tree.genesis_hash()) continue;
        const Block& b = tree.block(h);
        ledger.balances[b.header.reward_pk] += cfg.block_reward + cfg.tx_fees;
        for (const Vote& v : b.parent_qc.votes) {
            auto it = reward_key_of.find(v.voter_pk);
            if (it != reward_key_of.end()) {
                ledger.balances[it->second] += cfg.vote_reward;
            } else {
                ledger.escrowed += cfg.vote_reward;
                ledger.escrow_count += 1;
            }
            ledger.balances[b.header.reward_pk] += cfg.inclusion_reward;
        }
    }
    return ledger;
}

Digest256 adjust_difficulty(const Digest256& d_old, double elapsed_seconds, uint32_t epoch_blocks,
                            double target_interval) {
    if (elapsed_seconds <= 0) throw std::invalid_argument("elapsed time must be positive");
    using boost::multiprecision::cpp_int;
    cpp_int d = 0;
    for (uint8_t b : d_old.bytes) d = (d << 8) | b;
    // Microsecond-resolution rational scaling keeps this deterministic.
    cpp_int num = static_cast<uint64_t>(std::llround(elapsed_seconds * 1e6));
    cpp_int den = static_cast<uint64_t>(std::llround(double(epoch_blocks) * target_interval * 1e6));
    d = d * num / den;
    cpp_int max = (cpp_int(1) << 256) - 1;
    if (d > max) d = max;
    Digest256 out;
    for (int i = 31; i >= 0; --i) {
        out.bytes[i] = static_cast<uint8_t>(d & 0xff);
        d >>= 8;
    }
    return out;
}

Digest256 adjust_difficulty_from_timestamps(const Digest256& d_old,
                                            const std::vector<int64_t>& epoch_timestamps) {
    if (epoch_timestamps.size() < 2) throw std::invalid_argument("need at least two timestamps");
    double elapsed = double(epoch_timestamps.back() - epoch_timestamps.front());
    return adjust_difficulty(d_old, elapsed, static_cast<uint32_t>(epoch_timestamps.size()));
}

std::vector<Digest256> commit_rule(const BlockTree& tree, const Digest256& tip, uint32_t k) {
    std::vector<Digest256> chain = tree.chain_to(tip);
    size_t drop = k > 0 ? size_t(k) - 1 : 0;
    size_t keep = chain.size() > drop ? chain.size() - drop : 1;
    chain.resize(keep);
    return chain;
}

bool TipTracker::offer(const Digest256& h, uint64_t height, const BlockTree&, Rng& rng) {
    if (height > height_) {
        current_ = h;
        height_ = height;
        return true;
    }
    if (height == height_ && !(h == current_)) {
        // Uniform tie-breaking between the incumbent and the newcomer.
        if (rng.bernoulli(0.5)) {
            current_ = h;
            return true;
        }
    }
    return false;
}

NodeState::NodeState(int id, const Block& genesis, ElectionParams params, uint32_t qc_distance,
                     uint32_t k_confirm, uint64_t key_seed, uint64_t rng_seed, bool voter)
    : id_(id),
      params_(params),
      validator_{params, qc_distance, false},
      k_confirm_(k_confirm),
      election_keys_(keypair_from_seed(key_seed)),
      reward_keys_(keypair_from_seed(key_seed ^ 0x5eed5eed5eed5eedull)),
      tree_(genesis),
      votes_(params),
      rng_(rng_seed),
      voter_(voter) {
    mining_tip_.init(tree_.genesis_hash());
    chain_tip_.init(tree_.genesis_hash());
}

bool NodeState::extendable(const Digest256& h) const {
    uint64_t child_height = tree_.height(h) + 1;
    if (!validator_.requires_qc(child_height)) return true;
    auto anc = tree_.ancestor(h, validator_.qc_distance - 1);
    return anc && tree_.is_certified(*anc);
}

void NodeState::note_certified(const Digest256& h, QuorumCertificate qc) {
    if (tree_.is_certified(h)) return;
    tree_.set_certified(h, std::move(qc));
    // Certification can unlock mining on the descendants at qc_distance - 1
    // (the certified block itself when the distance is 1).
    std::vector<Digest256> frontier{h};
    for (uint32_t d = 0; d + 1 < validator_.qc_distance; ++d) {
        std::vector<Digest256> next;
        for (const Digest256& x : frontier)
            for (const Digest256& c : tree_.children(x)) next.push_back(c);
        frontier = std::move(next);
    }
    for (const Digest256& x : frontier)
        if (extendable(x)) mining_tip_.offer(x, tree_.height(x), tree_, rng_);
}

void NodeState::offer_chain_tip(const Digest256& h, Outbox& out) {
    if (!chain_tip_.offer(h, tree_.height(h), tree_, rng_)) return;
    uint64_t tip_height = chain_tip_.height();
    uint64_t commit_upper = tip_height + 1 > k_confirm_ ? tip_height + 1 - k_confirm_ : 0;
    if (commit_upper < committed_height_) return;
    auto chain = commit_rule(tree_, chain_tip_.current(), k_confirm_);
    // A branch switch that rewrites the committed prefix must surface as a
    // fresh commit record so safety checkers can observe the conflict.
    if (committed_height_ > 0 && chain.at(committed_height_) != committed_hash_)
        out.commits.push_back(chain.at(committed_height_));
    for (uint64_t ht = committed_height_ + 1; ht <= commit_upper; ++ht)
        out.commits.push_back(chain.at(ht));
    if (commit_upper > 0) {
        committed_height_ = commit_upper;
        committed_hash_ = chain.at(commit_upper);
    }
}

NodeState::Outbox NodeState::process_block(const Block& b, bool self_mined) {
    Outbox out;
    Digest256 h = b.hash();
    tree_.insert(b);
    // The embedded certificate proves its referenced ancestor is certified,
    // whether or not this node saw the individual votes.
    if (!b.parent_qc.votes.empty() || b.parent_qc.synthetic)
        note_certified(b.parent_qc.block_hash, b.parent_qc);

    if (votes_.on_block_arrival(h, tree_))
        note_certified(h, votes_.assemble_qc(h));

    offer_chain_tip(h, out);
    if (extendable(h)) mining_tip_.offer(h, tree_.height(h), tree_, rng_);

    (void)self_mined;  // nodes vote on their own blocks as well
    if (voter_) {
        SlidingWindow w = window_for(tree_, h, params_.window_size);
        out.votes = vote_for_block(h, w, election_keys_, params_);
        for (const Vote& v : out.votes) on_receive_vote(v);
    }
    return out;
}

NodeState::Outbox NodeState::on_mining_success(int64_t now, const TxPayload& payload,
                                               const Digest256& pow_target) {
    Digest256 target = mining_tip_.current();
    uint64_t child_height = tree_.height(target) + 1;

    Block b;
    b.header.parent_hash = target;
    b.header.reward_pk = reward_keys_.pk;
    b.header.election_pk = election_keys_.pk;
    b.header.difficulty_target = pow_target;
    b.header.timestamp = now;
    b.header.nonce = block_counter_++;
    b.txs = payload;
    {
        Bytes t;
        put_array(t, election_keys_.pk);
        put_u64_be(t, b.header.nonce);
        put_u32_be(t, payload.count);
        put_u32_be(t, payload.byte_size);
        b.header.tx_root = sha256(ByteView(t.data(), t.size()));
    }

    if (validator_.requires_qc(child_height)) {
        auto anc = tree_.ancestor(target, validator_.qc_distance - 1);
        const QuorumCertificate* qc = anc ? tree_.certificate(*anc) : nullptr;
        if (!qc) throw std::logic_error("mining target lacks required certificate");
        b.parent_qc = *qc;
        b.header.qc_root = qc->synthetic ? Digest256::zero() : qc_merkle_root(qc->votes);
    } else {
        b.parent_qc.block_hash = target;
    }

    Outbox out = process_block(b, true);
    out.block = std::move(b);
    return out;
}

NodeState::ReceiveResult NodeState::on_receive_block(const Block& b, int64_t) {
    ReceiveResult r;
    if (tree_.contains(b.hash())) {
        r.duplicate = true;
        return r;
    }
    r.check = validator_.validate(b, tree_, pow_target_);
    if (r.check != BlockCheck::Ok) {
        rejections_[r.check] += 1;
        return r;
    }
    r.out = process_block(b, false);
    return r;
}

VoteCheck NodeState::on_receive_vote(const Vote& v) {
    auto res = votes_.on_receipt_vote(v, tree_);
    if (res.qc_completed) note_certified(v.block_hash, votes_.assemble_qc(v.block_hash));
    return res.check;
}

void NodeState::on_qc_ready(const Digest256& h) {
    if (!tree_.contains(h)) return;
    note_certified(h, QuorumCertificate{h, {}, true});
}

}  // namespace crystal
