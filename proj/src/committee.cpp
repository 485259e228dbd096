#include "crystal/committee.hpp"

#include <stdexcept>
#include <unordered_map>

namespace crystal {

ElectionParams ElectionParams::standard(uint32_t window, uint32_t committee) {
    if (committee < 1 || window < committee)
        throw std::invalid_argument("election params need W >= m >= 1");
    ElectionParams p;
    p.window_size = window;
    p.committee_size = committee;
    p.election_target = Target256::fraction(committee, window);
    return p;
}

SlidingWindow window_for(const BlockTree& tree, const Digest256& voted_block, uint32_t window_size) {
    // Height W is the first with a full window (the W ancestors include the
    // genesis block).
    if (tree.height(voted_block) < window_size) return {};
    SlidingWindow w;
    w.reserve(window_size);
    Digest256 cur = tree.block(voted_block).header.parent_hash;
    for (uint32_t j = 1; j <= window_size; ++j) {
        const Block& b = tree.block(cur);
        w.push_back(WindowSlot{j, b.header.election_pk, cur});
        cur = b.header.parent_hash;
    }
    return w;
}

std::vector<Vote> vote_for_block(const Digest256& voted_block_hash, const SlidingWindow& window,
                                 const KeyPair& my_keys, const ElectionParams& params) {
    std::vector<Vote> out;
    for (const WindowSlot& slot : window) {
        if (slot.owner != my_keys.pk) continue;
        Bytes x = election_vrf_input(voted_block_hash, slot.index);
        VrfOutput vo = vrf_prove(my_keys.sk, ByteView(x.data(), x.size()));
        if (!params.election_target.contains(vo.y)) continue;
        Vote v;
        v.voter_pk = my_keys.pk;
        v.block_hash = voted_block_hash;
        v.window_index = slot.index;
        v.vrf_y = vo.y;
        v.vrf_proof = vo.proof;
        out.push_back(v);
    }
    return out;
}

VoteCheck check_vote(const Vote& v, const BlockTree& tree, const ElectionParams& params) {
    if (!tree.contains(v.block_hash)) return VoteCheck::UnknownBlock;
    if (v.window_index < 1 || v.window_index > params.window_size) return VoteCheck::BadIndex;
    // Walk to the window slot; runs out on bootstrap-era blocks.
    auto slot_hash = tree.ancestor(v.block_hash, v.window_index);
    if (!slot_hash) return VoteCheck::BadIndex;
    if (!params.election_target.contains(v.vrf_y)) return VoteCheck::TargetMiss;
    const Block& slot_block = tree.block(*slot_hash);
    if (slot_block.header.election_pk != v.voter_pk) return VoteCheck::WrongOwner;
    Bytes x = election_vrf_input(v.block_hash, v.window_index);
    VrfOutput vo{v.vrf_y, v.vrf_proof};
    if (!vrf_verify(v.voter_pk, ByteView(x.data(), x.size()), vo)) return VoteCheck::BadProof;
    return VoteCheck::Accepted;
}

VoteAccumulator::Outcome VoteAccumulator::accept(const Vote& v) {
    auto& per_block = votes_[v.block_hash];
    bool had_quorum = 2 * per_block.size() > params_.committee_size;
    per_block.emplace(std::make_pair(v.voter_pk, v.window_index), v);
    bool has_now = 2 * per_block.size() > params_.committee_size;
    return Outcome{VoteCheck::Accepted, has_now && !had_quorum};
}

VoteAccumulator::Outcome VoteAccumulator::on_receipt_vote(const Vote& v, const BlockTree& tree) {
    VoteCheck c = check_vote(v, tree, params_);
    if (c == VoteCheck::UnknownBlock) {
        if (buffer_.size() >= buffer_capacity_) buffer_.pop_front();
        buffer_.push_back(v);
        return Outcome{c, false};
    }
    if (c != VoteCheck::Accepted) return Outcome{c, false};
    return accept(v);
}

bool VoteAccumulator::on_block_arrival(const Digest256& h, const BlockTree& tree) {
    bool completed = false;
    for (size_t i = 0; i < buffer_.size();) {
        if (buffer_[i].block_hash != h) {
            ++i;
            continue;
        }
        Vote v = buffer_[i];
        buffer_.erase(buffer_.begin() + i);
        if (check_vote(v, tree, params_) == VoteCheck::Accepted) completed |= accept(v).qc_completed;
    }
    return completed;
}

size_t VoteAccumulator::share_count(const Digest256& h) const {
    auto it = votes_.find(h);
    return it == votes_.end() ? 0 : it->second.size();
}

QuorumCertificate VoteAccumulator::assemble_qc(const Digest256& h) const {
    QuorumCertificate qc;
    qc.block_hash = h;
    auto it = votes_.find(h);
    if (it != votes_.end()) {
        qc.votes.reserve(it->second.size());
        for (const auto& [key, v] : it->second) qc.votes.push_back(v);
    }
    return qc;
}

std::vector<std::pair<PublicKey, uint32_t>> committee_of(const Digest256& voted_block_hash,
                                                         const SlidingWindow& window,
                                                         std::span<const KeyPair> all_keys,
                                                         const ElectionParams& params) {
    std::map<PublicKey, const KeyPair*> by_pk;
    for (const KeyPair& kp : all_keys) by_pk[kp.pk] = &kp;

    std::vector<std::pair<PublicKey, uint32_t>> members;
    for (const WindowSlot& slot : window) {
        auto it = by_pk.find(slot.owner);
        if (it == by_pk.end()) throw std::invalid_argument("committee_of: unknown slot owner");
        Bytes x = election_vrf_input(voted_block_hash, slot.index);
        VrfOutput vo = vrf_prove(it->second->sk, ByteView(x.data(), x.size()));
        if (params.election_target.contains(vo.y)) members.emplace_back(slot.owner, slot.index);
    }
    return members;
}

const char* to_string(VoteCheck c) {
    switch (c) {
        case VoteCheck::Accepted: return "Accepted";
        case VoteCheck::UnknownBlock: return "UnknownBlock";
        case VoteCheck::BadIndex: return "BadIndex";
        case VoteCheck::TargetMiss: return "TargetMiss";
        case VoteCheck::WrongOwner: return "WrongOwner";
        case VoteCheck::BadProof: return "BadProof";
    }
    return "?";
}

BlockCheck BlockValidator::validate(const Block& b, const BlockTree& tree,
                                    const Digest256& pow_target) const {
    if (!(b.hash() < pow_target)) return BlockCheck::BadPow;
    if (!tree.contains(b.header.parent_hash)) return BlockCheck::MissingParent;
    if (b.txs.byte_size < b.txs.count) return BlockCheck::BadPayload;

    uint64_t height = tree.height(b.header.parent_hash) + 1;
    if (!requires_qc(height)) {
        // Bootstrap: no certificate expected; reject stray vote data.
        if (!b.parent_qc.votes.empty() || !b.header.qc_root.is_zero()) return BlockCheck::BadQC;
        return BlockCheck::Ok;
    }

    // The embedded QC certifies the ancestor `qc_distance` below this block.
    auto certified = tree.ancestor(b.header.parent_hash, qc_distance - 1);
    if (!certified) return BlockCheck::BadQC;
    if (b.parent_qc.block_hash != *certified) return BlockCheck::BadQC;

    if (b.parent_qc.synthetic) {
        if (!allow_synthetic_qc) return BlockCheck::BadQC;
        return BlockCheck::Ok;
    }

    if (qc_merkle_root(b.parent_qc.votes) != b.header.qc_root) return BlockCheck::BadQC;
    if (!b.parent_qc.meets_quorum(params.committee_size)) return BlockCheck::BadQC;
    for (const Vote& v : b.parent_qc.votes) {
        if (v.block_hash != *certified) return BlockCheck::BadQC;
        if (check_vote(v, tree, params) != VoteCheck::Accepted) return BlockCheck::BadQC;
    }
    return BlockCheck::Ok;
}

}  // namespace crystal
