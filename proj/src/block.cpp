#include "crystal/block.hpp"

#include <algorithm>
#include <set>

#include "crystal/sha256.hpp"

namespace crystal {

Bytes serialize_header(const BlockHeader& h) {
    Bytes out;
    out.reserve(208);
    put_array(out, h.tx_root.bytes);
    put_array(out, h.parent_hash.bytes);
    put_array(out, h.qc_root.bytes);
    put_array(out, h.reward_pk);
    put_array(out, h.election_pk);
    put_array(out, h.difficulty_target.bytes);
    put_i64_be(out, h.timestamp);
    put_u64_be(out, h.nonce);
    return out;
}

Bytes serialize_vote(const Vote& v) {
    Bytes out;
    out.reserve(164);
    put_array(out, v.voter_pk);
    put_array(out, v.block_hash.bytes);
    put_u32_be(out, v.window_index);
    put_array(out, v.vrf_y.bytes);
    put_array(out, v.vrf_proof);
    return out;
}

Bytes serialize_block(const Block& b) {
    Bytes out = serialize_header(b.header);
    put_u32_be(out, b.txs.count);
    put_u32_be(out, b.txs.byte_size);
    put_u32_be(out, static_cast<uint32_t>(b.parent_qc.votes.size()));
    for (const Vote& v : b.parent_qc.votes) put_bytes(out, serialize_vote(v));
    return out;
}

Digest256 block_hash(const BlockHeader& h) {
    Bytes raw = serialize_header(h);
    return sha256(ByteView(raw.data(), raw.size()));
}

Digest256 Block::hash() const { return block_hash(header); }

size_t QuorumCertificate::share_count() const {
    std::set<std::pair<PublicKey, uint32_t>> seen;
    for (const Vote& v : votes) seen.emplace(v.voter_pk, v.window_index);
    return seen.size();
}

Digest256 qc_merkle_root(const std::vector<Vote>& votes) {
    if (votes.empty()) return Digest256::zero();
    std::vector<Digest256> level;
    level.reserve(votes.size());
    for (const Vote& v : votes) {
        Bytes raw = serialize_vote(v);
        level.push_back(sha256(ByteView(raw.data(), raw.size())));
    }
    while (level.size() > 1) {
        if (level.size() % 2 == 1) level.push_back(level.back());
        std::vector<Digest256> next;
        next.reserve(level.size() / 2);
        for (size_t i = 0; i < level.size(); i += 2) {
            Sha256 h;
            h.update(ByteView(level[i].bytes.data(), 32));
            h.update(ByteView(level[i + 1].bytes.data(), 32));
            next.push_back(h.finish());
        }
        level = std::move(next);
    }
    return level[0];
}

size_t qc_byte_size(size_t vote_count, uint32_t window_size) {
    size_t bitmap = (window_size + 7) / 8;
    return vote_count * (32 + 64) + bitmap;
}

Bytes election_vrf_input(const Digest256& voted_block_hash, uint32_t window_index) {
    Bytes x;
    x.reserve(36);
    put_array(x, voted_block_hash.bytes);
    put_u32_be(x, window_index);
    return x;
}

}  // namespace crystal
