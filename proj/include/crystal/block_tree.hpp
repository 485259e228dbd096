#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "crystal/block.hpp"
#include "crystal/rng.hpp"

namespace crystal {

// One participant's view of all received blocks. Single-owner mutable
// structure; simulated nodes never share trees, only value-copied messages.
class BlockTree {
  public:
    explicit BlockTree(const Block& genesis);

    const Digest256& genesis_hash() const { return genesis_; }

    bool contains(const Digest256& h) const { return blocks_.count(h) != 0; }
    const Block& block(const Digest256& h) const { return blocks_.at(h); }
    uint64_t height(const Digest256& h) const { return heights_.at(h); }
    size_t size() const { return blocks_.size(); }

    // Pre-validated insert. Returns false (no-op) for duplicates; the parent
    // must already be stored.
    bool insert(const Block& b);

    uint64_t max_height() const { return max_height_; }
    // All blocks at the maximum height, in insertion order.
    const std::vector<Digest256>& tips_at_max() const { return max_tips_; }

    // Longest-chain selection; ties are broken uniformly with the supplied
    // randomness.
    Digest256 tip_of_longest_chain(Rng& rng) const;

    // Walks up n parents; returns nullopt if the walk passes the genesis.
    std::optional<Digest256> ancestor(const Digest256& h, uint64_t n) const;

    // Chain from genesis (inclusive) to the given block (inclusive).
    std::vector<Digest256> chain_to(const Digest256& h) const;

    const std::vector<Digest256>& children(const Digest256& h) const {
        static const std::vector<Digest256> none;
        auto it = children_.find(h);
        return it == children_.end() ? none : it->second;
    }

    // QC bookkeeping: a block is certified once a valid QC for it is known.
    bool is_certified(const Digest256& h) const { return certified_.count(h) != 0; }
    void set_certified(const Digest256& h, QuorumCertificate qc) { certified_[h] = std::move(qc); }
    const QuorumCertificate* certificate(const Digest256& h) const {
        auto it = certified_.find(h);
        return it == certified_.end() ? nullptr : &it->second;
    }

  private:
    Digest256 genesis_;
    std::unordered_map<Digest256, Block, Digest256Hasher> blocks_;
    std::unordered_map<Digest256, uint64_t, Digest256Hasher> heights_;
    std::unordered_map<Digest256, QuorumCertificate, Digest256Hasher> certified_;
    std::unordered_map<Digest256, std::vector<Digest256>, Digest256Hasher> children_;
    uint64_t max_height_ = 0;
    std::vector<Digest256> max_tips_;
};

enum class BlockCheck { Ok, BadPow, MissingParent, BadPayload, BadQC };

const char* to_string(BlockCheck c);

}  // namespace crystal
