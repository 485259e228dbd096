#include "crystal/block_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace crystal {

BlockTree::BlockTree(const Block& genesis) {
    genesis_ = genesis.hash();
    blocks_.emplace(genesis_, genesis);
    heights_.emplace(genesis_, 0);
    max_height_ = 0;
    max_tips_ = {genesis_};
    // Genesis is conventionally certified with an empty QC.
    certified_[genesis_] = QuorumCertificate{genesis_, {}, true};
}

bool BlockTree::insert(const Block& b) {
    Digest256 h = b.hash();
    if (blocks_.count(h)) return false;
    auto pit = heights_.find(b.header.parent_hash);
    if (pit == heights_.end()) throw std::logic_error("insert without parent");
    uint64_t ht = pit->second + 1;
    blocks_.emplace(h, b);
    heights_.emplace(h, ht);
    children_[b.header.parent_hash].push_back(h);
    if (ht > max_height_) {
        max_height_ = ht;
        max_tips_ = {h};
    } else if (ht == max_height_) {
        max_tips_.push_back(h);
    }
    return true;
}

Digest256 BlockTree::tip_of_longest_chain(Rng& rng) const {
    if (max_tips_.size() == 1) return max_tips_[0];
    return max_tips_[rng.next_below(max_tips_.size())];
}

std::optional<Digest256> BlockTree::ancestor(const Digest256& h, uint64_t n) const {
    Digest256 cur = h;
    for (uint64_t i = 0; i < n; ++i) {
        if (cur == genesis_) return std::nullopt;
        cur = blocks_.at(cur).header.parent_hash;
    }
    return cur;
}

std::vector<Digest256> BlockTree::chain_to(const Digest256& h) const {
    std::vector<Digest256> chain;
    Digest256 cur = h;
    while (true) {
        chain.push_back(cur);
        if (cur == genesis_) break;
        cur = blocks_.at(cur).header.parent_hash;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

const char* to_string(BlockCheck c) {
    switch (c) {
        case BlockCheck::Ok: return "Ok";
        case BlockCheck::BadPow: return "BadPow";
        case BlockCheck::MissingParent: return "MissingParent";
        case BlockCheck::BadPayload: return "BadPayload";
        case BlockCheck::BadQC: return "BadQC";
    }
    return "?";
}

}  // namespace crystal
