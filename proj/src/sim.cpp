#include "crystal/sim.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace crystal::sim {

void SimConfig::validate() const {
    if (!(alpha >= 0.0 && alpha < 0.5))
        throw std::invalid_argument("alpha must be in [0, 0.5): honest majority is assumed");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (!(delay >= 0.0)) throw std::invalid_argument("delay must be nonnegative");
    if (committee_size < 1 || window_size < committee_size)
        throw std::invalid_argument("need W >= m >= 1");
    if (n_honest < 1) throw std::invalid_argument("need at least one honest node");
    if (k_confirm < 1) throw std::invalid_argument("k must be >= 1");
    if (qc_distance < 1) throw std::invalid_argument("qc distance must be >= 1");
    if (horizon_blocks < 1) throw std::invalid_argument("horizon must be >= 1");
    if (!(injected_failure_rate >= 0.0 && injected_failure_rate < 1.0))
        throw std::invalid_argument("injected failure rate must be in [0, 1)");
    if (!(offline_fraction >= 0.0 && offline_fraction <= 1.0))
        throw std::invalid_argument("offline fraction must be in [0, 1]");
}

namespace {

Block make_genesis(uint64_t seed) {
    Block g;
    KeyPair gk = keypair_from_seed(seed ^ 0x67656e6573697321ull);
    g.header.election_pk = gk.pk;
    g.header.reward_pk = keypair_from_seed(seed ^ 0x67656e6573697322ull).pk;
    g.header.difficulty_target = Digest256::max();
    g.parent_qc.synthetic = true;
    return g;
}

enum class Ev : uint8_t { MineTick, DeliverBlock, DeliverVotes, QcReadyHonest, QcReadyAdv };

struct Event {
    double time;
    uint64_t seq;
    Ev kind;
    int to = -1;          // target honest node, or -1 for broadcast kinds
    uint32_t payload = 0; // arena index
    Digest256 hash{};     // for QC events

    bool operator>(const Event& o) const {
        return time != o.time ? time > o.time : seq > o.seq;
    }
};

class Engine;

// Aggregated adversary: full rushing view (hears every honest message
// instantly), publishes with per-recipient delay zero, and keeps an
// unpublished suffix of blocks it mined. It can extend an unpublished block
// only when that block's committee failed (self-certification); otherwise
// extension forces publication, which is the property the protocol is built
// around.
struct Adversary {
    AdversaryKind kind = AdversaryKind::None;
    KeyPair election_keys;
    KeyPair reward_keys;
    BlockTree tree;
    VoteAccumulator votes;
    ElectionParams params;
    uint32_t qc_distance = 1;
    CommitteeMode mode = CommitteeMode::Injected;

    std::vector<Digest256> private_stack;  // oldest first, all unpublished
    uint64_t private_height = 0;           // height of private tip
    Digest256 branch_tip{};                // working fork tip (may be private)
    uint64_t branch_height = 0;
    TipTracker public_tip;                 // best published extendable block
    uint64_t published_best_height = 0;    // best published height (any branch)
    uint64_t block_counter = 0;

    Adversary(const Block& genesis, ElectionParams p, uint32_t qc_dist, uint64_t key_seed)
        : election_keys(keypair_from_seed(key_seed)),
          reward_keys(keypair_from_seed(key_seed ^ 0xadadadadadadadadull)),
          tree(genesis),
          votes(p),
          params(p),
          qc_distance(qc_dist) {
        public_tip.init(tree.genesis_hash());
        branch_tip = tree.genesis_hash();
    }

    bool requires_qc(uint64_t block_height) const {
        return block_height >= uint64_t(params.window_size) + qc_distance;
    }
    bool extendable(const Digest256& h) const {
        uint64_t child_height = tree.height(h) + 1;
        if (!requires_qc(child_height)) return true;
        auto anc = tree.ancestor(h, qc_distance - 1);
        return anc && tree.is_certified(*anc);
    }
};

class Engine {
  public:
    explicit Engine(const SimConfig& cfg)
        : cfg_(cfg),
          rng_(cfg.seed, 0),
          genesis_(make_genesis(cfg.seed)),
          params_(ElectionParams::standard(cfg.window_size, cfg.committee_size)),
          adv_(genesis_, params_, cfg.qc_distance, derive_seed(9999)) {
        adv_.kind = cfg.adversary;
        adv_.mode = cfg.committee_mode;
        trace_.config = cfg_;
        uint32_t n_offline = static_cast<uint32_t>(cfg.offline_fraction * cfg.n_honest + 0.5);
        for (uint32_t i = 0; i < cfg_.n_honest; ++i) {
            bool voter = i >= n_offline;
            nodes_.emplace_back(int(i), genesis_, params_, cfg.qc_distance, cfg.k_confirm,
                                derive_seed(100 + i), derive_seed(500 + i), voter);
            if (cfg.committee_mode == CommitteeMode::Injected)
                nodes_.back().set_allow_synthetic_qc(true);
        }
        trace_.mining_height_timeline.assign(cfg_.n_honest, {{0.0, 0}});
    }

    SimTrace run() {
        schedule(rng_.exponential(cfg_.lambda), Ev::MineTick);
        while (!queue_.empty()) {
            Event ev = queue_.top();
            queue_.pop();
            now_ = ev.time;
            dispatch(ev);
        }
        finish_runs();
        trace_.end_time = now_;
        return std::move(trace_);
    }

  private:
    uint64_t derive_seed(uint64_t stream) const {
        // Distinct deterministic streams per role.
        return cfg_.seed * 0x9e3779b97f4a7c15ull + stream * 0xbf58476d1ce4e5b9ull + 1;
    }

    void schedule(double t, Ev kind, int to = -1, uint32_t payload = 0, Digest256 h = {}) {
        queue_.push(Event{t, seq_++, kind, to, payload, h});
    }

    void dispatch(const Event& ev) {
        switch (ev.kind) {
            case Ev::MineTick: on_mine_tick(); break;
            case Ev::DeliverBlock: on_deliver_block(ev.to, ev.payload); break;
            case Ev::DeliverVotes: on_deliver_votes(ev.to, ev.payload); break;
            case Ev::QcReadyHonest:
                for (uint32_t i = 0; i < cfg_.n_honest; ++i) {
                    nodes_[i].on_qc_ready(ev.hash);
                    note_height(i);
                }
                record(TraceEventKind::QcFormed, -2, 0, ev.hash);
                break;
            case Ev::QcReadyAdv:
                if (adv_.tree.contains(ev.hash) && !adv_.tree.is_certified(ev.hash))
                    adv_.tree.set_certified(ev.hash, QuorumCertificate{ev.hash, {}, true});
                adv_try_extendable(ev.hash);
                break;
        }
    }

    // ---- mining ----------------------------------------------------------

    void on_mine_tick() {
        if (mined_ < cfg_.horizon_blocks) {
            if (rng_.bernoulli(cfg_.alpha))
                adversary_mine();
            else
                honest_mine(static_cast<uint32_t>(rng_.next_below(cfg_.n_honest)));
            ++mined_;
            if (mined_ < cfg_.horizon_blocks) schedule(now_ + rng_.exponential(cfg_.lambda), Ev::MineTick);
        }
    }

    void honest_mine(uint32_t i) {
        NodeState& node = nodes_[i];
        TxPayload payload{1, 256};
        auto out = node.on_mining_success(int64_t(now_), payload, Digest256::max());
        const Block& b = *out.block;
        Digest256 h = b.hash();

        BlockRecord rec;
        rec.hash = h;
        rec.parent = b.header.parent_hash;
        rec.height = node.tree().height(h);
        rec.adversarial = false;
        rec.miner = int(i);
        rec.mine_time = now_;
        rec.publish_time = now_;
        trace_.blocks.push_back(rec);
        trace_.honest_blocks++;
        record(TraceEventKind::Mine, int(i), rec.height, h);
        note_height(i);
        handle_commits(i, out.commits);

        // Broadcast: other honest nodes hear at +delay, the adversary at once.
        uint32_t idx = store_block(b);
        for (uint32_t j = 0; j < cfg_.n_honest; ++j)
            if (j != i) schedule(now_ + cfg_.delay, Ev::DeliverBlock, int(j), idx);
        adv_hear_block(b, false);

        broadcast_votes(i, out.votes);
        if (cfg_.committee_mode == CommitteeMode::Injected) {
            schedule(now_ + 2 * cfg_.delay, Ev::QcReadyHonest, -1, 0, h);
            schedule(now_ + cfg_.delay, Ev::QcReadyAdv, -1, 0, h);
        }
    }

    void broadcast_votes(uint32_t from, const std::vector<Vote>& vs) {
        if (vs.empty()) return;
        record(TraceEventKind::VoteIssued, int(from), vs.size(), vs.front().block_hash);
        uint32_t idx = store_votes(vs);
        for (uint32_t j = 0; j < cfg_.n_honest; ++j)
            if (j != from) schedule(now_ + cfg_.delay, Ev::DeliverVotes, int(j), idx);
        // Rushing adversary hears votes immediately.
        for (const Vote& v : vs) adv_hear_vote(v);
    }

    void on_deliver_block(int to, uint32_t idx) {
        NodeState& node = nodes_[to];
        auto r = node.on_receive_block(block_arena_[idx], int64_t(now_));
        if (r.duplicate || r.check != BlockCheck::Ok) return;
        record(TraceEventKind::Deliver, to, node.tree().height(block_arena_[idx].hash()),
               block_arena_[idx].hash());
        note_height(uint32_t(to));
        handle_commits(uint32_t(to), r.out.commits);
        broadcast_votes(uint32_t(to), r.out.votes);
    }

    void on_deliver_votes(int to, uint32_t idx) {
        NodeState& node = nodes_[to];
        for (const Vote& v : vote_arena_[idx]) node.on_receive_vote(v);
        note_height(uint32_t(to));
    }

    // ---- adversary -------------------------------------------------------

    void adversary_mine() {
        switch (adv_.kind) {
            case AdversaryKind::None:
            case AdversaryKind::HonestMining: adv_mine_honest(); break;
            case AdversaryKind::Withholding: adv_mine_withholding(false); break;
            case AdversaryKind::DoubleSpend: adv_mine_withholding(true); break;
            case AdversaryKind::SelfishMining: adv_mine_selfish(); break;
        }
    }

    Block adv_build_block(const Digest256& parent) {
        Block b;
        b.header.parent_hash = parent;
        b.header.reward_pk = adv_.reward_keys.pk;
        b.header.election_pk = adv_.election_keys.pk;
        b.header.difficulty_target = Digest256::max();
        b.header.timestamp = int64_t(now_);
        b.header.nonce = adv_.block_counter++;
        b.txs = TxPayload{1, 256};
        {
            Bytes t;
            put_array(t, adv_.election_keys.pk);
            put_u64_be(t, b.header.nonce);
            b.header.tx_root = sha256(ByteView(t.data(), t.size()));
        }
        uint64_t child_height = adv_.tree.height(parent) + 1;
        if (adv_.requires_qc(child_height)) {
            auto anc = adv_.tree.ancestor(parent, adv_.qc_distance - 1);
            const QuorumCertificate* qc = anc ? adv_.tree.certificate(*anc) : nullptr;
            if (!qc) throw std::logic_error("adversary extended an uncertified block");
            b.parent_qc = *qc;
            b.header.qc_root = qc->synthetic ? Digest256::zero() : qc_merkle_root(qc->votes);
        } else {
            b.parent_qc.block_hash = parent;
        }
        return b;
    }

    BlockRecord& adv_register_block(const Block& b, bool committee_failed) {
        Digest256 h = b.hash();
        adv_.tree.insert(b);
        BlockRecord rec;
        rec.hash = h;
        rec.parent = b.header.parent_hash;
        rec.height = adv_.tree.height(h);
        rec.adversarial = true;
        rec.miner = -1;
        rec.mine_time = now_;
        rec.committee_failed = committee_failed;
        block_index_[h] = trace_.blocks.size();
        trace_.blocks.push_back(rec);
        trace_.adversary_blocks++;
        record(TraceEventKind::Mine, -1, rec.height, h);
        return trace_.blocks.back();
    }

    // Draw whether this adversary block's committee fails (lets the attacker
    // certify it without publishing).
    bool draw_self_certification(const Block& b) {
        if (cfg_.committee_mode == CommitteeMode::Injected)
            return rng_.bernoulli(cfg_.injected_failure_rate);
        // Realized: the attacker's own shares may already exceed the quorum.
        Digest256 h = b.hash();
        SlidingWindow w = window_for(adv_.tree, h, params_.window_size);
        auto vs = vote_for_block(h, w, adv_.election_keys, params_);
        if (2 * vs.size() > params_.committee_size) {
            QuorumCertificate qc;
            qc.block_hash = h;
            qc.votes = std::move(vs);
            adv_.tree.set_certified(h, std::move(qc));
            return true;
        }
        return false;
    }

    void adv_record_run() {
        if (!adv_.private_stack.empty()) {
            trace_.withheld_run_lengths.push_back(uint32_t(adv_.private_stack.size()));
            adv_.private_stack.clear();
        }
    }

    uint64_t adv_public_height() const { return adv_.published_best_height; }

    void adv_mine_honest() {
        Digest256 parent = adv_.public_tip.current();
        Block b = adv_build_block(parent);
        bool failed = draw_self_certification(b);
        adv_register_block(b, failed);
        adv_publish_chain({b.hash()});
    }

    // Fork-building attacker. Withholding mode follows the chain tip, stacks
    // blocks privately while committee failures allow, and publishes the
    // moment continuing requires it. Double-spend mode additionally sticks to
    // its fork until hopelessly behind, holding withheld blocks to spring a
    // reorg once strictly ahead of the public chain.
    void adv_mine_withholding(bool spend_mode) {
        uint64_t pub_h = adv_public_height();
        uint64_t patience = spend_mode ? cfg_.k_confirm + 4 : 0;
        if (adv_.branch_height + patience < pub_h) {
            // Fork fell hopelessly behind: abandon it.
            adv_record_run();
            adv_.branch_tip = adv_.public_tip.current();
            adv_.branch_height = adv_.tree.height(adv_.branch_tip);
        }
        if (!adv_.extendable(adv_.branch_tip)) {
            if (!adv_.private_stack.empty() && adv_.private_stack.back() == adv_.branch_tip) {
                // Continuing the fork requires certifying its tip: publish.
                adv_record_and_publish_stack();
            }
            if (!adv_.extendable(adv_.branch_tip)) {
                // Votes still in flight (realized mode); fall back.
                adv_.branch_tip = adv_.public_tip.current();
                adv_.branch_height = adv_.tree.height(adv_.branch_tip);
            }
        }

        Block b = adv_build_block(adv_.branch_tip);
        bool failed = draw_self_certification(b);
        adv_register_block(b, failed);
        Digest256 h = b.hash();
        adv_.private_stack.push_back(h);
        adv_.private_height = adv_.tree.height(h);
        adv_.branch_tip = h;
        adv_.branch_height = adv_.private_height;
        trace_.max_private_lead =
            std::max<uint64_t>(trace_.max_private_lead, adv_.private_stack.size());

        if (spend_mode) {
            if (adv_.branch_height > adv_public_height()) adv_record_and_publish_stack();
        } else if (!failed) {
            // Good committee: the block can never be extended privately.
            adv_record_and_publish_stack();
        }
    }

    void adv_record_and_publish_stack() {
        std::vector<Digest256> chain = adv_.private_stack;
        trace_.withheld_run_lengths.push_back(uint32_t(chain.size()));
        adv_.private_stack.clear();
        adv_publish_chain(chain);
    }

    void adv_mine_selfish() {
        // Lead-limited strategy: hold at most the certification rules allow;
        // in the tie state extend the published match block.
        Digest256 parent;
        if (!adv_.private_stack.empty() && adv_.extendable(adv_.private_stack.back()) &&
            adv_.private_height >= adv_public_height()) {
            parent = adv_.private_stack.back();  // committee failure made this possible
        } else if (!adv_.private_stack.empty() && adv_.private_height >= adv_public_height()) {
            // Private tip not extendable: mining on it is wasted work, which
            // is exactly the cost the protocol imposes. The attempt burns the
            // mining success.
            adv_waste_block();
            return;
        } else if (tie_branch_tip_ && adv_.extendable(*tie_branch_tip_)) {
            parent = *tie_branch_tip_;
        } else {
            parent = adv_.public_tip.current();
        }

        Block b = adv_build_block(parent);
        bool failed = draw_self_certification(b);
        adv_register_block(b, failed);
        Digest256 h = b.hash();

        if (tie_branch_tip_ && parent == *tie_branch_tip_) {
            // Won the fork race: publish immediately.
            tie_branch_tip_.reset();
            adv_publish_chain({h});
            return;
        }
        adv_.private_stack.push_back(h);
        adv_.private_height = adv_.tree.height(h);
        trace_.max_private_lead = std::max<uint64_t>(trace_.max_private_lead, adv_.private_stack.size());
    }

    void adv_waste_block() {
        // Recorded for accounting but never linked into any chain.
        BlockRecord rec;
        rec.hash = Digest256{};
        rec.height = 0;
        rec.adversarial = true;
        rec.miner = -1;
        rec.mine_time = now_;
        trace_.adversary_blocks++;
        trace_.blocks.push_back(rec);
        record(TraceEventKind::Mine, -1, 0, Digest256{});
    }

    void adv_publish_chain(const std::vector<Digest256>& chain) {
        for (const Digest256& h : chain) {
            const Block& b = adv_.tree.block(h);
            uint32_t idx = store_block(b);
            for (uint32_t j = 0; j < cfg_.n_honest; ++j)
                schedule(now_, Ev::DeliverBlock, int(j), idx);  // rushing delivery
            uint64_t height = adv_.tree.height(h);
            auto it = block_index_.find(h);
            if (it != block_index_.end() && trace_.blocks[it->second].publish_time < 0)
                trace_.blocks[it->second].publish_time = now_;
            adv_.published_best_height = std::max(adv_.published_best_height, height);
            adv_.public_tip.offer(h, height, adv_.tree, rng_);
            if (cfg_.committee_mode == CommitteeMode::Injected) {
                // Voters have the block immediately; one vote hop for honest
                // recipients, instantaneous collection for the attacker.
                schedule(now_ + cfg_.delay, Ev::QcReadyHonest, -1, 0, h);
                if (!adv_.tree.is_certified(h))
                    adv_.tree.set_certified(h, QuorumCertificate{h, {}, true});
            }
        }
    }

    void adv_try_extendable(const Digest256& h) {
        // Called when new certificates land: published blocks may become the
        // adversary's best mining base.
        if (!adv_.tree.contains(h)) return;
        uint64_t height = adv_.tree.height(h);
        if (adv_.extendable(h)) adv_.public_tip.offer(h, height, adv_.tree, rng_);
    }

    void adv_hear_block(const Block& b, bool adversarial) {
        Digest256 h = b.hash();
        if (adv_.tree.contains(h)) return;
        adv_.tree.insert(b);
        if (!b.parent_qc.votes.empty() || b.parent_qc.synthetic) {
            if (!adv_.tree.is_certified(b.parent_qc.block_hash))
                adv_.tree.set_certified(b.parent_qc.block_hash, b.parent_qc);
        }
        uint64_t height = adv_.tree.height(h);
        adv_.published_best_height = std::max(adv_.published_best_height, height);
        if (adv_.extendable(h)) adv_.public_tip.offer(h, height, adv_.tree, rng_);
        if (adversarial) return;

        if (adv_.kind == AdversaryKind::SelfishMining && !adv_.private_stack.empty()) {
            if (height == adv_.private_height) {
                // Match: publish the withheld branch, creating a tie.
                std::vector<Digest256> chain = adv_.private_stack;
                trace_.withheld_run_lengths.push_back(uint32_t(chain.size()));
                adv_.private_stack.clear();
                adv_publish_chain(chain);
                tie_branch_tip_ = chain.back();
            } else if (height > adv_.private_height) {
                adv_record_run();  // fell behind; abandon
            }
        }
        if (adv_.kind == AdversaryKind::SelfishMining && tie_branch_tip_ &&
            height > adv_.tree.height(*tie_branch_tip_)) {
            tie_branch_tip_.reset();  // fork resolved by the honest side
        }
    }

    void adv_hear_vote(const Vote& v) {
        if (cfg_.committee_mode != CommitteeMode::Realized) return;
        auto res = adv_.votes.on_receipt_vote(v, adv_.tree);
        if (res.qc_completed) {
            adv_.tree.set_certified(v.block_hash, adv_.votes.assemble_qc(v.block_hash));
            adv_try_extendable(v.block_hash);
        }
    }

    // ---- bookkeeping -----------------------------------------------------

    void note_height(uint32_t i) {
        auto& tl = trace_.mining_height_timeline[i];
        uint64_t h = nodes_[i].mining_height();
        if (tl.back().second != h) tl.emplace_back(now_, h);
    }

    void handle_commits(uint32_t i, const std::vector<Digest256>& commits) {
        for (const Digest256& h : commits) {
            uint64_t height = nodes_[i].tree().height(h);
            trace_.commits.push_back({now_, int(i), height, h});
            record(TraceEventKind::Commit, int(i), height, h);
        }
    }

    void record(TraceEventKind kind, int node, uint64_t height, const Digest256& h) {
        trace_.events.push_back(TraceEvent{now_, kind, node, height, h});
    }

    void finish_runs() { adv_record_run(); }

    uint32_t store_block(const Block& b) {
        block_arena_.push_back(b);
        return uint32_t(block_arena_.size() - 1);
    }
    uint32_t store_votes(const std::vector<Vote>& vs) {
        vote_arena_.push_back(vs);
        return uint32_t(vote_arena_.size() - 1);
    }

    SimConfig cfg_;
    Rng rng_;
    Block genesis_;
    ElectionParams params_;
    std::vector<NodeState> nodes_;
    Adversary adv_;
    std::optional<Digest256> tie_branch_tip_;

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
    std::deque<Block> block_arena_;
    std::deque<std::vector<Vote>> vote_arena_;
    std::unordered_map<Digest256, size_t, Digest256Hasher> block_index_;
    uint64_t seq_ = 0;
    uint64_t mined_ = 0;
    double now_ = 0.0;
    SimTrace trace_;
};

}  // namespace

SimTrace run(const SimConfig& cfg) {
    cfg.validate();
    Engine eng(cfg);
    return eng.run();
}

Digest256 SimTrace::trace_hash() const {
    Sha256 h;
    Bytes buf;
    buf.reserve(64);
    for (const TraceEvent& e : events) {
        buf.clear();
        uint64_t tbits;
        static_assert(sizeof(double) == 8);
        std::memcpy(&tbits, &e.time, 8);
        put_u64_be(buf, tbits);
        buf.push_back(uint8_t(e.kind));
        put_u32_be(buf, uint32_t(e.node + 16));
        put_u64_be(buf, e.height);
        put_u64_be(buf, e.block.prefix64());
        h.update(ByteView(buf.data(), buf.size()));
    }
    return h.finish();
}

ConvergedStats converged_block_stats(const SimTrace& trace, double delta) {
    ConvergedStats s;
    std::vector<std::pair<double, uint64_t>> honest;  // (time, height), in mine order
    std::map<uint64_t, uint32_t> honest_at_height;
    std::map<uint64_t, uint32_t> adv_at_height;
    for (const BlockRecord& b : trace.blocks) {
        if (b.adversarial) {
            if (!b.hash.is_zero()) adv_at_height[b.height]++;
        } else {
            honest.emplace_back(b.mine_time, b.height);
            honest_at_height[b.height]++;
        }
    }
    s.honest_blocks = honest.size();
    double gap = 2.0 * delta;
    for (size_t i = 0; i < honest.size(); ++i) {
        double t = honest[i].first;
        bool prev_ok = i == 0 || (t - honest[i - 1].first) >= gap;
        bool next_ok = i + 1 == honest.size() || (honest[i + 1].first - t) >= gap;
        if (!(prev_ok && next_ok)) continue;
        s.converged++;
        if (honest_at_height[honest[i].second] > 1) s.height_collisions++;
        if (adv_at_height.count(honest[i].second)) s.matched_by_adversary++;
    }
    return s;
}

uint64_t honest_progress_violations(const SimTrace& trace, double delta) {
    uint64_t violations = 0;
    for (const BlockRecord& b : trace.blocks) {
        if (b.adversarial) continue;
        double deadline = b.mine_time + 2.0 * delta;
        if (deadline > trace.end_time) continue;  // horizon: events beyond the drain
        double eps = 1e-9 * std::max(1.0, deadline);
        for (const auto& tl : trace.mining_height_timeline) {
            // Mining height at `deadline`: last change at or before it. The
            // node mines at tip height + 1, so tip height >= block height
            // means it is working at the next height already.
            auto it = std::upper_bound(
                tl.begin(), tl.end(), std::make_pair(deadline + eps, UINT64_MAX));
            uint64_t tip_height = (it == tl.begin()) ? 0 : std::prev(it)->second;
            if (tip_height < b.height) {
                ++violations;
                break;
            }
        }
    }
    return violations;
}

uint64_t conflicting_commits(const SimTrace& trace) {
    uint64_t conflicts = 0;
    std::map<uint64_t, Digest256> first;
    for (const auto& c : trace.commits) {
        auto [it, inserted] = first.emplace(c.height, c.block);
        if (!inserted && !(it->second == c.block)) ++conflicts;
    }
    return conflicts;
}

std::string trace_events_json(const SimTrace& trace) {
    std::ostringstream os;
    os << R"({"schema":"crystal-trace","version":1,"seed":)" << trace.config.seed
       << R"(,"events":)" << trace.events.size() << "}\n";
    static const char* names[] = {"mine", "deliver", "vote", "qc", "commit"};
    for (const TraceEvent& e : trace.events) {
        os << R"({"t":)" << e.time << R"(,"kind":")" << names[size_t(e.kind)]
           << R"(","node":)" << e.node << R"(,"height":)" << e.height << R"(,"block":")"
           << to_hex(ByteView(e.block.bytes.data(), 8)) << "\"}\n";
    }
    return os.str();
}

}  // namespace crystal::sim
