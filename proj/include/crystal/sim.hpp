#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "crystal/node.hpp"

namespace crystal::sim {

enum class CommitteeMode {
    // Full second-round election with real votes; practical for small W.
    Realized,
    // Committee outcomes abstracted: honest blocks certify within the 2-delta
    // vote round trip, and each adversary block can be self-certified with an
    // independently injected failure probability. This is the mode the
    // large-horizon experiments run in.
    Injected,
};

enum class AdversaryKind { None, HonestMining, Withholding, SelfishMining, DoubleSpend };

struct SimConfig {
    uint32_t n_honest = 8;
    double alpha = 0.0;        // adversary fraction of mining power
    double lambda = 1.0 / 600.0;  // total mining rate, blocks/s
    double delay = 0.0;        // delta, seconds
    uint32_t window_size = 3024;
    uint32_t committee_size = 500;
    uint32_t k_confirm = 6;
    uint32_t qc_distance = 1;
    double offline_fraction = 0.0;  // honest nodes that never vote
    CommitteeMode committee_mode = CommitteeMode::Injected;
    double injected_failure_rate = 0.0;  // epsilon per adversary block
    AdversaryKind adversary = AdversaryKind::None;
    uint64_t horizon_blocks = 1000;
    RewardConfig rewards{};
    uint64_t seed = 1;

    double beta() const { return 1.0 - alpha; }
    void validate() const;  // throws std::invalid_argument
};

enum class TraceEventKind : uint8_t { Mine, Deliver, VoteIssued, QcFormed, Commit };

struct TraceEvent {
    double time = 0.0;
    TraceEventKind kind = TraceEventKind::Mine;
    int node = -1;  // -1 = adversary
    uint64_t height = 0;
    Digest256 block{};
};

struct BlockRecord {
    Digest256 hash{};
    Digest256 parent{};
    uint64_t height = 0;
    bool adversarial = false;
    int miner = -1;
    double mine_time = 0.0;
    double publish_time = -1.0;  // first moment any honest node could hear it
    bool committee_failed = false;  // injected self-certification draw
};

struct SimTrace {
    SimConfig config;
    std::vector<TraceEvent> events;
    std::vector<BlockRecord> blocks;
    // Per honest node: (time, mining height) step function, plus commit log.
    std::vector<std::vector<std::pair<double, uint64_t>>> mining_height_timeline;
    struct CommitRecord {
        double time;
        int node;
        uint64_t height;
        Digest256 block;
    };
    std::vector<CommitRecord> commits;

    uint64_t max_private_lead = 0;
    std::vector<uint32_t> withheld_run_lengths;  // completed private runs
    double end_time = 0.0;
    uint64_t honest_blocks = 0;
    uint64_t adversary_blocks = 0;

    Digest256 trace_hash() const;  // digest of the canonical event encoding
};

SimTrace run(const SimConfig& cfg);

// --- Trace analysis -------------------------------------------------------

struct ConvergedStats {
    uint64_t honest_blocks = 0;
    uint64_t converged = 0;              // honest, no honest neighbor within 2*delta
    uint64_t matched_by_adversary = 0;   // converged with an adversary block at the height
    uint64_t height_collisions = 0;      // converged sharing a height with another honest block
};

// Honest blocks with no other honest block mined within +-2*delta; each must
// be the unique honest block at its height.
ConvergedStats converged_block_stats(const SimTrace& trace, double delta);

// Violations of the 2-delta progress bound: an honest block at height h and
// time t after which some honest node still mines at height <= h at t + 2d.
uint64_t honest_progress_violations(const SimTrace& trace, double delta);

// Conflicting k-deep commits: two commit records at the same height with
// different block hashes (across nodes or within one node over time).
uint64_t conflicting_commits(const SimTrace& trace);

std::string trace_events_json(const SimTrace& trace);  // line-delimited, schema v1

}  // namespace crystal::sim
