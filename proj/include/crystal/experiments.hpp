#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "crystal/analytics.hpp"

namespace crystal::experiments {

enum class Protocol { NC, Crystal };

// --- Selfish mining -------------------------------------------------------

struct SelfishConfig {
    Protocol protocol = Protocol::Crystal;
    double alpha = 0.3;
    double gamma = 0.5;          // honest fraction mining the attacker branch on ties
    uint64_t horizon_blocks = 1'000'000;
    uint64_t seed = 1;
};

struct SelfishResult {
    uint64_t attacker_main_chain = 0;
    uint64_t honest_main_chain = 0;
    uint64_t attacker_wasted = 0;  // mining successes burned on uncertifiable tips
    double relative_revenue() const {
        uint64_t total = attacker_main_chain + honest_main_chain;
        return total ? double(attacker_main_chain) / double(total) : 0.0;
    }
};

// Block-event Markov simulation at delta = 0. The Crystal attacker holds at
// most one block (publishing is required to extend); the NC attacker runs the
// classic unbounded-withholding strategy.
SelfishResult selfish_mining_experiment(const SelfishConfig& cfg);

// --- Double spending ------------------------------------------------------

struct DoubleSpendConfig {
    Protocol protocol = Protocol::NC;
    double alpha = 0.1;
    uint32_t k = 6;
    uint64_t trials = 1'000'000;
    uint64_t seed = 1;
    // Committee failure rate during the private phase (Crystal only).
    double epsilon = 0.0;
    // The attacker abandons when this far behind. The race is additionally
    // cut off once recovery probability drops below 1e-13, which stays inside
    // the documented 1e-12 truncation budget.
    uint32_t max_deficit_factor = 100;
};

struct DoubleSpendResult {
    uint64_t successes = 0;
    uint64_t trials = 0;
    uint32_t deficit_cutoff = 0;
    double p_hat() const { return trials ? double(successes) / double(trials) : 0.0; }
    analytics::ConfidenceInterval ci95() const {
        return analytics::clopper_pearson_95(successes, trials);
    }
};

// Two-phase race: the attacker pre-mines one block; the honest chain reaches
// k confirmations (NC attackers mine privately meanwhile, Crystal attackers
// are capped at the pre-mined block absent committee failures); then a
// step-by-step race runs until the attacker leads by one or falls past the
// abandonment deficit.
DoubleSpendResult double_spend_experiment(const DoubleSpendConfig& cfg);

// --- Withholding runs -----------------------------------------------------

struct WithholdingConfig {
    double epsilon = 0.0;        // injected committee failure rate
    uint64_t adversary_blocks = 100'000;
    uint64_t seed = 1;
};

struct WithholdingResult {
    std::map<uint32_t, uint64_t> run_length_counts;
    uint64_t total_runs = 0;
    uint32_t max_run = 0;
    double mean_run = 0.0;

    double probability_of(uint32_t l) const {
        auto it = run_length_counts.find(l);
        return total_runs && it != run_length_counts.end() ? double(it->second) / double(total_runs)
                                                           : 0.0;
    }
};

// Distribution of consecutive privately-held blocks when each adversary
// block's committee fails independently with probability epsilon.
WithholdingResult withholding_experiment(const WithholdingConfig& cfg);

// --- Offline voters -------------------------------------------------------

struct OfflineConfig {
    uint32_t window_size = 3024;
    uint32_t committee_size = 500;
    double alpha = 0.35;
    double gamma_off = 0.0;  // fraction of elected honest voters that stay silent
    uint64_t trials = 1'000'000;
    uint64_t seed = 1;
};

struct OfflineResult {
    uint64_t failures = 0;
    uint64_t trials = 0;
    double rate() const { return trials ? double(failures) / double(trials) : 0.0; }
    analytics::ConfidenceInterval ci95() const {
        return analytics::clopper_pearson_95(failures, trials);
    }
};

// Samples realized committees (adversarial voters abstain, an independent
// gamma_off fraction of elected honest voters is silent) and counts blocks
// whose honest online shares miss the quorum.
OfflineResult offline_experiment(const OfflineConfig& cfg);

}  // namespace crystal::experiments
