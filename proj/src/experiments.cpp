#include "crystal/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "crystal/rng.hpp"

namespace crystal::experiments {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must be in [0, 0.5)");
}

}  // namespace

SelfishResult selfish_mining_experiment(const SelfishConfig& cfg) {
    check_alpha(cfg.alpha);
    Rng rng(cfg.seed, 0x5e1f);
    SelfishResult res;

    if (cfg.protocol == Protocol::Crystal) {
        // States: 0 = common view, 1 = one withheld block, 2 = tie after match.
        int state = 0;
        for (uint64_t i = 0; i < cfg.horizon_blocks; ++i) {
            bool attacker = rng.bernoulli(cfg.alpha);
            switch (state) {
                case 0:
                    if (attacker)
                        state = 1;  // withhold the fresh block
                    else
                        res.honest_main_chain += 1;
                    break;
                case 1:
                    if (attacker) {
                        // Cannot extend an uncertified private block; the
                        // success is burned.
                        res.attacker_wasted += 1;
                    } else {
                        state = 2;  // publish to match the honest block
                    }
                    break;
                case 2:
                    if (attacker) {
                        res.attacker_main_chain += 2;  // withheld + new block win
                        state = 0;
                    } else if (rng.bernoulli(cfg.gamma)) {
                        res.attacker_main_chain += 1;  // honest extends attacker branch
                        res.honest_main_chain += 1;
                        state = 0;
                    } else {
                        res.honest_main_chain += 2;  // honest branch wins
                        state = 0;
                    }
                    break;
            }
        }
        return res;
    }

    // NC: unbounded withholding. lead = private chain length minus public
    // fork progress; tie == matched branches of equal length.
    uint64_t lead = 0;
    bool tie = false;
    for (uint64_t i = 0; i < cfg.horizon_blocks; ++i) {
        bool attacker = rng.bernoulli(cfg.alpha);
        if (tie) {
            if (attacker) {
                res.attacker_main_chain += 2;
            } else if (rng.bernoulli(cfg.gamma)) {
                res.attacker_main_chain += 1;
                res.honest_main_chain += 1;
            } else {
                res.honest_main_chain += 2;
            }
            tie = false;
            continue;
        }
        if (attacker) {
            lead += 1;
            continue;
        }
        // Honest block against a private lead.
        if (lead == 0) {
            res.honest_main_chain += 1;
        } else if (lead == 1) {
            tie = true;  // attacker matches
            lead = 0;
        } else if (lead == 2) {
            res.attacker_main_chain += 2;  // publish all, orphaning the honest block
            lead = 0;
        } else {
            res.attacker_main_chain += 1;  // one private block locks in
            lead -= 1;
        }
    }
    return res;
}

DoubleSpendResult double_spend_experiment(const DoubleSpendConfig& cfg) {
    check_alpha(cfg.alpha);
    if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
    Rng rng(cfg.seed, 0xd5e0);

    // Abandonment: the configured deficit, tightened to where the recovery
    // probability falls below 1e-13 (inside the documented truncation error).
    uint64_t cutoff = uint64_t(cfg.max_deficit_factor) * cfg.k;
    if (cfg.alpha > 0.0) {
        double ratio = cfg.alpha / (1.0 - cfg.alpha);
        uint64_t zstar = uint64_t(std::ceil(std::log(1e-13) / std::log(ratio)));
        cutoff = std::min(cutoff, std::max<uint64_t>(zstar, cfg.k + 8));
    }

    DoubleSpendResult res;
    res.trials = cfg.trials;
    res.deficit_cutoff = uint32_t(cutoff);
    for (uint64_t t = 0; t < cfg.trials; ++t) {
        // Phase 1: attacker pre-mined one block; honest side reaches k
        // confirmations.
        int64_t attacker = 1;
        uint32_t honest = 0;
        while (honest < cfg.k) {
            if (rng.bernoulli(cfg.alpha)) {
                if (cfg.protocol == Protocol::NC)
                    attacker += 1;  // private growth unbounded
                else if (cfg.epsilon > 0.0 && rng.bernoulli(cfg.epsilon))
                    attacker += 1;  // committee failure: private extension
                // otherwise the success is unusable while staying hidden
            } else {
                honest += 1;
            }
        }
        // Phase 2: open race until strictly ahead or abandoned.
        int64_t lead = attacker - int64_t(cfg.k);
        while (lead < 1 && lead > -int64_t(cutoff)) {
            lead += rng.bernoulli(cfg.alpha) ? 1 : -1;
        }
        if (lead >= 1) res.successes += 1;
    }
    return res;
}

WithholdingResult withholding_experiment(const WithholdingConfig& cfg) {
    if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in [0, 1)");
    Rng rng(cfg.seed, 0x3317);
    WithholdingResult res;
    uint64_t sum = 0;
    uint32_t run = 0;
    for (uint64_t i = 0; i < cfg.adversary_blocks; ++i) {
        run += 1;  // freshly mined block joins the private run
        if (!rng.bernoulli(cfg.epsilon)) {
            // Good committee: extension requires publication; run ends.
            res.run_length_counts[run] += 1;
            res.total_runs += 1;
            res.max_run = std::max(res.max_run, run);
            sum += run;
            run = 0;
        }
    }
    if (run > 0) {  // trailing open run
        res.run_length_counts[run] += 1;
        res.total_runs += 1;
        res.max_run = std::max(res.max_run, run);
        sum += run;
    }
    res.mean_run = res.total_runs ? double(sum) / double(res.total_runs) : 0.0;
    return res;
}

OfflineResult offline_experiment(const OfflineConfig& cfg) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha < 0.5)) throw std::invalid_argument("alpha out of range");
    if (!(cfg.gamma_off >= 0.0 && cfg.gamma_off <= 1.0))
        throw std::invalid_argument("gamma_off out of range");
    Rng rng(cfg.seed, 0x0ff1);

    // Slot-level model: a window slot contributes an honest online share when
    // its owner is honest (prob beta), elected (prob m/W), and voting
    // (prob 1-gamma_off). The three thinnings compose into one binomial draw.
    double beta = 1.0 - cfg.alpha;
    double p = double(cfg.committee_size) / double(cfg.window_size);
    BinomialSampler online_shares(cfg.window_size, beta * p * (1.0 - cfg.gamma_off));

    uint32_t quorum_bound = cfg.committee_size / 2;  // fail when shares <= m/2
    OfflineResult res;
    res.trials = cfg.trials;
    for (uint64_t t = 0; t < cfg.trials; ++t) {
        if (online_shares.draw(rng) <= quorum_bound) res.failures += 1;
    }
    return res;
}

}  // namespace crystal::experiments
