#pragma once

#include <cstdint>
#include <optional>

namespace crystal::analytics {

// Closed-form calculators mirrored by the Monte Carlo experiments. Binomial
// tails are evaluated in 50-digit floating point because the quantities of
// interest reach 1e-12 and below, where double summation loses everything.

struct CommitteeModel {
    uint32_t window_size = 3024;    // W
    uint32_t committee_size = 500;  // m
    double alpha = 0.35;            // adversary power, in [0, 0.5)

    double slot_probability() const { return double(committee_size) / double(window_size); }
};

// P(Binomial(n, p) <= k) and P(Binomial(n, p) >= k), exact to ~50 digits.
double binomial_cdf(uint32_t n, double p, int64_t k);
double binomial_tail_ge(uint32_t n, double p, int64_t k);

// Good-committee failure probability:
//   sum_{j=ceil(m/2)}^{W} C(W,j)(ap)^j (1-ap)^(W-j)
// + sum_{j=0}^{floor(m/2)} C(W,j)(bp)^j (1-bp)^(W-j),  p = m/W, b = 1-a.
double committee_failure_prob(const CommitteeModel& model);

// Smallest m whose failure probability is <= eps_max. The failure
// probability oscillates with the parity of m (the quorum threshold moves in
// half-steps), so the scan verifies the neighborhood rather than assuming
// strict monotonicity. nullopt when even m = W misses the bound.
std::optional<uint32_t> min_committee_size(double alpha, uint32_t window_size, double eps_max);

enum class WithholdConvention {
    Text,   // P_l = eps^l (1 - eps)
    Table,  // P_l = eps^(l-1) (1 - eps)
};

struct WithholdResult {
    double probability;            // P_l under the chosen convention
    double expected_failure_time;  // seconds between runs reaching length l
};

// Probability of withholding exactly l consecutive blocks when each block's
// committee fails independently with probability eps. The expected failure
// time uses the tail P(N >= l) (the convention's power of eps without the
// trailing 1-eps factor) over the given block interval.
WithholdResult withhold_prob(double eps, uint32_t l, WithholdConvention conv,
                             double block_interval_s = 600.0);

// Selfish-mining relative revenue under the one-block-lead strategy:
// R_a = a(2a + g b)/(b + 2a), b = 1 - a.
double selfish_revenue_crystal(double alpha, double gamma);

// Classic unbounded-withholding relative revenue (comparison baseline):
// R_a = [a(1-a)^2(4a + g(1-2a)) - a^3] / [1 - a(1 + (2-a)a)].
double selfish_revenue_nc(double alpha, double gamma);

enum class DoubleSpendConvention {
    Theorem,  // (a/(1-a))^(k-1)
    Table,    // (a/(1-a))^k
};

double double_spend_prob_crystal(double alpha, uint32_t k, DoubleSpendConvention conv);

// Catch-up race with private mining during the confirmation phase:
// r = 1 - sum_{j=0}^{k} C(k+j-1, j) (b^k a^j - b^j a^k), b = 1 - a.
double double_spend_prob_nc(double alpha, uint32_t k);

// P(Binomial(W, p) >= threshold) in exact arithmetic.
double committee_size_tail(uint32_t window_size, double p, uint32_t threshold);

// Probability an honest block cannot be certified when an off-line fraction
// of elected honest voters never votes and adversarial voters abstain:
// P(Binomial(W, b p (1-gamma_off)) <= floor(m/2)).
double offline_failure_prob(const CommitteeModel& model, double gamma_off);

struct SafetyParams {
    double beta = 0.65;      // honest power fraction
    double alpha = 0.35;     // adversary power fraction
    double lambda = 1.0 / 600.0;  // mining rate, blocks/s
    double delta = 0.0;      // message delay bound, seconds
    double slack = 0.1;      // delta-slack in the safety condition
};

struct SafetyCheck {
    bool holds;
    double margin;          // eta^2 beta - (1 + slack) alpha
    double eta;             // e^{-2 beta lambda delta}
    double converged_rate;  // eta^2 beta lambda, converged blocks per second
};

// Safety condition eta^2 beta > (1 + slack) alpha.
SafetyCheck safety_condition(const SafetyParams& p);

// Two-sided 95% Clopper-Pearson interval for a Monte Carlo proportion.
struct ConfidenceInterval {
    double lower;
    double upper;
    bool contains(double p) const { return p >= lower && p <= upper; }
};
ConfidenceInterval clopper_pearson_95(uint64_t successes, uint64_t trials);

}  // namespace crystal::analytics
