#include "crystal/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace crystal::analytics {

namespace {

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// sum_{j=0}^{k} C(n,j) p^j (1-p)^(n-j) via the pmf recurrence
// pmf(j+1) = pmf(j) (n-j)/(j+1) p/(1-p).
BigFloat big_binomial_cdf(uint32_t n, const BigFloat& p, int64_t k) {
    if (k < 0) return 0;
    if (k >= n) return 1;
    if (p == 0) return 1;
    if (p == 1) return 0;
    BigFloat q = 1 - p;
    BigFloat ratio = p / q;
    BigFloat pmf = pow(q, int(n));
    BigFloat total = pmf;
    for (int64_t j = 0; j < k; ++j) {
        pmf *= ratio * BigFloat(n - j) / BigFloat(j + 1);
        total += pmf;
    }
    return total;
}

void check_fraction(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(what) + " out of [0,1]");
}

}  // namespace

double binomial_cdf(uint32_t n, double p, int64_t k) {
    check_fraction(p, "p");
    return big_binomial_cdf(n, BigFloat(p), k).convert_to<double>();
}

double binomial_tail_ge(uint32_t n, double p, int64_t k) {
    check_fraction(p, "p");
    if (k <= 0) return 1.0;
    if (k > n) return 0.0;
    BigFloat tail = 1 - big_binomial_cdf(n, BigFloat(p), k - 1);
    return tail.convert_to<double>();
}

double committee_failure_prob(const CommitteeModel& model) {
    if (!(model.alpha >= 0.0 && model.alpha < 0.5))
        throw std::invalid_argument("alpha must be in [0, 0.5)");
    if (model.committee_size < 1 || model.committee_size > model.window_size)
        throw std::invalid_argument("need W >= m >= 1");
    uint32_t W = model.window_size;
    uint32_t m = model.committee_size;
    BigFloat p = BigFloat(m) / BigFloat(W);
    BigFloat ap = BigFloat(model.alpha) * p;
    BigFloat bp = (1 - BigFloat(model.alpha)) * p;
    int64_t lo = (m + 1) / 2;  // ceil(m/2)
    int64_t hi = m / 2;        // floor(m/2)
    BigFloat adversary_tail = 1 - big_binomial_cdf(W, ap, lo - 1);
    BigFloat honest_tail = big_binomial_cdf(W, bp, hi);
    return (adversary_tail + honest_tail).convert_to<double>();
}

std::optional<uint32_t> min_committee_size(double alpha, uint32_t window_size, double eps_max) {
    CommitteeModel model{window_size, 1, alpha};
    auto eps_of = [&](uint32_t m) {
        model.committee_size = m;
        return committee_failure_prob(model);
    };
    if (eps_of(window_size) > eps_max) return std::nullopt;

    // Bisect on the (eventually decreasing) envelope, then scan down past the
    // parity oscillation to the true minimum.
    uint32_t lo = 1, hi = window_size;
    while (lo < hi) {
        uint32_t mid = lo + (hi - lo) / 2;
        if (eps_of(mid) <= eps_max)
            hi = mid;
        else
            lo = mid + 1;
    }
    uint32_t best = hi;
    uint32_t m = hi;
    uint32_t misses = 0;
    while (m > 1 && misses < 64) {
        --m;
        if (eps_of(m) <= eps_max) {
            best = m;
            misses = 0;
        } else {
            ++misses;
        }
    }
    return best;
}

WithholdResult withhold_prob(double eps, uint32_t l, WithholdConvention conv,
                             double block_interval_s) {
    if (!(eps >= 0.0 && eps < 1.0)) throw std::invalid_argument("eps must be in [0, 1)");
    // Run lengths start at 0 under the text convention and 1 under the table
    // convention; each distribution sums to 1 from its own floor.
    if (conv == WithholdConvention::Table && l < 1)
        throw std::invalid_argument("table convention needs l >= 1");
    uint32_t power = conv == WithholdConvention::Text ? l : l - 1;
    double tail = std::pow(eps, double(power));  // P(run length >= l)
    WithholdResult r;
    r.probability = tail * (1.0 - eps);
    r.expected_failure_time = tail > 0.0 ? block_interval_s / tail
                                         : std::numeric_limits<double>::infinity();
    return r;
}

double selfish_revenue_crystal(double alpha, double gamma) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must be in [0, 0.5)");
    check_fraction(gamma, "gamma");
    double beta = 1.0 - alpha;
    return alpha * (2.0 * alpha + gamma * beta) / (beta + 2.0 * alpha);
}

double selfish_revenue_nc(double alpha, double gamma) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must be in [0, 0.5)");
    check_fraction(gamma, "gamma");
    double num = alpha * (1 - alpha) * (1 - alpha) * (4.0 * alpha + gamma * (1.0 - 2.0 * alpha)) -
                 alpha * alpha * alpha;
    double den = 1.0 - alpha * (1.0 + (2.0 - alpha) * alpha);
    return num / den;
}

double double_spend_prob_crystal(double alpha, uint32_t k, DoubleSpendConvention conv) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must be in [0, 0.5)");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    double ratio = alpha / (1.0 - alpha);
    uint32_t power = conv == DoubleSpendConvention::Theorem ? k - 1 : k;
    return std::pow(ratio, double(power));
}

double double_spend_prob_nc(double alpha, uint32_t k) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw std::invalid_argument("alpha must be in [0, 0.5)");
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    BigFloat a(alpha), b = 1 - BigFloat(alpha);
    BigFloat sum = 0;
    BigFloat binom = 1;  // C(k+j-1, j), updated by *(k+j)/(j+1)
    for (uint32_t j = 0; j <= k; ++j) {
        if (j > 0) binom = binom * BigFloat(k + j - 1) / BigFloat(j);
        sum += binom * (pow(b, int(k)) * pow(a, int(j)) - pow(b, int(j)) * pow(a, int(k)));
    }
    return (1 - sum).convert_to<double>();
}

double committee_size_tail(uint32_t window_size, double p, uint32_t threshold) {
    check_fraction(p, "p");
    return binomial_tail_ge(window_size, p, threshold);
}

double offline_failure_prob(const CommitteeModel& model, double gamma_off) {
    check_fraction(gamma_off, "gamma_off");
    double beta = 1.0 - model.alpha;
    double q = beta * model.slot_probability() * (1.0 - gamma_off);
    return binomial_cdf(model.window_size, q, model.committee_size / 2);
}

SafetyCheck safety_condition(const SafetyParams& p) {
    if (!(p.slack > 0.0 && p.slack < 1.0)) throw std::invalid_argument("slack must be in (0, 1)");
    SafetyCheck c;
    c.eta = std::exp(-2.0 * p.beta * p.lambda * p.delta);
    c.margin = c.eta * c.eta * p.beta - (1.0 + p.slack) * p.alpha;
    c.holds = c.margin > 0.0;
    c.converged_rate = c.eta * c.eta * p.beta * p.lambda;
    return c;
}

ConfidenceInterval clopper_pearson_95(uint64_t successes, uint64_t trials) {
    using boost::math::binomial_distribution;
    if (trials == 0) throw std::invalid_argument("no trials");
    double n = double(trials), s = double(successes);
    ConfidenceInterval ci;
    ci.lower = binomial_distribution<double>::find_lower_bound_on_p(n, s, 0.025);
    ci.upper = binomial_distribution<double>::find_upper_bound_on_p(n, s, 0.025);
    return ci;
}

}  // namespace crystal::analytics
