#include "crystal/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace crystal {

BinomialSampler::BinomialSampler(uint32_t n, double p) : n_(n) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial p out of range");
    cdf_.resize(n + 1);
    // pmf recurrence in log space to survive large n, then cumulate.
    // pmf(k+1)/pmf(k) = (n-k)/(k+1) * p/(1-p)
    if (p == 0.0) {
        std::fill(cdf_.begin(), cdf_.end(), 1.0);
        return;
    }
    if (p == 1.0) {
        std::fill(cdf_.begin(), cdf_.end(), 0.0);
        cdf_[n] = 1.0;
        return;
    }
    std::vector<double> logpmf(n + 1);
    double lp = std::log(p), lq = std::log1p(-p);
    logpmf[0] = n * lq;
    for (uint32_t k = 0; k < n; ++k)
        logpmf[k + 1] = logpmf[k] + std::log(double(n - k)) - std::log(double(k + 1)) + lp - lq;
    // Normalize against the mode for numerical headroom.
    double mx = *std::max_element(logpmf.begin(), logpmf.end());
    double sum = 0.0;
    std::vector<double> pmf(n + 1);
    for (uint32_t k = 0; k <= n; ++k) {
        pmf[k] = std::exp(logpmf[k] - mx);
        sum += pmf[k];
    }
    double acc = 0.0;
    for (uint32_t k = 0; k <= n; ++k) {
        acc += pmf[k] / sum;
        cdf_[k] = acc;
    }
    cdf_[n] = 1.0;
}

uint32_t BinomialSampler::draw(Rng& rng) const {
    double u = rng.next_double();
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) return n_;
    return static_cast<uint32_t>(it - cdf_.begin());
}

}  // namespace crystal
