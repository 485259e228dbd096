#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace crystal {

// Deterministic simulation RNG (xoshiro256++). The standard library engines
// and distributions are implementation-defined, which would break the
// requirement that a (config, seed) pair replays bit-identically everywhere.
class Rng {
  public:
    explicit Rng(uint64_t seed) { reseed(seed); }
    Rng(uint64_t seed, uint64_t stream) { reseed(splitmix(seed) ^ splitmix(stream * 0x9e3779b97f4a7c15ull + 1)); }

    void reseed(uint64_t seed) {
        // splitmix64 expansion, the recommended seeding for xoshiro.
        uint64_t x = seed;
        for (auto& s : s_) {
            x += 0x9e3779b97f4a7c15ull;
            s = splitmix(x);
        }
    }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n) {
        // Rejection sampling to avoid modulo bias.
        uint64_t limit = n * (UINT64_MAX / n);
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    double exponential(double rate) {
        double u;
        do {
            u = next_double();
        } while (u <= 0.0);
        return -std::log(u) / rate;
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    static uint64_t splitmix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint64_t s_[4];
};

// Exact binomial sampling through a precomputed CDF table; O(log n) per draw
// after O(n) setup. Intended for repeated draws with fixed (n, p).
class BinomialSampler {
  public:
    BinomialSampler() = default;
    BinomialSampler(uint32_t n, double p);

    uint32_t draw(Rng& rng) const;
    uint32_t n() const { return n_; }

  private:
    uint32_t n_ = 0;
    std::vector<double> cdf_;  // cdf_[k] = P(X <= k)
};

}  // namespace crystal
