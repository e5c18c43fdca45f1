#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace georep {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t splitmix64_next(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic labeled random stream. The generator is xoshiro256** with
// state built by a splitmix64 expansion of (seed XOR fnv1a64(label)), so an
// equal (seed, label) pair replays the same byte stream on every platform
// and thread count. Concurrent tasks must each derive their own substream
// by label; a single stream instance is not shareable.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::string label = "")
        : seed_(seed), label_(std::move(label)) {
        std::uint64_t x = seed_ ^ fnv1a64(label_);
        for (auto& s : state_) s = splitmix64_next(x);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    const std::string& label() const noexcept { return label_; }

    // Child substream; labels compose as "parent/sub".
    RngStream derive(std::string_view sub) const {
        if (label_.empty()) return RngStream(seed_, std::string(sub));
        return RngStream(seed_, label_ + "/" + std::string(sub));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n). Lemire multiply-shift; bias is O(n / 2^64).
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Box-Muller, no spare caching: always consumes exactly two draws.
    double normal(double mean = 0.0, double sd = 1.0) {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Knuth product method, chunked so exp() never underflows.
    long poisson(double mu) {
        long k = 0;
        while (mu > 500.0) {
            k += poisson(500.0);
            mu -= 500.0;
        }
        const double limit = std::exp(-mu);
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t seed_;
    std::string label_;
    std::uint64_t state_[4];
};

// Poisson quantile by CDF walk. Monotone in both mu and u, which callers rely
// on to keep counts nested across parameter sweeps that share the u draw.
inline long poisson_quantile(double mu, double u) {
    if (mu <= 0.0) return 0;
    double p = std::exp(-mu);
    double cum = p;
    long k = 0;
    const long cap = static_cast<long>(mu + 40.0 * std::sqrt(mu) + 50.0);
    while (u >= cum && k < cap) {
        ++k;
        p *= mu / static_cast<double>(k);
        cum += p;
    }
    return k;
}

}  // namespace georep
