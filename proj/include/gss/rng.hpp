#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace gss {

/// Stateless 64-bit mixer (splitmix64 finalizer). Used for seeding and for
/// deriving independent per-replicate streams from (master seed, path).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a over a string, for stable experiment cell tags.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// xoshiro256** generator. Self-contained so that draws are identical across
/// platforms and standard-library versions; std::shuffle and the std
/// distributions are implementation-defined and must not be used where
/// reproducibility matters.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // fill state via splitmix64; all-zero state is impossible
        std::uint64_t x = seed;
        for (auto& w : s_) {
            x = mix64(x);
            w = x;
        }
        s_[0] |= 1ULL;
    }

    /// Independent stream addressed by (master seed, path of tags).
    static Rng stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
        std::uint64_t x = mix64(master);
        for (std::uint64_t t : path) x = mix64(x ^ (t + 0x9E3779B97F4A7C15ULL));
        return Rng(x);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Unbiased (rejection sampling).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        const std::uint64_t rem = (~n + 1) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = next();
            if (x >= rem) return x % n;
        }
    }

    /// Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double uniform(double a, double b) { return a + uniform01() * (b - a); }

    bool bernoulli(double p) { return uniform01() < p; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        if (v.empty()) throw std::invalid_argument("Rng::pick: empty vector");
        return v[below(v.size())];
    }

    /// Fisher-Yates; platform-stable replacement for std::shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace gss
