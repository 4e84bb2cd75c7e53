// rng.hpp - deterministic seedable RNG (xoshiro256++) with stream derivation
#ifndef KHAM_RNG_HPP
#define KHAM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace kham {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Self-contained generator so that seeded runs are byte-stable across
// standard library versions (std::shuffle/distributions are not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, bound), bound >= 1. Rejection sampling, unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Derives an independent stream from a root seed and a tag path, e.g.
// derive_seed(seed, {stage, attempt}).
inline std::uint64_t derive_seed(std::uint64_t seed,
                                 std::initializer_list<std::uint64_t> tags) {
    std::uint64_t st = seed ^ 0xa0761d6478bd642fULL;
    (void)splitmix64(st);
    for (std::uint64_t t : tags) {
        st ^= t + 0x9e3779b97f4a7c15ULL;
        (void)splitmix64(st);
    }
    return splitmix64(st);
}

}  // namespace kham

#endif  // KHAM_RNG_HPP
