#ifndef OBCM_RNG_HPP
#define OBCM_RNG_HPP

// Self-contained 64-bit pseudo-random generator (xoshiro256** seeded via
// splitmix64). The standard <random> engines are portable but the standard
// distributions are not; everything here is spelled out so that a seed
// reproduces the same stream on every platform and compiler.

#include <cmath>
#include <cstdint>
#include <string_view>

namespace obcm {

/// 64-bit seed value. Identical seeds yield bit-identical generator output.
struct seed_t {
    std::uint64_t value{0};
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    return mix64(state += 0x9e3779b97f4a7c15ULL);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// FNV-1a, used to fold strings into seed derivations.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// xoshiro256** generator with explicit bounded-integer, double and
/// Poisson sampling. All sampling algorithms are fixed as part of the
/// reproducibility contract.
class rng {
   public:
    explicit rng(seed_t seed) {
        std::uint64_t sm = seed.value;
        for (auto& word : state_) word = detail::splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl(state_[3], 45);
        return result;
    }

    /// Unbiased integer in [0, bound) by rejection sampling; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    /// Poisson(1) sample (Knuth's product-of-uniforms method).
    std::uint32_t next_poisson_one() {
        static const double limit = std::exp(-1.0);
        std::uint32_t k = 0;
        double prod = next_double();
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        return k;
    }

    /// Unbiased Fisher-Yates shuffle.
    template <typename Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

   private:
    std::uint64_t state_[4];
};

/// Derives the child seed for one benchmark cell from the master seed.
/// The derivation is part of the suite reproducibility contract: cells are
/// keyed by (instance index, algorithm name, repetition index) so the same
/// cell always sees the same stream regardless of scheduling.
inline seed_t derive_seed(seed_t master, std::uint64_t instance_index,
                          std::string_view algorithm, std::uint64_t repetition) {
    std::uint64_t h = master.value;
    h = detail::mix64(h ^ detail::fnv1a(algorithm));
    h = detail::mix64(h ^ (instance_index + 0x9e3779b97f4a7c15ULL));
    h = detail::mix64(h ^ (repetition + 0x632be59bd9b4e019ULL));
    return seed_t{h};
}

}  // namespace obcm

#endif
