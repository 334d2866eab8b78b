#ifndef ND_RANDOM_HPP
#define ND_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace nd {

/**
 * Deterministic RNG wrapper around mt19937_64.
 *
 * std::uniform_real_distribution and std::shuffle are implementation-defined,
 * so the draws here are built directly from the raw 64-bit stream; equal seeds
 * give bit-identical sequences on every platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * unit();
    }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    /// Fisher-Yates shuffle with the deterministic index draw.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[index(i)]);
        }
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace nd

#endif
