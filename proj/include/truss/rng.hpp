#ifndef TRUSS_RNG_HPP
#define TRUSS_RNG_HPP

#include <cstdint>
#include <random>

namespace truss {

/// Deterministic RNG wrapper. All distributions are implemented by hand so
/// that a given seed yields the same stream on every platform/toolchain
/// (std:: distribution objects are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in {0, 1, ..., n-1}. n must be >= 1.
    std::uint64_t below(std::uint64_t n) {
        auto v = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
        return v >= n ? n - 1 : v;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 gen_;
};

/// Quantized symmetric uniform draw: picks q uniformly from {0,...,n_res} and
/// maps it onto the grid 2*(q/n_res) - 1, giving n_res+1 levels over [-1, 1].
inline double quantized_uniform(Rng& rng, int n_res) {
    const auto q = static_cast<double>(rng.below(static_cast<std::uint64_t>(n_res) + 1));
    return 2.0 * (q / static_cast<double>(n_res)) - 1.0;
}

} // namespace truss

#endif
