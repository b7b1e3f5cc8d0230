#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace imbtext {

// Deterministic PRNG used everywhere in the library. All distributions are
// hand-rolled on top of the raw 64-bit stream so that seeded results are
// reproducible across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64();

    // Uniform on [0, 1).
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in [0, n), n >= 1.
    std::size_t uniform_index(std::size_t n);

    double normal(double mean = 0.0, double sd = 1.0);
    // Poisson draw; exact (Knuth, with halving for large mean).
    long poisson(double mean);
    // Index draw from an unnormalized non-negative weight vector.
    std::size_t discrete(std::span<const double> weights);

    // Fisher-Yates shuffle of an index vector.
    void shuffle(std::vector<std::size_t>& v);

private:
    std::uint64_t state_;
};

// Stable seed derivation: mixes tag values/strings into a base seed so that
// independent work units (trees, replicates, cells) get decorrelated and
// reproducible streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, Rest... rest);
template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, Rest... rest);

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag, Rest... rest) {
    return derive_seed(derive_seed(base, tag), rest...);
}
template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, Rest... rest) {
    return derive_seed(derive_seed(base, tag), rest...);
}

} // namespace imbtext
