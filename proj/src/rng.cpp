#include "imbtext/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace imbtext {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace

std::uint64_t Rng::next_u64() { return splitmix64(state_); }

double Rng::uniform() {
    // 53 random bits -> [0, 1)
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::uniform_index(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    // rejection sampling to avoid modulo bias
    std::uint64_t limit = ~0ull - (~0ull % n);
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return std::size_t(v % n);
}

double Rng::normal(double mean, double sd) {
    // Box-Muller; one value per call keeps the stream position predictable.
    double u1, u2;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(2.0 * std::numbers::pi * u2);
}

long Rng::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
    if (mean == 0.0) return 0;
    // Split large means so exp(-mean) never underflows.
    if (mean > 60.0) {
        double half = mean / 2.0;
        return poisson(half) + poisson(mean - half);
    }
    double limit = std::exp(-mean);
    long k = 0;
    double prod = uniform();
    while (prod > limit) {
        ++k;
        prod *= uniform();
    }
    return k;
}

std::size_t Rng::discrete(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("discrete: negative weight");
        total += w;
    }
    if (total <= 0.0) throw std::invalid_argument("discrete: all weights zero");
    double target = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (target < acc) return i;
    }
    // rounding fell past the end; return last positive-weight index
    for (std::size_t i = weights.size(); i-- > 0;)
        if (weights[i] > 0.0) return i;
    return weights.size() - 1;
}

void Rng::shuffle(std::vector<std::size_t>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_index(i);
        std::swap(v[i - 1], v[j]);
    }
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t x = base ^ (0x9e3779b97f4a7c15ull + (tag << 6) + (tag >> 2));
    splitmix64(x);
    std::uint64_t y = x ^ tag;
    return splitmix64(y);
}

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    return derive_seed(base, fnv1a(tag));
}

} // namespace imbtext
