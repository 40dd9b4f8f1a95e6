#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace repolabel {

// FNV-1a 64-bit. Used for stable, platform-independent hashing of node paths
// and config strings (std::hash is not specified across implementations).
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

// SplitMix64: tiny fully-specified PRNG, enough for the random baseline.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

// Kahan-compensated accumulator for the aggregation mean contracts.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

// Quantile with linear interpolation between order statistics (the numpy
// default). `p` in [0,1]; `sorted_vals` must be ascending and non-empty.
double quantile_sorted(const std::vector<double>& sorted_vals, double p);

// Lower-cases ASCII letters in place; leaves other bytes alone.
std::string ascii_lower(std::string_view s);

}  // namespace repolabel
