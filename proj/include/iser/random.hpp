#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <numeric>
#include <random>
#include <unordered_set>
#include <vector>

namespace iser {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a master seed and a path of indices by chaining
/// splitmix64. The result is a pure function of its inputs, so any unit of
/// work keyed by the same path sees the same stream no matter when, where, or
/// on which thread it runs.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(master);
    for (const std::uint64_t component : path) {
        s = splitmix64(s ^ splitmix64(component + 0x9E3779B97F4A7C15ULL));
    }
    return s;
}

/// Deterministic random stream over std::mt19937_64 (whose output sequence is
/// fully specified by the standard). Distribution sampling is implemented on
/// top of the raw 64-bit output rather than via std::*_distribution, whose
/// algorithms are unspecified and may differ between standard libraries.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : gen_(derive_seed(master_seed, {stream_index})) {}

    explicit RngStream(std::uint64_t raw_seed) : gen_(raw_seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform on the open interval (lo, hi). Falls back to the midpoint in
    /// the rare case rounding lands the draw on an endpoint.
    double uniform_open(double lo, double hi) {
        double u = uniform01();
        while (u == 0.0) u = uniform01();
        const double v = lo + (hi - lo) * u;
        if (v <= lo || v >= hi) return std::midpoint(lo, hi);
        return v;
    }

    /// Standard normal via Box-Muller (cosine branch).
    double normal() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

    /// Unbiased integer on [0, n); n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t lowest_valid = (0 - n) % n;  // 2^64 mod n
        std::uint64_t r = gen_();
        while (r < lowest_valid) r = gen_();
        return r % n;
    }

    /// k distinct indices drawn uniformly from [0, n) without replacement
    /// (Floyd's algorithm, O(k) memory, deterministic order).
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> out;
        out.reserve(k);
        std::unordered_set<std::size_t> seen;
        seen.reserve(k * 2);
        for (std::size_t j = n - k; j < n; ++j) {
            const auto candidate = static_cast<std::size_t>(uniform_int(j + 1));
            if (seen.insert(candidate).second) {
                out.push_back(candidate);
            } else {
                seen.insert(j);
                out.push_back(j);
            }
        }
        return out;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace iser
