#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace srspmd {

/* mt19937_64 output is pinned by the standard; the mapping helpers below
 * avoid std distributions, whose algorithms differ between standard
 * libraries. Identical seeds therefore give identical draws everywhere. */
using Rng = std::mt19937_64;

/* uniform in [0,1) with 53 random bits */
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/* uniform integer in [0, n), n >= 1; rejection keeps it unbiased */
inline uint64_t uniform_index(Rng& rng, uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
        uint64_t x = rng();
        if (x < limit) return x % n;
    }
}

/* draws an index proportional to weights via the cumulative sums;
 * cumulative must be non-decreasing with positive total */
inline size_t pick_weighted(Rng& rng, const std::vector<double>& cumulative) {
    double total = cumulative.back();
    double u = uniform_double(rng) * total;
    size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (cumulative[mid] > u) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

}  // namespace srspmd
