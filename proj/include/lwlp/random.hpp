#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "lwlp/circle.hpp"

namespace lwlp {

// All randomness in the project flows through these helpers so that a seed
// pins every artifact bit-for-bit, independent of libstdc++'s distribution
// implementations.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    long integer(long lo, long hi) // inclusive ends
    {
        return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

/// Random trigonometric polynomial: every in-window coefficient uniform in
/// the complex unit square, then synthesized on the grid.
inline SampledFunction random_function(std::size_t n, Rng& rng)
{
    Spectrum s(n);
    for (long f = -static_cast<long>(n) / 2; f < static_cast<long>(n) / 2; ++f)
        s.at(f) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return from_spectrum(s);
}

/// Random function with spectrum confined to [lo, hi].
inline SampledFunction random_band_function(std::size_t n, long lo, long hi, Rng& rng)
{
    Spectrum s(n);
    for (long f = lo; f <= hi; ++f)
        s.at(f) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return from_spectrum(s);
}

/// Random disjoint partition of nonnegative frequencies, mixing short
/// intervals with long ones so both decomposition routes get exercised.
inline Partition random_positive_partition(std::size_t n, Rng& rng, std::size_t max_intervals = 12)
{
    const long top = static_cast<long>(n) / 2 - 1;
    std::vector<FreqInterval> ivs;
    long cursor = rng.integer(0, 4);
    const std::size_t count = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_intervals)));
    for (std::size_t i = 0; i < count && cursor <= top; ++i) {
        long len;
        if (rng.uniform() < 0.5)
            len = rng.integer(1, 11); // short route
        else
            len = rng.integer(12, std::max<long>(12, top / 3));
        const long b = std::min(top, cursor + len - 1);
        ivs.push_back({cursor, b});
        cursor = b + 1 + rng.integer(1, 7);
    }
    return Partition(std::move(ivs));
}

} // namespace lwlp
