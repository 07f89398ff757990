#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "lwlp/errors.hpp"

namespace lwlp {

using cplx = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// In-place iterative radix-2 transform.
// sign = +1: X[k] = sum_m x[m] exp(+2*pi*i*k*m/N)  (synthesis direction, unnormalized)
// sign = -1: the conjugate transform (analysis direction, unnormalized).
inline void fft_radix2(std::vector<cplx>& a, int sign)
{
    const std::size_t n = a.size();
    if (!is_power_of_two(n))
        throw Error("fft: length must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    const double pi = 3.14159265358979323846264338327950288;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

} // namespace detail

} // namespace lwlp
