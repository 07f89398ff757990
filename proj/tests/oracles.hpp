#pragma once

// Brute-force reference implementations.  Everything here is O(N^2) or worse
// on purpose: no FFT, no prefix sums, no sliding windows.  The production code
// must agree with these.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "lwlp/circle.hpp"
#include "lwlp/weights.hpp"

namespace oracle {

using lwlp::cplx;
using lwlp::kTwoPi;

/// Direct-summation analysis: c_n = (1/N) sum_m f(x_m) e^{-i n x_m}.
inline std::vector<cplx> dft_coeffs(const lwlp::SampledFunction& f)
{
    const std::size_t n = f.size();
    std::vector<cplx> c(n);
    for (long freq = -static_cast<long>(n) / 2; freq < static_cast<long>(n) / 2; ++freq) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double phase = -static_cast<double>(freq) * lwlp::grid_point(n, m);
            acc += f[m] * cplx(std::cos(phase), std::sin(phase));
        }
        c[static_cast<std::size_t>(freq + static_cast<long>(n) / 2)] = acc / static_cast<double>(n);
    }
    return c; // index k holds frequency k - N/2
}

/// Direct-summation synthesis from the coefficient layout above.
inline lwlp::SampledFunction synthesize(const std::vector<cplx>& c)
{
    const std::size_t n = c.size();
    std::vector<cplx> v(n, cplx(0.0, 0.0));
    for (std::size_t m = 0; m < n; ++m)
        for (std::size_t k = 0; k < n; ++k) {
            const long freq = static_cast<long>(k) - static_cast<long>(n) / 2;
            const double phase = static_cast<double>(freq) * lwlp::grid_point(n, m);
            v[m] += c[k] * cplx(std::cos(phase), std::sin(phase));
        }
    return lwlp::SampledFunction(std::move(v));
}

/// Multiplier by direct summation: analyze, mask, synthesize.
inline lwlp::SampledFunction multiplier(const lwlp::SampledFunction& f, const lwlp::FreqInterval& d)
{
    const std::size_t n = f.size();
    std::vector<cplx> c = dft_coeffs(f);
    for (std::size_t k = 0; k < n; ++k) {
        const long freq = static_cast<long>(k) - static_cast<long>(n) / 2;
        if (!d.contains(freq))
            c[k] = cplx(0.0, 0.0);
    }
    return synthesize(c);
}

/// A_p constant by literal enumeration of every arc.
inline double ap_constant(const lwlp::Weight& w, double p)
{
    const std::size_t n = w.size();
    double sup = 0.0;
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t len = 1; len <= n; ++len) {
            double avg_w = 0.0, avg_dual = 0.0, min_w = w[s];
            for (std::size_t i = 0; i < len; ++i) {
                const double x = w[(s + i) % n];
                avg_w += x;
                min_w = std::min(min_w, x);
                if (p > 1.0)
                    avg_dual += std::pow(x, -1.0 / (p - 1.0));
            }
            avg_w /= static_cast<double>(len);
            double val;
            if (p == 1.0)
                val = avg_w / min_w; // sup over arcs of avg/min equals max Mw/w
            else
                val = avg_w * std::pow(avg_dual / static_cast<double>(len), p - 1.0);
            sup = std::max(sup, val);
        }
    return sup;
}

/// Hardy-Littlewood maximal function by literal arc enumeration.
inline std::vector<double> hl_maximal(const std::vector<double>& v)
{
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t len = 1; len <= n; ++len) {
            double avg = 0.0;
            for (std::size_t i = 0; i < len; ++i)
                avg += v[(s + i) % n];
            avg /= static_cast<double>(len);
            for (std::size_t i = 0; i < len; ++i)
                out[(s + i) % n] = std::max(out[(s + i) % n], avg);
        }
    return out;
}

/// Weak quasinorm by enumerating thresholds at every sample magnitude.
inline double weak_quasinorm(const lwlp::SampledFunction& f, const lwlp::Weight& a)
{
    const std::size_t n = f.size();
    const double dx = kTwoPi / static_cast<double>(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::abs(f[i]);
        if (t == 0.0)
            continue;
        double measure = 0.0; // a({ |f| >= t }) — the superlevel set just below t
        for (std::size_t m = 0; m < n; ++m)
            if (std::abs(f[m]) >= t)
                measure += dx * a[m];
        sup = std::max(sup, t * measure);
    }
    return sup;
}

} // namespace oracle
