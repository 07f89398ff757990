#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lwlp/errors.hpp"
#include "lwlp/fft.hpp"

namespace lwlp {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform grid point x_m = 2*pi*m/N.
inline double grid_point(std::size_t n, std::size_t m)
{
    return kTwoPi * static_cast<double>(m) / static_cast<double>(n);
}

/// Complex-valued function sampled on the uniform N-point grid of the circle,
/// N a power of two, N >= 8.
class SampledFunction {
public:
    explicit SampledFunction(std::vector<cplx> samples)
        : samples_(std::move(samples))
    {
        if (samples_.size() < 8 || !is_power_of_two(samples_.size()))
            throw Error("SampledFunction: N must be a power of two, N >= 8");
    }

    static SampledFunction zero(std::size_t n)
    {
        return SampledFunction(std::vector<cplx>(n, cplx(0.0, 0.0)));
    }

    template <class Fn>
    static SampledFunction from_values(std::size_t n, Fn&& f)
    {
        std::vector<cplx> s(n);
        for (std::size_t m = 0; m < n; ++m)
            s[m] = f(grid_point(n, m));
        return SampledFunction(std::move(s));
    }

    std::size_t size() const { return samples_.size(); }
    const cplx& operator[](std::size_t m) const { return samples_[m]; }
    cplx& operator[](std::size_t m) { return samples_[m]; }
    const std::vector<cplx>& samples() const { return samples_; }

private:
    std::vector<cplx> samples_;
};

/// Fourier coefficients indexed by integer frequency in [-N/2, N/2).
class Spectrum {
public:
    explicit Spectrum(std::size_t n)
        : n_(n), c_(n, cplx(0.0, 0.0))
    {
        if (n < 8 || !is_power_of_two(n))
            throw Error("Spectrum: N must be a power of two, N >= 8");
    }

    std::size_t size() const { return n_; }
    long min_freq() const { return -static_cast<long>(n_ / 2); }
    long max_freq() const { return static_cast<long>(n_ / 2) - 1; }
    bool in_window(long freq) const { return freq >= min_freq() && freq <= max_freq(); }

    const cplx& at(long freq) const { return c_[index_of(freq)]; }
    cplx& at(long freq) { return c_[index_of(freq)]; }

private:
    std::size_t index_of(long freq) const
    {
        if (!in_window(freq))
            throw Error("Spectrum: frequency outside [-N/2, N/2)");
        return static_cast<std::size_t>(freq + static_cast<long>(n_ / 2));
    }

    std::size_t n_;
    std::vector<cplx> c_;
};

/// Closed integer frequency interval [a, b].
struct FreqInterval {
    long a;
    long b;

    FreqInterval(long a_, long b_) : a(a_), b(b_)
    {
        if (a > b)
            throw Error("FreqInterval: a > b");
    }

    long length() const { return b - a + 1; }
    bool contains(long n) const { return n >= a && n <= b; }
    bool intersects(const FreqInterval& o) const { return a <= o.b && o.a <= b; }

    /// Concentric interval with its length scaled by an odd factor:
    /// [a - s*len, b + s*len] with s = (factor-1)/2.
    FreqInterval dilate(long factor) const
    {
        const long pad = (factor - 1) / 2 * length();
        return FreqInterval(a - pad, b + pad);
    }

    bool operator==(const FreqInterval& o) const { return a == o.a && b == o.b; }
};

/// Ordered list of pairwise disjoint integer frequency intervals.
class Partition {
public:
    explicit Partition(std::vector<FreqInterval> intervals)
        : intervals_(std::move(intervals))
    {
        for (std::size_t i = 0; i < intervals_.size(); ++i)
            for (std::size_t j = i + 1; j < intervals_.size(); ++j)
                if (intervals_[i].intersects(intervals_[j]))
                    throw Error("Partition: intervals overlap");
    }

    std::size_t size() const { return intervals_.size(); }
    const FreqInterval& operator[](std::size_t j) const { return intervals_[j]; }
    const std::vector<FreqInterval>& intervals() const { return intervals_; }

    bool fits_window(std::size_t n) const
    {
        const long lo = -static_cast<long>(n / 2);
        const long hi = static_cast<long>(n / 2) - 1;
        for (const auto& d : intervals_)
            if (d.a < lo || d.b > hi)
                return false;
        return true;
    }

    std::vector<long> left_endpoints() const
    {
        std::vector<long> a;
        a.reserve(intervals_.size());
        for (const auto& d : intervals_)
            a.push_back(d.a);
        return a;
    }

    /// Dyadic classes B_k = { j : length(Delta_j) == 2^k }; intervals with
    /// non-dyadic length are absent from every class.
    std::map<int, std::vector<std::size_t>> dyadic_classes() const
    {
        std::map<int, std::vector<std::size_t>> b;
        for (std::size_t j = 0; j < intervals_.size(); ++j) {
            const long len = intervals_[j].length();
            if (is_power_of_two(static_cast<std::size_t>(len))) {
                int k = 0;
                while ((1L << k) < len)
                    ++k;
                b[k].push_back(j);
            }
        }
        return b;
    }

    /// Full partition of [-N/2, N/2) into dyadic blocks mirrored around zero:
    /// ..., [-4,-3], [-2,-2], [-1,-1], [0,0], [1,1], [2,3], [4,7], ...
    static Partition dyadic(std::size_t n)
    {
        std::vector<FreqInterval> v;
        const long half = static_cast<long>(n / 2);
        v.emplace_back(0, 0);
        for (long lo = 1; lo < half; lo *= 2)
            v.emplace_back(lo, std::min(2 * lo - 1, half - 1));
        for (long lo = 1; lo < half; lo *= 2) {
            // the innermost negative block absorbs -N/2, the window's left edge
            const long hi = 2 * lo >= half ? half : 2 * lo - 1;
            v.emplace_back(-hi, -lo);
        }
        return Partition(std::move(v));
    }

private:
    std::vector<FreqInterval> intervals_;
};

/// Analysis transform under the convention f(x_m) = sum_n c_n exp(i n x_m).
inline Spectrum to_spectrum(const SampledFunction& f)
{
    const std::size_t n = f.size();
    std::vector<cplx> d(f.samples());
    detail::fft_radix2(d, -1);
    Spectrum s(n);
    for (long freq = s.min_freq(); freq <= s.max_freq(); ++freq) {
        const std::size_t k = static_cast<std::size_t>((freq + static_cast<long>(n)) % static_cast<long>(n));
        s.at(freq) = d[k] / static_cast<double>(n);
    }
    return s;
}

inline SampledFunction from_spectrum(const Spectrum& s)
{
    const std::size_t n = s.size();
    std::vector<cplx> d(n, cplx(0.0, 0.0));
    for (long freq = s.min_freq(); freq <= s.max_freq(); ++freq) {
        const std::size_t k = static_cast<std::size_t>((freq + static_cast<long>(n)) % static_cast<long>(n));
        d[k] = s.at(freq);
    }
    detail::fft_radix2(d, +1);
    return SampledFunction(std::move(d));
}

namespace detail {

inline double spectrum_l2(const Spectrum& s)
{
    double acc = 0.0;
    for (long n = s.min_freq(); n <= s.max_freq(); ++n)
        acc += std::norm(s.at(n));
    return std::sqrt(acc);
}

/// Shift every coefficient by +k.  Mass moved outside the window (beyond a
/// relative tolerance) raises SpectrumOverflow; sub-tolerance residue is dropped.
inline Spectrum shift_spectrum(const Spectrum& s, long k, double rel_tol = 1e-12)
{
    Spectrum out(s.size());
    const double scale = spectrum_l2(s);
    for (long n = s.min_freq(); n <= s.max_freq(); ++n) {
        const cplx c = s.at(n);
        const long dst = n + k;
        if (out.in_window(dst)) {
            out.at(dst) = c;
        } else if (std::abs(c) > rel_tol * std::max(scale, 1e-300)) {
            throw SpectrumOverflow("modulate: spectrum shifted outside [-N/2, N/2)");
        }
    }
    return out;
}

} // namespace detail

/// Multiplication by exp(ikx); the spectrum shifts by +k.
inline SampledFunction modulate(const SampledFunction& f, long k)
{
    if (std::labs(k) > static_cast<long>(f.size() / 2))
        throw SpectrumOverflow("modulate: |k| > N/2");
    if (k == 0)
        return f;
    return from_spectrum(detail::shift_spectrum(to_spectrum(f), k));
}

/// ((2*pi/N) sum |f|^p)^(1/p), a quasinorm when 0 < p < 1; max |f| for p = inf.
inline double lp_norm(const SampledFunction& f, double p)
{
    const std::size_t n = f.size();
    if (std::isinf(p)) {
        double mx = 0.0;
        for (std::size_t m = 0; m < n; ++m)
            mx = std::max(mx, std::abs(f[m]));
        return mx;
    }
    if (!(p > 0.0))
        throw Error("lp_norm: p must be positive or infinity");
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m)
        acc += std::pow(std::abs(f[m]), p);
    return std::pow(kTwoPi / static_cast<double>(n) * acc, 1.0 / p);
}

} // namespace lwlp
