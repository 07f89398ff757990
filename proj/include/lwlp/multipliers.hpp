#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lwlp/circle.hpp"
#include "lwlp/errors.hpp"
#include "lwlp/weights.hpp"

namespace lwlp {

/// Finite ordered list of sampled functions sharing one grid, aligned with a
/// Partition when one is attached.
class FunctionSequence {
public:
    explicit FunctionSequence(std::vector<SampledFunction> entries)
        : entries_(std::move(entries))
    {
        for (const auto& f : entries_)
            if (f.size() != entries_.front().size())
                throw LengthMismatch("FunctionSequence: mixed grid sizes");
    }

    std::size_t size() const { return entries_.size(); }
    std::size_t grid_size() const { return entries_.empty() ? 0 : entries_.front().size(); }
    const SampledFunction& operator[](std::size_t j) const { return entries_[j]; }
    const std::vector<SampledFunction>& entries() const { return entries_; }

private:
    std::vector<SampledFunction> entries_;
};

/// M_Delta: zero every Fourier coefficient outside [a, b].
inline SampledFunction apply_multiplier(const SampledFunction& f, const FreqInterval& delta)
{
    Spectrum s = to_spectrum(f);
    if (delta.a < s.min_freq() || delta.b > s.max_freq())
        throw IntervalOutOfWindow("apply_multiplier: interval outside [-N/2, N/2)");
    Spectrum out(s.size());
    for (long n = delta.a; n <= delta.b; ++n)
        out.at(n) = s.at(n);
    return from_spectrum(out);
}

/// P_+: keep coefficients with n >= 0.
inline SampledFunction riesz_projection(const SampledFunction& f)
{
    Spectrum s = to_spectrum(f);
    Spectrum out(s.size());
    for (long n = 0; n <= s.max_freq(); ++n)
        out.at(n) = s.at(n);
    return from_spectrum(out);
}

/// sigma f = (sum_j |M_{Delta_j} f|^2)^{1/2}, real and nonnegative.
inline SampledFunction square_function(const SampledFunction& f, const Partition& p)
{
    const std::size_t n = f.size();
    if (!p.fits_window(n))
        throw IntervalOutOfWindow("square_function: partition outside the window");
    std::vector<double> acc(n, 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const SampledFunction piece = apply_multiplier(f, p[j]);
        for (std::size_t m = 0; m < n; ++m)
            acc[m] += std::norm(piece[m]);
    }
    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = cplx(std::sqrt(acc[m]), 0.0);
    return SampledFunction(std::move(out));
}

/// T({f_j}) = sum_j M_{Delta_j} f_j, summed in partition order.
inline SampledFunction op_T(const FunctionSequence& fs, const Partition& p)
{
    if (fs.size() != p.size())
        throw LengthMismatch("op_T: |fs| != |P|");
    const std::size_t n = fs.grid_size();
    SampledFunction acc = SampledFunction::zero(n);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const SampledFunction piece = apply_multiplier(fs[j], p[j]);
        for (std::size_t m = 0; m < n; ++m)
            acc[m] += piece[m];
    }
    return acc;
}

/// T_u({f_j}) = u^{-1} T({u f_j}).
inline SampledFunction op_T_u(const FunctionSequence& fs, const Partition& p, const Weight& u)
{
    if (fs.size() != p.size())
        throw LengthMismatch("op_T_u: |fs| != |P|");
    const std::size_t n = fs.grid_size();
    if (u.size() != n)
        throw LengthMismatch("op_T_u: weight grid size differs");
    std::vector<SampledFunction> scaled;
    scaled.reserve(fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        std::vector<cplx> s(n);
        for (std::size_t m = 0; m < n; ++m)
            s[m] = u[m] * fs[j][m];
        scaled.emplace_back(std::move(s));
    }
    SampledFunction out = op_T(FunctionSequence(std::move(scaled)), p);
    for (std::size_t m = 0; m < n; ++m)
        out[m] /= u[m];
    return out;
}

/// P_u({f_j}): entry j is u^{-1} M_{Delta_j}(u f_j).
inline FunctionSequence op_P_u(const FunctionSequence& fs, const Partition& p, const Weight& u)
{
    if (fs.size() != p.size())
        throw LengthMismatch("op_P_u: |fs| != |P|");
    const std::size_t n = fs.grid_size();
    if (u.size() != n)
        throw LengthMismatch("op_P_u: weight grid size differs");
    std::vector<SampledFunction> out;
    out.reserve(fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) {
        std::vector<cplx> s(n);
        for (std::size_t m = 0; m < n; ++m)
            s[m] = u[m] * fs[j][m];
        SampledFunction piece = apply_multiplier(SampledFunction(std::move(s)), p[j]);
        for (std::size_t m = 0; m < n; ++m)
            piece[m] /= u[m];
        out.push_back(std::move(piece));
    }
    return FunctionSequence(std::move(out));
}

/// ||T_u(fs)||_{L^{1,inf}(a)} / ||(sum_j |f_j|^2)^{1/2}||_{L^1(a)} with u = a/w.
/// A vanishing denominator with vanishing numerator returns 0.
inline double theorem2_ratio(const FunctionSequence& fs, const Partition& p,
                             const Weight& a, const Weight& w)
{
    const std::size_t n = fs.grid_size();
    const Weight u = weight_ratio(a, w);
    const SampledFunction t = op_T_u(fs, p, u);
    const double numer = weak_quasinorm(t, a);

    std::vector<cplx> sq(n, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < fs.size(); ++j)
        for (std::size_t m = 0; m < n; ++m)
            sq[m] += std::norm(fs[j][m]);
    for (std::size_t m = 0; m < n; ++m)
        sq[m] = cplx(std::sqrt(sq[m].real()), 0.0);
    const double denom = weighted_lp_norm(SampledFunction(std::move(sq)), 1.0, a);

    if (denom == 0.0) {
        if (numer == 0.0)
            return 0.0;
        throw ZeroDenominator("theorem2_ratio: zero denominator with nonzero numerator");
    }
    return numer / denom;
}

} // namespace lwlp
