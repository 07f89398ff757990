#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "lwlp/circle.hpp"
#include "lwlp/errors.hpp"
#include "lwlp/multipliers.hpp"
#include "lwlp/weights.hpp"

namespace lwlp {

/// Corrected function g = phi * f together with the achieved trade-off numbers.
struct CorrectionResult {
    SampledFunction g;
    std::vector<double> phi;  // real mask in [0,1]^N
    double epsilon_achieved;  // (integral of a over {f != g}) / (integral of |f/w| a)
    double bound_achieved;    // max_m sigma(g) / w
    std::size_t iterations;
    bool converged;
    std::string strategy;
};

namespace detail {

inline double pointwise_bound(const SampledFunction& sg, const Weight& w)
{
    double mx = 0.0;
    for (std::size_t m = 0; m < w.size(); ++m)
        mx = std::max(mx, sg[m].real() / w[m]);
    return mx;
}

inline double corrected_epsilon(const std::vector<double>& phi, const SampledFunction& f,
                                const Weight& w, const Weight& a)
{
    const std::size_t n = f.size();
    const double dx = kTwoPi / static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        if (phi[m] < 1.0 && std::abs(f[m]) > 0.0)
            num += dx * a[m];
        den += dx * std::abs(f[m]) / w[m] * a[m];
    }
    return den == 0.0 ? 0.0 : num / den;
}

} // namespace detail

/// Corrects f (with |f| <= w) to g = phi * f so that sigma(g) <= B_target * w
/// pointwise.  "zero-offenders" zeroes samples violating the bound until a
/// fixed point (phi stays 0/1 and zeroed samples stay zeroed, so the loop
/// terminates); "damp" scales phi down continuously.  Nonconvergence is
/// flagged, not thrown.
inline CorrectionResult correct(const SampledFunction& f, const Weight& w, const Weight& a,
                                const Partition& p, double b_target,
                                const std::string& strategy = "zero-offenders")
{
    const std::size_t n = f.size();
    if (w.size() != n || a.size() != n)
        throw LengthMismatch("correct: weight grid size differs");
    if (!(b_target > 0.0))
        throw PreconditionViolated("correct: B_target must be positive");
    for (std::size_t m = 0; m < n; ++m)
        if (std::abs(f[m]) > w[m] * (1.0 + 1e-12))
            throw PreconditionViolated("correct: |f| > w at some sample");
    if (strategy != "zero-offenders" && strategy != "damp")
        throw ConfigError("correct: unknown strategy " + strategy);

    std::vector<double> phi(n, 1.0);
    const std::size_t max_iter = 10 * n;
    std::size_t iter = 0;
    bool converged = false;
    SampledFunction g = f;
    while (iter < max_iter) {
        g = f;
        for (std::size_t m = 0; m < n; ++m)
            g[m] *= phi[m];
        const SampledFunction sg = square_function(g, p);
        bool changed = false;
        bool violated = false;
        for (std::size_t m = 0; m < n; ++m) {
            if (sg[m].real() <= b_target * w[m] * (1.0 + 1e-12))
                continue;
            violated = true;
            if (strategy == "zero-offenders") {
                if (phi[m] > 0.0 && std::abs(f[m]) > 0.0) {
                    phi[m] = 0.0;
                    changed = true;
                }
            } else {
                const double cap = b_target * w[m] / sg[m].real();
                const double next = phi[m] * std::min(1.0, cap);
                if (next < phi[m]) {
                    phi[m] = next;
                    changed = true;
                }
            }
        }
        if (!violated) {
            converged = true;
            break;
        }
        if (!changed)
            break; // offenders remain but nothing left to shrink
        ++iter;
    }

    g = f;
    for (std::size_t m = 0; m < n; ++m)
        g[m] *= phi[m];
    const SampledFunction sg = square_function(g, p);

    CorrectionResult r{std::move(g), std::move(phi), 0.0, 0.0, iter, converged, strategy};
    r.epsilon_achieved = detail::corrected_epsilon(r.phi, f, w, a);
    r.bound_achieved = detail::pointwise_bound(sg, w);
    return r;
}

struct SweepRow {
    double b_target;
    double epsilon;
    double b_achieved;
    std::size_t iterations;
    bool converged;
};

struct SweepCurve {
    std::vector<SweepRow> rows;
    bool fit_done = false;   // least-squares fit of B_achieved against 1 + |log eps|
    double fit_slope = 0.0;
    double fit_residual = 0.0;
};

inline SweepCurve sweep(const SampledFunction& f, const Weight& w, const Weight& a,
                        const Partition& p, const std::vector<double>& b_grid,
                        const std::string& strategy = "zero-offenders")
{
    for (std::size_t i = 1; i < b_grid.size(); ++i)
        if (!(b_grid[i] > b_grid[i - 1]))
            throw Error("sweep: B_grid must be increasing");
    SweepCurve curve;
    for (double b : b_grid) {
        const CorrectionResult r = correct(f, w, a, p, b, strategy);
        curve.rows.push_back({b, r.epsilon_achieved, r.bound_achieved, r.iterations, r.converged});
    }
    // exploratory fit through the origin, over rows that actually corrected
    double sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (const auto& row : curve.rows) {
        if (row.epsilon <= 0.0)
            continue;
        const double x = 1.0 + std::abs(std::log(row.epsilon));
        sxx += x * x;
        sxy += x * row.b_achieved;
        ++used;
    }
    if (used >= 2 && sxx > 0.0) {
        curve.fit_done = true;
        curve.fit_slope = sxy / sxx;
        double res = 0.0;
        for (const auto& row : curve.rows) {
            if (row.epsilon <= 0.0)
                continue;
            const double x = 1.0 + std::abs(std::log(row.epsilon));
            const double e = row.b_achieved - curve.fit_slope * x;
            res += e * e;
        }
        curve.fit_residual = std::sqrt(res);
    }
    return curve;
}

struct VerifyReport {
    double modulus_error;       // max_m | |g| + |f-g| - |f| |
    bool modulus_ok;            // within 1e-14 of the input scale
    double epsilon_recomputed;
    double bound_recomputed;
    bool epsilon_ok;            // matches the stored value to 1e-12
    bool bound_ok;
    bool corrected_measure_ok;  // integral over {f != g} of a <= eps * integral |f/w| a
    bool pass;
};

inline VerifyReport verify_result(const CorrectionResult& r, const SampledFunction& f,
                                  const Weight& w, const Weight& a, const Partition& p)
{
    const std::size_t n = f.size();
    VerifyReport rep{};
    double scale = 0.0;
    for (std::size_t m = 0; m < n; ++m)
        scale = std::max(scale, std::abs(f[m]));
    double err = 0.0;
    for (std::size_t m = 0; m < n; ++m)
        err = std::max(err, std::abs(std::abs(r.g[m]) + std::abs(f[m] - r.g[m]) - std::abs(f[m])));
    rep.modulus_error = err;
    rep.modulus_ok = err <= 1e-14 * std::max(1.0, scale);

    rep.epsilon_recomputed = detail::corrected_epsilon(r.phi, f, w, a);
    rep.bound_recomputed = detail::pointwise_bound(square_function(r.g, p), w);
    rep.epsilon_ok = std::abs(rep.epsilon_recomputed - r.epsilon_achieved)
                     <= 1e-12 * std::max(1.0, r.epsilon_achieved);
    rep.bound_ok = std::abs(rep.bound_recomputed - r.bound_achieved)
                   <= 1e-12 * std::max(1.0, r.bound_achieved);

    const double dx = kTwoPi / static_cast<double>(n);
    double corrected = 0.0, mass = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        if (f[m] != r.g[m])
            corrected += dx * a[m];
        mass += dx * std::abs(f[m]) / w[m] * a[m];
    }
    rep.corrected_measure_ok = corrected <= r.epsilon_achieved * mass + 1e-12 * std::max(1.0, mass);

    rep.pass = rep.modulus_ok && rep.epsilon_ok && rep.bound_ok && rep.corrected_measure_ok;
    return rep;
}

} // namespace lwlp
