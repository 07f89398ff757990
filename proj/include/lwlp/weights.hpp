#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lwlp/circle.hpp"
#include "lwlp/errors.hpp"

namespace lwlp {

/// Strictly positive sampled function used as a density.  Class constants are
/// cached per (tag, p); the cache is shared between copies and guarded by a mutex.
class Weight {
public:
    explicit Weight(std::vector<double> values)
        : v_(std::move(values)), cache_(std::make_shared<Cache>())
    {
        if (v_.size() < 8 || !is_power_of_two(v_.size()))
            throw Error("Weight: N must be a power of two, N >= 8");
        for (double x : v_)
            if (!(x > 1e-12))
                throw NonpositiveWeight("Weight: samples must exceed 1e-12");
    }

    static Weight constant(std::size_t n, double c)
    {
        return Weight(std::vector<double>(n, c));
    }

    std::size_t size() const { return v_.size(); }
    double operator[](std::size_t m) const { return v_[m]; }
    const std::vector<double>& values() const { return v_; }

    Weight pointwise_pow(double e) const
    {
        std::vector<double> r(v_.size());
        for (std::size_t m = 0; m < v_.size(); ++m)
            r[m] = std::pow(v_[m], e);
        return Weight(std::move(r));
    }

    double cached(const std::string& tag, double p, const std::function<double()>& compute) const
    {
        const auto key = std::make_pair(tag, p);
        {
            std::lock_guard<std::mutex> lk(cache_->mu);
            auto it = cache_->vals.find(key);
            if (it != cache_->vals.end())
                return it->second;
        }
        const double v = compute();
        std::lock_guard<std::mutex> lk(cache_->mu);
        cache_->vals.emplace(key, v);
        return v;
    }

private:
    struct Cache {
        std::mutex mu;
        std::map<std::pair<std::string, double>, double> vals;
    };

    std::vector<double> v_;
    std::shared_ptr<Cache> cache_;
};

/// Contiguous sample arc, wraparound allowed.
struct Arc {
    std::size_t start;
    std::size_t len;
};

/// Divide two weights pointwise (e.g. u = a/w).
inline Weight weight_ratio(const Weight& num, const Weight& den)
{
    if (num.size() != den.size())
        throw LengthMismatch("weight_ratio: sizes differ");
    std::vector<double> r(num.size());
    for (std::size_t m = 0; m < num.size(); ++m)
        r[m] = num[m] / den[m];
    return Weight(std::move(r));
}

/// w^t a^(1-t) pointwise.
inline Weight mix(const Weight& w, const Weight& a, double t)
{
    if (w.size() != a.size())
        throw LengthMismatch("mix: sizes differ");
    std::vector<double> r(w.size());
    for (std::size_t m = 0; m < w.size(); ++m)
        r[m] = std::pow(w[m], t) * std::pow(a[m], 1.0 - t);
    return Weight(std::move(r));
}

namespace detail {

/// Prefix sums over the doubled sample array; arc averages in O(1).
class ArcAverages {
public:
    explicit ArcAverages(const std::vector<double>& v)
        : n_(v.size()), prefix_(2 * v.size() + 1, 0.0)
    {
        for (std::size_t i = 0; i < 2 * n_; ++i)
            prefix_[i + 1] = prefix_[i] + v[i % n_];
    }

    std::size_t n() const { return n_; }

    double average(std::size_t start, std::size_t len) const
    {
        return (prefix_[start + len] - prefix_[start]) / static_cast<double>(len);
    }

private:
    std::size_t n_;
    std::vector<double> prefix_;
};

/// Sliding-window maximum (or minimum) of v over trailing windows of width L
/// on the circle: out[m] = max_{s in [m-L+1, m]} v[s mod N].
template <class Cmp>
inline std::vector<double> sliding_extreme(const std::vector<double>& v, std::size_t L, Cmp better)
{
    const std::size_t n = v.size();
    std::vector<double> out(n);
    std::deque<std::size_t> dq; // indices into the doubled array, values in "better"-first order
    for (std::size_t t = 0; t < 2 * n; ++t) {
        const double x = v[t % n];
        while (!dq.empty() && !better(v[dq.back() % n], x))
            dq.pop_back();
        dq.push_back(t);
        while (dq.front() + L <= t)
            dq.pop_front();
        if (t >= n)
            out[t - n] = v[dq.front() % n];
    }
    return out;
}

/// Hardy-Littlewood maximal function of a nonnegative sample vector:
/// out[m] = max over arcs containing x_m of the arc average.
inline std::vector<double> hl_maximal(const std::vector<double>& v)
{
    const std::size_t n = v.size();
    const ArcAverages aa(v);
    std::vector<double> out(n, 0.0);
    std::vector<double> avg(n);
    for (std::size_t L = 1; L <= n; ++L) {
        for (std::size_t s = 0; s < n; ++s)
            avg[s] = aa.average(s, L);
        // arc (s, L) covers x_m iff s lies in the trailing window [m-L+1, m]
        const std::vector<double> wmax = sliding_extreme(avg, L, [](double a, double b) { return a > b; });
        for (std::size_t m = 0; m < n; ++m)
            out[m] = std::max(out[m], wmax[m]);
    }
    return out;
}

} // namespace detail

inline SampledFunction maximal_function(const Weight& w)
{
    const std::vector<double> mw = detail::hl_maximal(w.values());
    std::vector<cplx> s(mw.size());
    for (std::size_t m = 0; m < mw.size(); ++m)
        s[m] = cplx(mw[m], 0.0);
    return SampledFunction(std::move(s));
}

/// Muckenhoupt constant: sup over all arcs of (avg w)(avg w^{-1/(p-1)})^{p-1}
/// for p > 1; max M(w)/w for p = 1.
inline double ap_constant(const Weight& w, double p)
{
    if (!(p >= 1.0))
        throw Error("ap_constant: p must be >= 1");
    return w.cached("A", p, [&]() -> double {
        const std::size_t n = w.size();
        if (p == 1.0) {
            const std::vector<double> mw = detail::hl_maximal(w.values());
            double sup = 0.0;
            for (std::size_t m = 0; m < n; ++m)
                sup = std::max(sup, mw[m] / w[m]);
            return sup;
        }
        std::vector<double> dual(n);
        for (std::size_t m = 0; m < n; ++m)
            dual[m] = std::pow(w[m], -1.0 / (p - 1.0));
        const detail::ArcAverages aw(w.values());
        const detail::ArcAverages ad(dual);
        double sup = 0.0;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t L = 1; L <= n; ++L)
                sup = std::max(sup, aw.average(s, L) * std::pow(ad.average(s, L), p - 1.0));
        return sup;
    });
}

/// Kislyakov's alpha_p constant; boundary cases alpha_1: [w^2]_{A_1} and
/// alpha_2: [w^{-1}]_{A_1}.
inline double alpha_p_constant(const Weight& w, double p)
{
    if (!(p >= 1.0 && p <= 2.0))
        throw Error("alpha_p_constant: p must lie in [1,2]");
    return w.cached("alpha", p, [&]() -> double {
        const std::size_t n = w.size();
        if (p == 1.0)
            return ap_constant(w.pointwise_pow(2.0), 1.0);
        if (p == 2.0)
            return ap_constant(w.pointwise_pow(-1.0), 1.0);
        std::vector<double> neg(n), pos(n);
        for (std::size_t m = 0; m < n; ++m) {
            neg[m] = std::pow(w[m], -1.0 / (p - 1.0));
            pos[m] = std::pow(w[m], 2.0 / (2.0 - p));
        }
        const detail::ArcAverages an(neg);
        const detail::ArcAverages ap_(pos);
        double sup = 0.0;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t L = 1; L <= n; ++L)
                sup = std::max(sup, std::pow(an.average(s, L), p - 1.0)
                                        * std::pow(ap_.average(s, L), (2.0 - p) / 2.0));
        return sup;
    });
}

struct A1AlphaReport {
    double a1;
    double alpha1;
    bool pass;
};

/// Checks [w]_{A_1} <= sqrt([w]_{alpha_1}) on the grid (the Cauchy-Schwarz route).
inline A1AlphaReport a1_implied_by_alpha1(const Weight& w)
{
    A1AlphaReport r{};
    r.a1 = ap_constant(w, 1.0);
    r.alpha1 = alpha_p_constant(w, 1.0);
    r.pass = r.a1 <= std::sqrt(r.alpha1) * (1.0 + 1e-12);
    return r;
}

inline double weighted_lp_norm(const SampledFunction& f, double p, const Weight& w)
{
    if (f.size() != w.size())
        throw LengthMismatch("weighted_lp_norm: sizes differ");
    if (!(p > 0.0))
        throw Error("weighted_lp_norm: p must be positive");
    const std::size_t n = f.size();
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m)
        acc += std::pow(std::abs(f[m]), p) * w[m];
    return std::pow(kTwoPi / static_cast<double>(n) * acc, 1.0 / p);
}

/// Weak-L^{1,inf}(a) quasinorm: sup_t t * a({|f| > t}), attained just below a
/// sample magnitude; computed by one sorted sweep.
inline double weak_quasinorm(const SampledFunction& f, const Weight& a)
{
    if (f.size() != a.size())
        throw LengthMismatch("weak_quasinorm: sizes differ");
    const std::size_t n = f.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(f[i]) > std::abs(f[j]);
    });
    const double dx = kTwoPi / static_cast<double>(n);
    double measure = 0.0;
    double sup = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        measure += dx * a[idx[r]];
        // threshold just below |f(idx[r])|: the superlevel set has measure `measure`
        // unless the next magnitude ties, in which case a later r dominates anyway.
        sup = std::max(sup, std::abs(f[idx[r]]) * measure);
    }
    return sup;
}

// ---------------------------------------------------------------------------
// Weight catalog
// ---------------------------------------------------------------------------

/// Catalog entry: a named weight family constructible at any resolution.
struct WeightSpec {
    std::string name;
    std::map<std::string, double> params;

    double param(const std::string& key, double fallback) const
    {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }
};

/// Parses "name:key=value,key=value" (the CLI addressing form).
inline WeightSpec parse_weight_spec(const std::string& text)
{
    WeightSpec spec;
    const auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos)
                throw ConfigError("weight spec: expected key=value in '" + item + "'");
            spec.params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        }
    }
    return spec;
}

inline double circle_distance(double x, double x0)
{
    double d = std::fmod(std::abs(x - x0), kTwoPi);
    return std::min(d, kTwoPi - d);
}

inline Weight build_weight(const WeightSpec& spec, std::size_t n)
{
    if (spec.name == "unit")
        return Weight::constant(n, 1.0);
    if (spec.name == "power") {
        // dist(x, x0)^delta with the distance clipped below at grid scale, so the
        // A_p constant keeps its N-asymptotics while the samples stay positive.
        const double delta = spec.param("delta", -0.4);
        const double x0 = spec.param("x0", 0.0);
        const double clip = kTwoPi / static_cast<double>(n);
        std::vector<double> v(n);
        for (std::size_t m = 0; m < n; ++m)
            v[m] = std::pow(std::max(circle_distance(grid_point(n, m), x0), clip), delta);
        return Weight(std::move(v));
    }
    if (spec.name == "cosine") {
        const double c = spec.param("c", 2.0);
        if (!(c > 1.0))
            throw ConfigError("cosine weight: c must exceed 1");
        std::vector<double> v(n);
        for (std::size_t m = 0; m < n; ++m)
            v[m] = c + std::cos(grid_point(n, m));
        return Weight(std::move(v));
    }
    if (spec.name == "step") {
        const double lo = spec.param("lo", 1.0);
        const double hi = spec.param("hi", 4.0);
        const double frac = spec.param("frac", 0.5);
        std::vector<double> v(n);
        for (std::size_t m = 0; m < n; ++m)
            v[m] = (static_cast<double>(m) < frac * static_cast<double>(n)) ? hi : lo;
        return Weight(std::move(v));
    }
    if (spec.name == "maximal-power") {
        // w = (M chi_arc)^gamma; gamma in (0, 1/2) keeps w^2 = (M chi)^{2 gamma} in A_1.
        const double gamma = spec.param("gamma", 0.4);
        const double arc_start = spec.param("arc_start", 0.0);
        const double arc_len = spec.param("arc_len", 0.25);
        std::vector<double> ind(n, 0.0);
        const std::size_t s = static_cast<std::size_t>(arc_start * static_cast<double>(n)) % n;
        const std::size_t L = std::max<std::size_t>(1, static_cast<std::size_t>(arc_len * static_cast<double>(n)));
        for (std::size_t i = 0; i < L && i < n; ++i)
            ind[(s + i) % n] = 1.0;
        std::vector<double> mf = detail::hl_maximal(ind);
        for (double& x : mf)
            x = std::pow(x, gamma);
        return Weight(std::move(mf));
    }
    throw UnknownCatalogEntry("unknown weight catalog entry: " + spec.name);
}

/// Operational A_infty test: [w]_{A_p} below `cap` for some p in a fixed grid.
inline bool a_infinity_certified(const Weight& w, double cap = 50.0)
{
    for (double p : {1.0, 1.25, 1.5, 2.0, 4.0, 8.0})
        if (ap_constant(w, p) <= cap)
            return true;
    return false;
}

// ---------------------------------------------------------------------------
// Lemma probes and certificates
// ---------------------------------------------------------------------------

struct MixProbeRow {
    double t;
    double r;            // tq, the alpha index probed
    double constant_lo;  // alpha_r constant at N
    double constant_hi;  // alpha_r constant at 2N
    double growth;       // constant_hi / constant_lo
};

struct MixProbeReport {
    double q;
    std::size_t n_lo;
    std::size_t n_hi;
    std::vector<MixProbeRow> rows;
};

/// Two-resolution probe of the weight-mixing lemmas: the alpha_{tq} constant of
/// w^t a^{1-t} is computed at N and 2N and the growth factor reported.
/// t < 1 probes the first lemma, t > 1 the second; membership is read off as
/// stability of the constant across resolutions.
inline MixProbeReport mix_probe(const WeightSpec& wspec, const WeightSpec& aspec,
                                double q, const std::vector<double>& t_grid, std::size_t n)
{
    MixProbeReport rep;
    rep.q = q;
    rep.n_lo = n;
    rep.n_hi = 2 * n;
    const Weight w_lo = build_weight(wspec, n);
    const Weight a_lo = build_weight(aspec, n);
    const Weight w_hi = build_weight(wspec, 2 * n);
    const Weight a_hi = build_weight(aspec, 2 * n);
    for (double t : t_grid) {
        const double r = t * q;
        if (!(r >= 1.0 && r <= 2.0))
            throw ConfigError("mix_probe: tq must lie in [1,2]");
        MixProbeRow row{};
        row.t = t;
        row.r = r;
        row.constant_lo = alpha_p_constant(mix(w_lo, a_lo, t), r);
        row.constant_hi = alpha_p_constant(mix(w_hi, a_hi, t), r);
        row.growth = row.constant_hi / row.constant_lo;
        rep.rows.push_back(row);
    }
    return rep;
}

struct ReverseHolderRow {
    double s;
    double constant; // sup over arcs of (avg w^s)^{1/s} / (avg w)
};

struct ReverseHolderReport {
    std::vector<ReverseHolderRow> rows;
    double best_s;        // largest grid s whose constant stays below the cap
    double best_constant; // its constant; 0 if no s qualifies
};

inline ReverseHolderReport reverse_holder_probe(const Weight& w,
                                                const std::vector<double>& s_grid,
                                                double cap = 8.0)
{
    const std::size_t n = w.size();
    ReverseHolderReport rep{};
    rep.best_s = 0.0;
    rep.best_constant = 0.0;
    const detail::ArcAverages aw(w.values());
    for (double s : s_grid) {
        if (!(s > 1.0))
            throw Error("reverse_holder_probe: s must exceed 1");
        std::vector<double> ws(n);
        for (std::size_t m = 0; m < n; ++m)
            ws[m] = std::pow(w[m], s);
        const detail::ArcAverages as(ws);
        double sup = 0.0;
        for (std::size_t st = 0; st < n; ++st)
            for (std::size_t L = 1; L <= n; ++L)
                sup = std::max(sup, std::pow(as.average(st, L), 1.0 / s) / aw.average(st, L));
        rep.rows.push_back({s, sup});
        if (sup <= cap && s > rep.best_s) {
            rep.best_s = s;
            rep.best_constant = sup;
        }
    }
    return rep;
}

struct Lemma4Report {
    double p;
    double c;
    double a;
    double b;
    bool identities_ok;   // b == 2c and (1-a)/c == 2, to 1e-12
    double alpha_p;
    double a1;
    double worst_margin;  // min over arcs of RHS - LHS in the per-arc inequality
    bool pass;
};

/// Per-arc certificate of the alpha_p & A_1 => alpha_1 implication:
/// (avg_I w^2)^c <= [w]_{alpha_p} [w]_{A_1} min_I(w^b) for every arc I,
/// with c, a, b given by the closed-form exponent bookkeeping.
inline Lemma4Report lemma4_certificate(const Weight& w, double p)
{
    if (!(p > 1.0 && p < 2.0))
        throw Error("lemma4_certificate: p must lie in (1,2)");
    Lemma4Report rep{};
    rep.p = p;
    const double ratio = (p - 1.0) / (p - 1.0 + (2.0 - p) / 2.0);
    rep.c = 1.0 / (ratio + 2.0);
    rep.a = ratio * rep.c;
    rep.b = 1.0 - rep.a;
    rep.identities_ok = std::abs(rep.b - 2.0 * rep.c) <= 1e-12
                     && std::abs((1.0 - rep.a) / rep.c - 2.0) <= 1e-12;
    rep.alpha_p = alpha_p_constant(w, p);
    rep.a1 = ap_constant(w, 1.0);

    const std::size_t n = w.size();
    std::vector<double> sq(n);
    for (std::size_t m = 0; m < n; ++m)
        sq[m] = w[m] * w[m];
    const detail::ArcAverages asq(sq);
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t L = 1; L <= n; ++L) {
        const std::vector<double> wmin =
            detail::sliding_extreme(w.values(), L, [](double x, double y) { return x < y; });
        for (std::size_t m = 0; m < n; ++m) {
            // trailing window [m-L+1, m] is the arc starting at (m-L+1) mod N
            const std::size_t s = (m + n - (L - 1)) % n;
            const double lhs = std::pow(asq.average(s, L), rep.c);
            const double rhs = rep.alpha_p * rep.a1 * std::pow(wmin[m], rep.b);
            worst = std::min(worst, rhs - lhs);
        }
    }
    rep.worst_margin = worst;
    rep.pass = rep.identities_ok && worst >= -1e-12 * std::max(1.0, rep.alpha_p * rep.a1);
    return rep;
}

} // namespace lwlp
