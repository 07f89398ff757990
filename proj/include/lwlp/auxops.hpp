#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lwlp/circle.hpp"
#include "lwlp/errors.hpp"
#include "lwlp/multipliers.hpp"
#include "lwlp/weights.hpp"

namespace lwlp {

namespace detail {

/// C^2 quintic step, s(0)=0, s(1)=1, vanishing first and second derivatives
/// at both ends.
inline double smoothstep5(double t)
{
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

} // namespace detail

/// Spectral bump family phi_m: coefficients eta(n / 2^m) with eta a C^2
/// piecewise-quintic profile supported in [0,1], identically 1 on
/// [(1-xi)/2, (1+xi)/2].  The pass-band value is the literal constant 1.
class PhiFamily {
public:
    PhiFamily(int m_max, double xi)
        : m_max_(m_max), xi_(xi)
    {
        if (!(xi > 0.0 && xi < 1.0))
            throw Error("PhiFamily: xi must lie in (0,1)");
        if (m_max < 1)
            throw Error("PhiFamily: m_max must be >= 1");
    }

    int m_max() const { return m_max_; }
    double xi() const { return xi_; }

    double coeff(int m, long n) const
    {
        const double scale = static_cast<double>(1L << m);
        if (n <= 0 || n >= static_cast<long>(scale))
            return 0.0; // profile vanishes at and beyond both support endpoints
        const double y = static_cast<double>(n) / scale;
        const double lo = (1.0 - xi_) / 2.0;
        const double hi = (1.0 + xi_) / 2.0;
        if (y >= lo && y <= hi)
            return 1.0;
        if (y < lo)
            return detail::smoothstep5(y / lo);
        return detail::smoothstep5((1.0 - y) / (1.0 - hi));
    }

    /// Integer frequencies where the coefficient is the exact constant 1.
    std::pair<long, long> passband(int m) const
    {
        const double half = static_cast<double>(1L << (m - 1));
        return {static_cast<long>(std::ceil((1.0 - xi_) * half)),
                static_cast<long>(std::floor((1.0 + xi_) * half))};
    }

    Spectrum spectrum(int m, std::size_t n) const
    {
        if (m > m_max_)
            throw Error("PhiFamily: m exceeds m_max");
        Spectrum s(n);
        if ((1L << m) > s.max_freq())
            throw WindowOverflow("PhiFamily: 2^m outside the frequency window");
        for (long f = 0; f <= (1L << m); ++f)
            s.at(f) = cplx(coeff(m, f), 0.0);
        return s;
    }

private:
    int m_max_;
    double xi_;
};

inline PhiFamily build_phi_family(int m_max, double xi)
{
    return PhiFamily(m_max, xi);
}

/// Fitted constant for the (r,u) = (0,2) decay bound
/// max_sigma |phi_m(e^{i sigma})| sigma^2 <= C 2^{-m}.
inline double phi_decay_fit(const PhiFamily& phi, int m, std::size_t n_eval)
{
    const SampledFunction p = from_spectrum(phi.spectrum(m, n_eval));
    double mx = 0.0;
    for (std::size_t i = 1; i < n_eval; ++i) {
        double sigma = grid_point(n_eval, i);
        if (sigma > kPi)
            sigma -= kTwoPi;
        mx = std::max(mx, std::abs(p[i]) * sigma * sigma);
    }
    return mx * static_cast<double>(1L << m);
}

/// Log-scale triangular hat family beta_j, j >= 1: nonnegative coefficients,
/// spec beta_j inside [A^{j-1}, A^{j+1}], and sum_j beta_j(n) = 1 exactly for
/// every integer n in [1, n_max].  Exactness comes from assigning the two
/// alive hats the values d and 1-d of one shared fractional coordinate.
class BetaFamily {
public:
    BetaFamily(double a, long n_max)
        : a_(a), log_a_(std::log(a)), n_max_(n_max)
    {
        if (!(a > 1.0))
            throw Error("BetaFamily: A must exceed 1");
        if (n_max < 1)
            throw Error("BetaFamily: empty range");
        j_max_ = 1;
        while (std::pow(a_, static_cast<double>(j_max_)) < static_cast<double>(n_max))
            ++j_max_;
        ++j_max_;
    }

    double ratio() const { return a_; }
    long covered_max() const { return n_max_; }
    int j_max() const { return j_max_; }

    double coeff(int j, long n) const
    {
        if (n < 1 || n > n_max_ || j < 1 || j > j_max_)
            return 0.0;
        const double ell = std::log(static_cast<double>(n)) / log_a_;
        const long jf = static_cast<long>(std::floor(ell));
        if (jf <= 0)
            return j == 1 ? 1.0 : 0.0; // beta_1 is flat 1 below A
        const double d = ell - static_cast<double>(jf);
        if (j == jf)
            return 1.0 - d;
        if (j == jf + 1)
            return d;
        return 0.0;
    }

    /// Real support of hat j: [A^{j-1}, A^{j+1}], with the flat head of the
    /// first hat starting at 1.  Separation arguments live in these
    /// coordinates; the integer supports below may collapse to shared points.
    std::pair<double, double> real_support(int j) const
    {
        const double lo = j == 1 ? 1.0 : std::pow(a_, static_cast<double>(j - 1));
        return {lo, std::pow(a_, static_cast<double>(j + 1))};
    }

    /// Integer support of hat j within [1, n_max]; empty when no integer is hit.
    std::optional<FreqInterval> support(int j) const
    {
        const double lo_real = std::pow(a_, static_cast<double>(j - 1));
        const double hi_real = std::pow(a_, static_cast<double>(j + 1));
        long lo = j == 1 ? 1 : static_cast<long>(std::floor(lo_real));
        long hi = std::min(n_max_, static_cast<long>(std::ceil(hi_real)));
        long first = 0, last = 0;
        bool found = false;
        for (long n = std::max(1L, lo); n <= hi; ++n) {
            if (coeff(j, n) > 0.0) {
                if (!found) first = n;
                last = n;
                found = true;
            }
        }
        if (!found)
            return std::nullopt;
        return FreqInterval(first, last);
    }

private:
    double a_;
    double log_a_;
    long n_max_;
    int j_max_;
};

inline BetaFamily build_beta_family(double a, const FreqInterval& window)
{
    if (window.a < 1)
        throw Error("build_beta_family: window must start at 1 or above");
    return BetaFamily(a, window.b);
}

// ---------------------------------------------------------------------------
// Operators S and R
// ---------------------------------------------------------------------------

/// S(h)(x) = sum_k sum_{j in B_k} e^{i a_j x}(h_j * phi_k)(x); convolution is
/// spectral multiplication.  Every interval length must be a power of two.
inline SampledFunction op_S(const FunctionSequence& hs, const Partition& p, const PhiFamily& phi)
{
    if (hs.size() != p.size())
        throw LengthMismatch("op_S: |hs| != |P|");
    const std::size_t n = hs.grid_size();
    Spectrum acc(n);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const long len = p[j].length();
        if (!is_power_of_two(static_cast<std::size_t>(len)))
            throw NonDyadicLength("op_S: interval length is not a power of two");
        int k = 0;
        while ((1L << k) < len)
            ++k;
        if ((1L << k) > acc.max_freq())
            throw WindowOverflow("op_S: 2^k outside the frequency window");
        const Spectrum h = to_spectrum(hs[j]);
        Spectrum conv(n);
        for (long f = 0; f <= (1L << k); ++f)
            conv.at(f) = h.at(f) * phi.coeff(k, f);
        const Spectrum shifted = detail::shift_spectrum(conv, p[j].a);
        for (long f = shifted.min_freq(); f <= shifted.max_freq(); ++f)
            acc.at(f) += shifted.at(f);
    }
    return from_spectrum(acc);
}

/// R({f_k}): the doubly indexed family f_k * beta_j.
struct RCutResult {
    // pieces[k][j-1] = f_k * beta_j, j = 1 .. family.j_max()
    std::vector<std::vector<SampledFunction>> pieces;
};

inline RCutResult op_R(const FunctionSequence& fs, const BetaFamily& beta)
{
    const std::size_t n = fs.grid_size();
    RCutResult out;
    out.pieces.reserve(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const Spectrum s = to_spectrum(fs[k]);
        const double scale = detail::spectrum_l2(s);
        for (long f = s.min_freq(); f <= s.max_freq(); ++f) {
            const bool outside = f < 0 || f > beta.covered_max();
            if (outside && std::abs(s.at(f)) > 1e-12 * std::max(scale, 1e-300))
                throw CoverageGap("op_R: spectrum extends beyond the family's covered range");
        }
        std::vector<SampledFunction> row;
        row.reserve(static_cast<std::size_t>(beta.j_max()));
        for (int j = 1; j <= beta.j_max(); ++j) {
            Spectrum piece(n);
            const auto sup = beta.support(j);
            if (sup) {
                for (long f = sup->a; f <= sup->b && f <= s.max_freq(); ++f)
                    piece.at(f) = s.at(f) * beta.coeff(j, f);
            }
            row.push_back(from_spectrum(piece));
        }
        out.pieces.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// The cutting / regularization plan
// ---------------------------------------------------------------------------

enum class PieceRoute { Short, Analytic, Reversed };

struct PlanPiece {
    std::size_t src;      // index of the original interval
    PieceRoute route;
    int cut_index;        // hat index k (Analytic) or k' (Reversed); 0 for Short
    FreqInterval support; // absolute integer support, clipped to Delta
    int group;            // color for Short, class in [0,10) otherwise
    int s_class;          // phi class used in the S stage
    long s_shift;         // modulation taking the support into the passband
    double rlo = 0.0;     // absolute real hat support; separation checks use
    double rhi = 0.0;     // these, since integer supports collapse at the low end
};

struct IntervalPlanEntry {
    FreqInterval delta;
    bool is_short;
    int color = -1;                          // short branch only
    std::vector<int> flagged;                // level-1 hat indices sent to the reversed pass
    std::optional<FreqInterval> flagged_span; // absolute union support of the flagged cuts
};

struct DecompositionPlan {
    std::vector<IntervalPlanEntry> items;
    std::vector<PlanPiece> pieces; // construction order: src asc, analytic k asc, reversed k' asc
    double cut_ratio = 0.0;
    double xi = 0.0;
    int colors_used = 0;
    long short_threshold = 11;
};

namespace detail {

/// Smallest phi class whose exact pass-band holds `len` consecutive integers,
/// with the first integer of the band returned as well.
inline std::pair<int, long> s_class_for_length(long len, double xi)
{
    for (int k = 1; k < 62; ++k) {
        const double half = static_cast<double>(1L << (k - 1));
        const long lo = static_cast<long>(std::ceil((1.0 - xi) * half));
        const long hi = static_cast<long>(std::floor((1.0 + xi) * half));
        if (hi - lo + 1 >= len)
            return {k, lo};
    }
    throw Error("s_class_for_length: no admissible class");
}

inline void assign_s_stage(PlanPiece& piece, double xi)
{
    const auto [k, band_lo] = s_class_for_length(piece.support.length(), xi);
    piece.s_class = k;
    if (piece.route == PieceRoute::Reversed) {
        // mirrored phi: pass-band [-band_hi, -band_lo]; align the right end
        piece.s_shift = -band_lo - piece.support.b;
    } else {
        piece.s_shift = band_lo - piece.support.a;
    }
}

} // namespace detail

/// The cutting procedure: intervals of length <= 11 are colored greedily so
/// that same-color members keep disjoint 9-fold neighborhoods; longer
/// intervals are cut along the A-geometric hat family after shifting their
/// left end to 1, the cuts are classed by hat index mod 10, and the top cuts
/// are combined and re-cut from the right end for the antianalytic pass.
/// Top cuts are flagged until the remaining cuts' 3-fold neighborhoods stay
/// strictly inside the interval, which keeps groups separated across
/// adjacent intervals.
inline DecompositionPlan regularize_partition(const Partition& p, double cut_ratio = std::pow(2.0, 0.1),
                                              double xi = 0.9)
{
    for (const auto& d : p.intervals())
        if (d.a < 0)
            throw SignMixed("regularize_partition: negative frequencies; split signs first");

    DecompositionPlan plan;
    plan.cut_ratio = cut_ratio;
    plan.xi = xi;

    // short-interval coloring: greedy first-fit over the 9-neighborhood conflict graph
    std::vector<std::size_t> shorts;
    for (std::size_t j = 0; j < p.size(); ++j)
        if (p[j].length() <= plan.short_threshold)
            shorts.push_back(j);
    std::sort(shorts.begin(), shorts.end(),
              [&](std::size_t i, std::size_t j) { return p[i].a < p[j].a; });
    std::vector<int> color(p.size(), -1);
    for (std::size_t si = 0; si < shorts.size(); ++si) {
        const std::size_t i = shorts[si];
        std::vector<bool> used(si + 1, false);
        for (std::size_t sj = 0; sj < si; ++sj) {
            const std::size_t j = shorts[sj];
            const bool conflict = p[i].dilate(9).intersects(p[j]) || p[i].intersects(p[j].dilate(9));
            if (conflict && color[j] >= 0)
                used[static_cast<std::size_t>(color[j])] = true;
        }
        int c = 0;
        while (used[static_cast<std::size_t>(c)])
            ++c;
        color[i] = c;
        plan.colors_used = std::max(plan.colors_used, c + 1);
    }
    if (plan.colors_used > 100)
        throw Error("regularize_partition: greedy coloring exceeded 100 colors");

    for (std::size_t j = 0; j < p.size(); ++j) {
        IntervalPlanEntry item{p[j], p[j].length() <= plan.short_threshold};
        if (item.is_short) {
            item.color = color[j];
            PlanPiece piece{j, PieceRoute::Short, 0, p[j], color[j], 0, 0};
            detail::assign_s_stage(piece, xi);
            plan.pieces.push_back(piece);
            plan.items.push_back(std::move(item));
            continue;
        }

        const long a = p[j].a;
        const long b = p[j].b;
        const long len = p[j].length();
        const BetaFamily beta(cut_ratio, len);

        struct Cut { int k; FreqInterval rel; double rlo; double rhi; };
        std::vector<Cut> cuts;
        for (int k = 1; k <= beta.j_max(); ++k)
            if (auto sup = beta.support(k)) {
                const auto [rlo, rhi] = beta.real_support(k);
                cuts.push_back({k, *sup, rlo, rhi});
            }

        // flag the two biggest hat indices, then keep flagging while the top
        // remaining cut's real 3-neighborhood would leave the interval: the
        // first hat of any neighbor reaches down to 1 - (A^2 - 1) ~ 0.851, so
        // capping our reach at len + 0.85 keeps same-group pieces of adjacent
        // intervals separated even when the partition leaves a gap of one
        std::size_t n_flagged = std::min<std::size_t>(2, cuts.size());
        while (n_flagged < cuts.size()) {
            const Cut& top = cuts[cuts.size() - 1 - n_flagged];
            const double reach = top.rhi + (top.rhi - top.rlo);
            if (reach > static_cast<double>(len) + 0.85)
                ++n_flagged;
            else
                break;
        }

        long span_lo = 0, span_hi = 0;
        for (std::size_t c = 0; c < cuts.size(); ++c) {
            const bool flagged = c >= cuts.size() - n_flagged;
            const Cut& cut = cuts[c];
            if (flagged) {
                item.flagged.push_back(cut.k);
                if (span_lo == 0) {
                    span_lo = cut.rel.a;
                    span_hi = cut.rel.b;
                } else {
                    span_lo = std::min(span_lo, cut.rel.a);
                    span_hi = std::max(span_hi, cut.rel.b);
                }
            } else {
                PlanPiece piece{j, PieceRoute::Analytic, cut.k,
                                FreqInterval(a - 1 + cut.rel.a, a - 1 + cut.rel.b),
                                cut.k % 10, 0, 0,
                                static_cast<double>(a - 1) + cut.rlo,
                                static_cast<double>(a - 1) + cut.rhi};
                detail::assign_s_stage(piece, xi);
                plan.pieces.push_back(piece);
            }
        }

        if (n_flagged > 0) {
            item.flagged_span = FreqInterval(a - 1 + span_lo, a - 1 + span_hi);
            // re-cut the combined flagged span from its right end
            const long span_len = span_hi - span_lo + 1;
            const BetaFamily rbeta(cut_ratio, span_len);
            for (int k = 1; k <= rbeta.j_max(); ++k) {
                if (auto sup = rbeta.support(k)) {
                    // mirrored coordinate m = (span_hi + 1) - n_rel
                    const long abs_hi = a - 1 + span_hi + 1 - sup->a;
                    const long abs_lo = a - 1 + span_hi + 1 - sup->b;
                    const auto [mlo, mhi] = rbeta.real_support(k);
                    const double base = static_cast<double>(a - 1 + span_hi + 1);
                    PlanPiece piece{j, PieceRoute::Reversed, k,
                                    FreqInterval(abs_lo, abs_hi), k % 10, 0, 0,
                                    base - mhi, base - mlo};
                    detail::assign_s_stage(piece, xi);
                    plan.pieces.push_back(piece);
                }
            }
        }
        (void)b;
        plan.items.push_back(std::move(item));
    }
    return plan;
}

struct PlanValidation {
    bool pass = true;
    std::vector<std::string> failures;

    void fail(std::string what)
    {
        pass = false;
        failures.push_back(std::move(what));
    }
};

inline PlanValidation validate_plan(const DecompositionPlan& plan)
{
    PlanValidation v;

    // piece supports inside their interval; union covers it
    for (std::size_t j = 0; j < plan.items.size(); ++j) {
        const FreqInterval& d = plan.items[j].delta;
        std::vector<bool> covered(static_cast<std::size_t>(d.length()), false);
        for (const auto& piece : plan.pieces) {
            if (piece.src != j)
                continue;
            if (piece.support.a < d.a || piece.support.b > d.b) {
                v.fail("piece support escapes interval " + std::to_string(j));
                continue;
            }
            for (long n = piece.support.a; n <= piece.support.b; ++n)
                covered[static_cast<std::size_t>(n - d.a)] = true;
        }
        if (!std::all_of(covered.begin(), covered.end(), [](bool c) { return c; }))
            v.fail("pieces do not cover interval " + std::to_string(j));
    }

    // colors: at most 100, and same-color shorts keep 9-neighborhood separation
    if (plan.colors_used > 100)
        v.fail("more than 100 colors");
    for (std::size_t i = 0; i < plan.items.size(); ++i) {
        if (!plan.items[i].is_short)
            continue;
        for (std::size_t j = i + 1; j < plan.items.size(); ++j) {
            if (!plan.items[j].is_short || plan.items[i].color != plan.items[j].color)
                continue;
            const FreqInterval& di = plan.items[i].delta;
            const FreqInterval& dj = plan.items[j].delta;
            if (di.dilate(9).intersects(dj) || di.intersects(dj.dilate(9)))
                v.fail("9-neighborhood violation for color " + std::to_string(plan.items[i].color));
        }
    }

    // group classes in [0,10) and 3-neighborhood separation within each group
    for (PieceRoute route : {PieceRoute::Analytic, PieceRoute::Reversed}) {
        for (int g = 0; g < 10; ++g) {
            std::vector<const PlanPiece*> members;
            for (const auto& piece : plan.pieces)
                if (piece.route == route && piece.group == g)
                    members.push_back(&piece);
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j) {
                    // real-coordinate concentric triples of the hat supports
                    const PlanPiece& x = *members[i];
                    const PlanPiece& y = *members[j];
                    const double xpad = x.rhi - x.rlo;
                    const double ypad = y.rhi - y.rlo;
                    if (x.rlo - xpad <= y.rhi + ypad && y.rlo - ypad <= x.rhi + xpad)
                        v.fail("3-neighborhood violation in group " + std::to_string(g));
                }
        }
    }
    for (const auto& piece : plan.pieces)
        if (piece.route != PieceRoute::Short && (piece.group < 0 || piece.group >= 10))
            v.fail("group index outside [0,10)");

    return v;
}

namespace detail {

inline void s_stage_accumulate(Spectrum& acc, const Spectrum& piece, const PhiFamily& phi,
                               int k, long shift, bool mirrored)
{
    if ((1L << k) > acc.max_freq())
        throw WindowOverflow("execute_plan: phi class outside the frequency window");
    Spectrum shifted = shift_spectrum(piece, shift);
    for (long f = shifted.min_freq(); f <= shifted.max_freq(); ++f) {
        const cplx c = shifted.at(f);
        if (c != cplx(0.0, 0.0))
            shifted.at(f) = c * phi.coeff(k, mirrored ? -f : f);
    }
    const Spectrum back = shift_spectrum(shifted, -shift);
    for (long f = back.min_freq(); f <= back.max_freq(); ++f)
        acc.at(f) += back.at(f);
}

} // namespace detail

/// Evaluates the plan's shift / hat-cut / S-stage composition, intertwined by
/// u, and returns the result; agrees with op_T_u on the original partition.
inline SampledFunction execute_plan(const DecompositionPlan& plan, const FunctionSequence& fs,
                                    const Weight& u)
{
    if (fs.size() != plan.items.size())
        throw PlanMismatch("execute_plan: sequence length differs from plan");
    const std::size_t n = fs.grid_size();
    if (u.size() != n)
        throw PlanMismatch("execute_plan: weight grid size differs");

    const int phi_classes = 62;
    const PhiFamily phi(phi_classes, plan.xi);

    // per-interval multiplier restrictions of u * f_j
    std::vector<Spectrum> restricted;
    restricted.reserve(plan.items.size());
    for (std::size_t j = 0; j < plan.items.size(); ++j) {
        std::vector<cplx> v(n);
        for (std::size_t m = 0; m < n; ++m)
            v[m] = u[m] * fs[j][m];
        const Spectrum s = to_spectrum(SampledFunction(std::move(v)));
        const FreqInterval& d = plan.items[j].delta;
        if (d.a < s.min_freq() || d.b > s.max_freq())
            throw IntervalOutOfWindow("execute_plan: interval outside the window");
        Spectrum h(n);
        for (long f = d.a; f <= d.b; ++f)
            h.at(f) = s.at(f);
        restricted.push_back(std::move(h));
    }

    Spectrum acc(n);
    for (const auto& piece : plan.pieces) {
        const std::size_t j = piece.src;
        const IntervalPlanEntry& item = plan.items[j];
        const Spectrum& h = restricted[j];
        Spectrum content(n);
        if (piece.route == PieceRoute::Short) {
            content = h;
        } else {
            const long a = item.delta.a;
            const BetaFamily beta(plan.cut_ratio, item.delta.length());
            if (piece.route == PieceRoute::Analytic) {
                for (long f = piece.support.a; f <= piece.support.b; ++f)
                    content.at(f) = h.at(f) * beta.coeff(piece.cut_index, f - a + 1);
            } else {
                const FreqInterval span = *item.flagged_span;
                const BetaFamily rbeta(plan.cut_ratio, span.length());
                for (long f = piece.support.a; f <= piece.support.b; ++f) {
                    double w_flag = 0.0;
                    for (int k : item.flagged)
                        w_flag += beta.coeff(k, f - a + 1);
                    const long mirrored = span.b + 1 - f;
                    content.at(f) = h.at(f) * w_flag * rbeta.coeff(piece.cut_index, mirrored);
                }
            }
        }
        detail::s_stage_accumulate(acc, content, phi, piece.s_class, piece.s_shift,
                                   piece.route == PieceRoute::Reversed);
    }

    SampledFunction out = from_spectrum(acc);
    for (std::size_t m = 0; m < n; ++m)
        out[m] /= u[m];
    return out;
}

} // namespace lwlp
