#include <doctest.h>

#include "lwlp/multipliers.hpp"
#include "lwlp/random.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace lwlp;

TEST_CASE("apply_multiplier matches the direct-summation oracle")
{
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = rep % 2 == 0 ? 32 : 64;
        const SampledFunction f = random_function(n, rng);
        const long half = static_cast<long>(n) / 2;
        const long a = rng.integer(-half, half - 1);
        const long b = rng.integer(a, half - 1);
        const FreqInterval d(a, b);
        CHECK(testutil::rel_error(apply_multiplier(f, d), oracle::multiplier(f, d)) < 1e-10);
    }
}

TEST_CASE("multiplier window bounds are enforced")
{
    const SampledFunction f = SampledFunction::zero(32);
    CHECK_THROWS_AS(apply_multiplier(f, FreqInterval(10, 16)), IntervalOutOfWindow);
    CHECK_THROWS_AS(apply_multiplier(f, FreqInterval(-17, 0)), IntervalOutOfWindow);
}

TEST_CASE("square function: Parseval for full partitions, Bessel for partial")
{
    Rng rng(55);
    const std::size_t n = 256;
    for (int rep = 0; rep < 10; ++rep) {
        const SampledFunction f = random_function(n, rng);
        const Partition full = Partition::dyadic(n);
        CHECK(lp_norm(square_function(f, full), 2.0)
              == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-10));
        const Partition partial({{0, 7}, {16, 31}});
        CHECK(lp_norm(square_function(f, partial), 2.0) <= lp_norm(f, 2.0) + 1e-10);
    }
}

TEST_CASE("square function is real and nonnegative")
{
    Rng rng(9);
    const SampledFunction sf = square_function(random_function(64, rng), Partition::dyadic(64));
    for (std::size_t m = 0; m < sf.size(); ++m) {
        CHECK(sf[m].imag() == 0.0);
        CHECK(sf[m].real() >= 0.0);
    }
}

TEST_CASE("Riesz projection keeps the analytic part")
{
    Rng rng(21);
    const SampledFunction f = random_function(64, rng);
    const Spectrum s = to_spectrum(riesz_projection(f));
    const Spectrum base = to_spectrum(f);
    for (long freq = s.min_freq(); freq <= s.max_freq(); ++freq) {
        if (freq >= 0)
            CHECK(std::abs(s.at(freq) - base.at(freq)) < 1e-12);
        else
            CHECK(std::abs(s.at(freq)) < 1e-12);
    }
}

TEST_CASE("two-term unimodular conjugation reproduces the multiplier")
{
    // M_[a,b] f = e^{iax} P_+(e^{-iax} f) - e^{i(b+1)x} P_+(e^{-i(b+1)x} f).
    // f and the interval live in the half-width band so the conjugating
    // modulations never push the spectrum out of the window.
    Rng rng(33);
    const std::size_t n = 256;
    const long q = static_cast<long>(n) / 4;
    for (int rep = 0; rep < 50; ++rep) {
        const SampledFunction f = random_band_function(n, -q, q - 1, rng);
        const long a = rng.integer(-q, q - 2);
        const long b = rng.integer(a, q - 2);
        const SampledFunction lhs = apply_multiplier(f, FreqInterval(a, b));
        const SampledFunction ta = modulate(riesz_projection(modulate(f, -a)), a);
        const SampledFunction tb = modulate(riesz_projection(modulate(f, -(b + 1))), b + 1);
        SampledFunction rhs = ta;
        for (std::size_t m = 0; m < n; ++m)
            rhs[m] -= tb[m];
        CHECK(testutil::rel_error(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("op_T sums oracle multiplier pieces")
{
    Rng rng(77);
    const std::size_t n = 32;
    const Partition p({{-10, -6}, {0, 3}, {5, 9}});
    std::vector<SampledFunction> fs;
    for (std::size_t j = 0; j < p.size(); ++j)
        fs.push_back(random_function(n, rng));
    const SampledFunction t = op_T(FunctionSequence(fs), p);
    SampledFunction ref = SampledFunction::zero(n);
    for (std::size_t j = 0; j < p.size(); ++j) {
        const SampledFunction piece = oracle::multiplier(fs[j], p[j]);
        for (std::size_t m = 0; m < n; ++m)
            ref[m] += piece[m];
    }
    CHECK(testutil::rel_error(t, ref) < 1e-10);
}

TEST_CASE("op_T_u with the unit weight is op_T; op_P_u projects entrywise")
{
    Rng rng(78);
    const std::size_t n = 64;
    const Partition p({{1, 4}, {8, 15}});
    std::vector<SampledFunction> fs{random_function(n, rng), random_function(n, rng)};
    const Weight u = Weight::constant(n, 1.0);
    CHECK(testutil::rel_error(op_T(FunctionSequence(fs), p), op_T_u(FunctionSequence(fs), p, u))
          < 1e-12);
    const FunctionSequence proj = op_P_u(FunctionSequence(fs), p, u);
    for (std::size_t j = 0; j < p.size(); ++j)
        CHECK(testutil::rel_error(proj[j], apply_multiplier(fs[j], p[j])) < 1e-12);
}

TEST_CASE("theorem2_ratio conventions at the degenerate ends")
{
    const std::size_t n = 32;
    const Partition p({{0, 3}});
    const Weight one = Weight::constant(n, 1.0);
    const FunctionSequence zero({SampledFunction::zero(n)});
    CHECK(theorem2_ratio(zero, p, one, one) == 0.0); // 0/0 reads as 0 by convention
}

TEST_CASE("sequence length mismatches throw")
{
    const std::size_t n = 32;
    const Partition p({{0, 3}, {5, 6}});
    const FunctionSequence fs({SampledFunction::zero(n)});
    CHECK_THROWS_AS(op_T(fs, p), LengthMismatch);
    CHECK_THROWS_AS(op_T_u(fs, p, Weight::constant(n, 1.0)), LengthMismatch);
}
