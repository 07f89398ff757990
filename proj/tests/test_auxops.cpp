#include <doctest.h>

#include "lwlp/auxops.hpp"
#include "lwlp/random.hpp"

#include "helpers.hpp"
#include "oracles.hpp"

using namespace lwlp;

TEST_CASE("phi family: pass-band is the literal constant 1, support is (0, 2^m)")
{
    const PhiFamily phi(8, 0.9);
    for (int m = 2; m <= 8; ++m) {
        const auto [lo, hi] = phi.passband(m);
        CHECK(lo >= 1);
        CHECK(hi < (1L << m));
        for (long f = lo; f <= hi; ++f)
            CHECK(phi.coeff(m, f) == 1.0);
        CHECK(phi.coeff(m, 0) == 0.0);
        CHECK(phi.coeff(m, 1L << m) == 0.0);
        CHECK(phi.coeff(m, -3) == 0.0);
        for (long f = 1; f < (1L << m); ++f) {
            CHECK(phi.coeff(m, f) >= 0.0);
            CHECK(phi.coeff(m, f) <= 1.0);
        }
    }
}

TEST_CASE("phi family: decay fit stays bounded across classes")
{
    const PhiFamily phi(6, 0.9);
    double prev = phi_decay_fit(phi, 2, 256);
    for (int m = 3; m <= 6; ++m) {
        const double c = phi_decay_fit(phi, m, 256);
        CHECK(c > 0.0);
        // fitted constants of one profile family agree within a small factor
        CHECK(c < 4.0 * prev + 4.0);
        prev = c;
    }
}

TEST_CASE("beta family: nonnegative, local support, exact partition of unity")
{
    const BetaFamily beta(std::pow(2.0, 0.1), 500);
    for (long n = 1; n <= 500; ++n) {
        double sum = 0.0;
        int alive = 0;
        for (int j = 1; j <= beta.j_max(); ++j) {
            const double c = beta.coeff(j, n);
            CHECK(c >= 0.0);
            if (c > 0.0)
                ++alive;
            sum += c;
        }
        CHECK(sum == 1.0); // exact in floating point, not approximate
        CHECK(alive <= 2);
    }
    for (int j = 2; j <= beta.j_max(); ++j) {
        if (const auto sup = beta.support(j)) {
            CHECK(static_cast<double>(sup->a) >= std::pow(beta.ratio(), j - 1) - 1.0);
            CHECK(static_cast<double>(sup->b) <= std::pow(beta.ratio(), j + 1) + 1.0);
        }
    }
}

TEST_CASE("op_R reconstructs analytic functions")
{
    Rng rng(400);
    const std::size_t n = 256;
    for (int rep = 0; rep < 10; ++rep) {
        const SampledFunction f = random_band_function(n, 1, 100, rng);
        const BetaFamily beta(std::pow(2.0, 0.1), 100);
        const RCutResult cut = op_R(FunctionSequence({f}), beta);
        SampledFunction sum = SampledFunction::zero(n);
        for (const auto& piece : cut.pieces[0])
            for (std::size_t m = 0; m < n; ++m)
                sum[m] += piece[m];
        CHECK(testutil::rel_error(f, sum) < 1e-12);
    }
}

TEST_CASE("op_R rejects spectra outside the covered range")
{
    Rng rng(401);
    const SampledFunction f = random_band_function(64, -3, 10, rng);
    const BetaFamily beta(std::pow(2.0, 0.1), 20);
    CHECK_THROWS_AS(op_R(FunctionSequence({f}), beta), CoverageGap);
}

TEST_CASE("op_S matches a direct-summation oracle")
{
    Rng rng(402);
    const std::size_t n = 64;
    const Partition p({{3, 6}, {10, 17}}); // dyadic lengths 4 and 8
    const PhiFamily phi(5, 0.9);
    std::vector<SampledFunction> hs{random_band_function(n, 0, 10, rng),
                                    random_band_function(n, 0, 10, rng)};
    const SampledFunction s = op_S(FunctionSequence(hs), p, phi);

    std::vector<cplx> acc(n, cplx(0.0, 0.0));
    const int ks[] = {2, 3};
    for (std::size_t j = 0; j < 2; ++j) {
        std::vector<cplx> c = oracle::dft_coeffs(hs[j]);
        for (std::size_t k = 0; k < n; ++k) {
            const long freq = static_cast<long>(k) - static_cast<long>(n) / 2;
            c[k] *= phi.coeff(ks[j], freq);
        }
        const SampledFunction conv = oracle::synthesize(c);
        for (std::size_t m = 0; m < n; ++m) {
            const double ph = static_cast<double>(p[j].a) * grid_point(n, m);
            acc[m] += cplx(std::cos(ph), std::sin(ph)) * conv[m];
        }
    }
    CHECK(testutil::rel_error(s, SampledFunction(std::move(acc))) < 1e-10);
}

TEST_CASE("op_S rejects non-dyadic lengths")
{
    const std::size_t n = 64;
    const Partition p({{0, 2}});
    const FunctionSequence hs({SampledFunction::zero(n)});
    CHECK_THROWS_AS(op_S(hs, p, PhiFamily(5, 0.9)), NonDyadicLength);
}

TEST_CASE("regularize: short intervals are colored, long intervals cut")
{
    const Partition p({{0, 5}, {20, 25}, {40, 120}});
    const DecompositionPlan plan = regularize_partition(p);
    CHECK(plan.items.size() == 3);
    CHECK(plan.items[0].is_short);
    CHECK(plan.items[1].is_short);
    CHECK_FALSE(plan.items[2].is_short);
    CHECK(plan.items[2].flagged.size() >= 2);
    CHECK(plan.colors_used >= 1);
    const PlanValidation v = validate_plan(plan);
    CHECK(v.pass);
    for (const auto& msg : v.failures)
        MESSAGE(msg);
}

TEST_CASE("regularize rejects negative frequencies")
{
    CHECK_THROWS_AS(regularize_partition(Partition({{-4, -1}})), SignMixed);
}

TEST_CASE("seeded plans validate and execute_plan agrees with op_T_u")
{
    Rng rng(4000);
    for (std::size_t n : {256u, 512u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const Partition p = random_positive_partition(n, rng);
            const DecompositionPlan plan = regularize_partition(p);
            CHECK(validate_plan(plan).pass);
            std::vector<SampledFunction> fs;
            for (const auto& iv : p.intervals())
                fs.push_back(random_band_function(n, iv.a, iv.b, rng));
            const FunctionSequence seq(std::move(fs));
            const Weight u = build_weight(parse_weight_spec("cosine:c=2"), n);
            CHECK(testutil::rel_error(op_T_u(seq, p, u), execute_plan(plan, seq, u)) < 1e-9);
        }
    }
}

TEST_CASE("execute_plan validates its inputs")
{
    const Partition p({{0, 5}});
    const DecompositionPlan plan = regularize_partition(p);
    const FunctionSequence wrong({SampledFunction::zero(64), SampledFunction::zero(64)});
    CHECK_THROWS_AS(execute_plan(plan, wrong, Weight::constant(64, 1.0)), PlanMismatch);
    const FunctionSequence ok({SampledFunction::zero(64)});
    CHECK_THROWS_AS(execute_plan(plan, ok, Weight::constant(128, 1.0)), PlanMismatch);
}
