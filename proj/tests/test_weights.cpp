#include <doctest.h>

#include "lwlp/random.hpp"
#include "lwlp/weights.hpp"

#include "oracles.hpp"

using namespace lwlp;

namespace {

std::vector<WeightSpec> catalog()
{
    return {parse_weight_spec("unit"),
            parse_weight_spec("power:delta=-0.2"),
            parse_weight_spec("cosine:c=2"),
            parse_weight_spec("step:lo=1,hi=4,frac=0.5"),
            parse_weight_spec("maximal-power:gamma=0.4")};
}

} // namespace

TEST_CASE("weight constructor rejects nonpositive samples")
{
    std::vector<double> v(16, 1.0);
    v[3] = 0.0;
    CHECK_THROWS_AS(Weight{v}, NonpositiveWeight);
    v[3] = -2.0;
    CHECK_THROWS_AS(Weight{v}, NonpositiveWeight);
}

TEST_CASE("maximal function matches arc enumeration")
{
    for (const auto& spec : catalog()) {
        const Weight w = build_weight(spec, 32);
        const SampledFunction mw = maximal_function(w);
        const std::vector<double> ref = oracle::hl_maximal(w.values());
        for (std::size_t m = 0; m < 32; ++m)
            CHECK(mw[m].real() == doctest::Approx(ref[m]).epsilon(1e-12));
    }
}

TEST_CASE("ap_constant matches arc enumeration")
{
    for (const auto& spec : catalog()) {
        const Weight w = build_weight(spec, 32);
        for (double p : {1.0, 1.5, 2.0, 4.0})
            CHECK(ap_constant(w, p) == doctest::Approx(oracle::ap_constant(w, p)).epsilon(1e-10));
    }
}

TEST_CASE("unit weight has constant exactly 1")
{
    const Weight one = Weight::constant(64, 1.0);
    for (double p : {1.0, 1.25, 1.5, 2.0, 4.0, 8.0})
        CHECK(ap_constant(one, p) == 1.0);
    CHECK(alpha_p_constant(one, 1.5) == 1.0);
}

TEST_CASE("ap_constant is nonincreasing in p")
{
    for (const auto& spec : catalog()) {
        const Weight w = build_weight(spec, 64);
        double prev = ap_constant(w, 1.0);
        for (double p : {1.25, 1.5, 2.0, 4.0, 8.0}) {
            const double cur = ap_constant(w, p);
            CHECK(cur <= prev * (1.0 + 1e-12));
            prev = cur;
        }
    }
}

TEST_CASE("A_1 constant is dominated by sqrt of the alpha_1 constant")
{
    for (const auto& spec : catalog())
        CHECK(a1_implied_by_alpha1(build_weight(spec, 64)).pass);
}

TEST_CASE("weak quasinorm matches threshold enumeration")
{
    Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const SampledFunction f = random_function(32, rng);
        const Weight a = build_weight(catalog()[rep % catalog().size()], 32);
        CHECK(weak_quasinorm(f, a) == doctest::Approx(oracle::weak_quasinorm(f, a)).epsilon(1e-10));
    }
}

TEST_CASE("weight spec parsing")
{
    const WeightSpec s = parse_weight_spec("power:delta=-0.4,x0=3.14");
    CHECK(s.name == "power");
    CHECK(s.param("delta", 0.0) == doctest::Approx(-0.4));
    CHECK(s.param("x0", 0.0) == doctest::Approx(3.14));
    CHECK(s.param("missing", 7.0) == 7.0);
    CHECK_THROWS_AS(parse_weight_spec("power:delta"), ConfigError);
    CHECK_THROWS_AS(build_weight(parse_weight_spec("nope"), 32), UnknownCatalogEntry);
    CHECK_THROWS_AS(build_weight(parse_weight_spec("cosine:c=0.5"), 32), ConfigError);
}

TEST_CASE("mix and ratio are pointwise")
{
    const Weight w = Weight::constant(16, 4.0);
    const Weight a = Weight::constant(16, 1.0);
    CHECK(mix(w, a, 0.5)[0] == doctest::Approx(2.0));
    CHECK(weight_ratio(a, w)[5] == doctest::Approx(0.25));
}

TEST_CASE("a_infinity certification")
{
    for (const auto& spec : catalog())
        CHECK(a_infinity_certified(build_weight(spec, 64)));
}

TEST_CASE("lemma 4 certificate: unit weight gives the closed-form constants")
{
    const Lemma4Report r = lemma4_certificate(Weight::constant(256, 1.0), 1.5);
    CHECK(r.c == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(r.a == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.b == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(r.identities_ok);
    CHECK(r.alpha_p == 1.0);
    CHECK(r.a1 == 1.0);
    CHECK(std::abs(r.worst_margin) < 1e-12); // every arc sits exactly at equality
    CHECK(r.pass);
}

TEST_CASE("lemma 4 certificate holds across the catalog")
{
    for (const auto& spec : catalog()) {
        const Weight w = build_weight(spec, 128);
        for (double p : {1.25, 1.5, 1.75})
            CHECK(lemma4_certificate(w, p).pass);
    }
    CHECK_THROWS_AS(lemma4_certificate(Weight::constant(32, 1.0), 1.0), Error);
    CHECK_THROWS_AS(lemma4_certificate(Weight::constant(32, 1.0), 2.0), Error);
}

TEST_CASE("mix probe rejects indices outside [1,2]")
{
    CHECK_THROWS_AS(mix_probe(parse_weight_spec("unit"), parse_weight_spec("unit"), 1.5,
                              {2.0}, 32),
                    ConfigError);
}

TEST_CASE("reverse Holder probe on a bounded weight")
{
    const ReverseHolderReport rep = reverse_holder_probe(build_weight(parse_weight_spec("cosine:c=2"), 64),
                                                         {1.5, 2.0, 3.0});
    CHECK(rep.rows.size() == 3);
    CHECK(rep.best_s == 3.0); // bounded above and below: every s qualifies
    for (const auto& row : rep.rows)
        CHECK(row.constant >= 1.0);
}
