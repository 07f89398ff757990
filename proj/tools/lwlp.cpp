// Batch experiment driver.  Thin dispatcher: every number it writes is
// computed by the library; this file only parses configuration, seeds the
// generators, and serializes results.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lwlp/auxops.hpp"
#include "lwlp/circle.hpp"
#include "lwlp/correction.hpp"
#include "lwlp/errors.hpp"
#include "lwlp/multipliers.hpp"
#include "lwlp/random.hpp"
#include "lwlp/serialize.hpp"
#include "lwlp/weights.hpp"

namespace {

using lwlp::json;

struct Options {
    std::size_t n = 256;
    std::uint64_t seed = 1;
    bool seed_set = false;
    std::string config_path;
    std::string out_dir = ".";
    std::vector<std::string> weight_specs;
    std::string partition_json;
    json config;

    // config file first, flags override
    void finalize(const CLI::App& cmd)
    {
        if (!config_path.empty())
            config = json::parse(lwlp::read_text_file(config_path));
        if (cmd.count("--n"))
            config["n"] = n;
        if (cmd.count("--seed"))
            config["seed"] = seed;
        if (cmd.count("--weight")) {
            config["weight"] = weight_specs[0];
            if (weight_specs.size() > 1)
                config["aweight"] = weight_specs[1];
        }
        if (cmd.count("--partition"))
            config["partition"] = json::parse(partition_json);
        n = config.value("n", n);
        if (!lwlp::is_power_of_two(n) || n < 8)
            throw lwlp::ConfigError("--n must be a power of two, >= 8");
        if (config.contains("seed")) {
            seed = config["seed"].get<std::uint64_t>();
            seed_set = true;
        }
    }

    lwlp::WeightSpec wspec(const char* key, const char* fallback) const
    {
        return lwlp::parse_weight_spec(config.value(key, std::string(fallback)));
    }

    lwlp::Partition partition_or_dyadic() const
    {
        if (config.contains("partition"))
            return lwlp::partition_from_json(config["partition"]);
        return lwlp::Partition::dyadic(n);
    }

    std::vector<double> grid(const char* key, std::vector<double> fallback) const
    {
        if (!config.contains(key))
            return fallback;
        auto g = config[key].get<std::vector<double>>();
        if (g.empty())
            throw lwlp::ConfigError(std::string(key) + " must be nonempty");
        return g;
    }

    void require_seed() const
    {
        if (!seed_set)
            throw lwlp::ConfigError("this command is randomized; pass --seed");
    }

    std::string path(const std::string& file) const
    {
        std::filesystem::create_directories(out_dir);
        return (std::filesystem::path(out_dir) / file).string();
    }

    void echo(const std::string& cmd) const
    {
        std::cout << "command: " << cmd << "\nconfig:  " << config.dump() << "\n";
    }
};

std::string fmt(double x) { return lwlp::detail::fmt_g17(x); }

void cmd_sigma(Options& opt)
{
    opt.echo("sigma");
    lwlp::SampledFunction f = lwlp::SampledFunction::zero(opt.n);
    if (opt.config.contains("exp")) {
        const long k = opt.config["exp"].get<long>();
        f = lwlp::SampledFunction::from_values(opt.n, [k](double x) {
            return lwlp::cplx(std::cos(k * x), std::sin(k * x));
        });
    } else {
        opt.require_seed();
        lwlp::Rng rng(opt.seed);
        f = lwlp::random_function(opt.n, rng);
    }
    const lwlp::Partition p = opt.partition_or_dyadic();
    const lwlp::SampledFunction sf = lwlp::square_function(f, p);
    lwlp::write_text_file(opt.path("sigma.csv"), lwlp::function_to_csv(sf));
    json rep;
    rep["n"] = opt.n;
    rep["partition"] = lwlp::partition_to_json(p);
    rep["l2_sigma"] = lwlp::lp_norm(sf, 2.0);
    rep["l2_f"] = lwlp::lp_norm(f, 2.0);
    lwlp::write_text_file(opt.path("sigma.json"), rep.dump(2) + "\n");
    std::printf("%-12s %s\n%-12s %s\n", "||sigma f||_2", fmt(rep["l2_sigma"].get<double>()).c_str(),
                "||f||_2", fmt(rep["l2_f"].get<double>()).c_str());
}

void cmd_weights(Options& opt)
{
    opt.echo("weights");
    const lwlp::WeightSpec spec = opt.wspec("weight", "cosine:c=2");
    const lwlp::Weight w = lwlp::build_weight(spec, opt.n);
    const std::vector<double> p_grid = opt.grid("p_grid", {1.0, 1.25, 1.5, 2.0, 4.0});
    std::string csv = "p,ap_constant,alpha_constant\n";
    json rows = json::array();
    std::printf("%8s %16s %16s\n", "p", "[w]_Ap", "[w]_alpha_p");
    for (double p : p_grid) {
        const double ap = lwlp::ap_constant(w, p);
        const double al = (p >= 1.0 && p <= 2.0) ? lwlp::alpha_p_constant(w, p) : 0.0;
        csv += fmt(p) + "," + fmt(ap) + "," + fmt(al) + "\n";
        rows.push_back({{"p", p}, {"ap", ap}, {"alpha", al}});
        std::printf("%8g %16g %16g\n", p, ap, al);
    }
    lwlp::write_text_file(opt.path("weights.csv"), csv);
    const lwlp::A1AlphaReport a1rep = lwlp::a1_implied_by_alpha1(w);
    json rep;
    rep["n"] = opt.n;
    rep["weight"] = spec.name;
    rep["rows"] = rows;
    rep["a1"] = a1rep.a1;
    rep["alpha1"] = a1rep.alpha1;
    rep["a1_le_sqrt_alpha1"] = a1rep.pass;
    rep["a_infinity"] = lwlp::a_infinity_certified(w);
    lwlp::write_text_file(opt.path("weights.json"), rep.dump(2) + "\n");
}

void cmd_lemma1(Options& opt)
{
    opt.echo("lemma1");
    const lwlp::WeightSpec wspec = opt.wspec("weight", "power:delta=-0.2");
    const lwlp::WeightSpec aspec = opt.wspec("aweight", "cosine:c=2");
    const double q = opt.config.value("q", 1.5);
    const std::vector<double> t_grid = opt.grid("t_grid", {0.9, 0.95, 0.99});
    const lwlp::MixProbeReport rep = lwlp::mix_probe(wspec, aspec, q, t_grid, opt.n);
    std::string csv = "t,r,constant_lo,constant_hi,growth\n";
    std::printf("%8s %8s %14s %14s %10s\n", "t", "r=tq", "alpha @ N", "alpha @ 2N", "growth");
    json rows = json::array();
    for (const auto& row : rep.rows) {
        csv += fmt(row.t) + "," + fmt(row.r) + "," + fmt(row.constant_lo) + ","
             + fmt(row.constant_hi) + "," + fmt(row.growth) + "\n";
        rows.push_back({{"t", row.t}, {"r", row.r}, {"lo", row.constant_lo},
                        {"hi", row.constant_hi}, {"growth", row.growth}});
        std::printf("%8g %8g %14.6g %14.6g %10.4f\n", row.t, row.r, row.constant_lo,
                    row.constant_hi, row.growth);
    }
    lwlp::write_text_file(opt.path("lemma1.csv"), csv);
    json out;
    out["q"] = q;
    out["n_lo"] = rep.n_lo;
    out["n_hi"] = rep.n_hi;
    out["rows"] = rows;
    lwlp::write_text_file(opt.path("lemma1.json"), out.dump(2) + "\n");
}

void cmd_lemma4(Options& opt)
{
    opt.echo("lemma4");
    const lwlp::WeightSpec spec = opt.wspec("weight", "cosine:c=2");
    const lwlp::Weight w = lwlp::build_weight(spec, opt.n);
    const std::vector<double> p_grid = opt.grid("p_grid", {1.25, 1.5, 1.75});
    std::string csv = "p,c,a,b,alpha_p,a1,worst_margin,pass\n";
    std::printf("%8s %10s %10s %10s %12s %12s %14s %6s\n", "p", "c", "a", "b", "alpha_p", "A_1",
                "margin", "pass");
    json rows = json::array();
    for (double p : p_grid) {
        const lwlp::Lemma4Report r = lwlp::lemma4_certificate(w, p);
        csv += fmt(r.p) + "," + fmt(r.c) + "," + fmt(r.a) + "," + fmt(r.b) + "," + fmt(r.alpha_p)
             + "," + fmt(r.a1) + "," + fmt(r.worst_margin) + "," + (r.pass ? "1" : "0") + "\n";
        rows.push_back({{"p", r.p}, {"c", r.c}, {"a", r.a}, {"b", r.b}, {"alpha_p", r.alpha_p},
                        {"a1", r.a1}, {"margin", r.worst_margin}, {"pass", r.pass}});
        std::printf("%8g %10.6f %10.6f %10.6f %12.6g %12.6g %14.6g %6s\n", r.p, r.c, r.a, r.b,
                    r.alpha_p, r.a1, r.worst_margin, r.pass ? "yes" : "no");
    }
    lwlp::write_text_file(opt.path("lemma4.csv"), csv);
    json out;
    out["weight"] = spec.name;
    out["rows"] = rows;
    lwlp::write_text_file(opt.path("lemma4.json"), out.dump(2) + "\n");
}

void cmd_theorem2_sweep(Options& opt)
{
    opt.echo("theorem2-sweep");
    opt.require_seed();
    const lwlp::WeightSpec wspec = opt.wspec("weight", "cosine:c=3");
    const lwlp::WeightSpec aspec = opt.wspec("aweight", "cosine:c=2");
    const std::size_t trials = opt.config.value("trials", std::size_t{100});
    const lwlp::Weight w = lwlp::build_weight(wspec, opt.n);
    const lwlp::Weight a = lwlp::build_weight(aspec, opt.n);
    lwlp::Rng rng(opt.seed);
    std::string csv = "trial,ratio\n";
    double mx = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const lwlp::Partition p = lwlp::random_positive_partition(opt.n, rng);
        std::vector<lwlp::SampledFunction> fs;
        for (const auto& iv : p.intervals())
            fs.push_back(lwlp::random_band_function(opt.n, iv.a, iv.b, rng));
        const double r = lwlp::theorem2_ratio(lwlp::FunctionSequence(std::move(fs)), p, a, w);
        mx = std::max(mx, r);
        csv += std::to_string(t) + "," + fmt(r) + "\n";
    }
    lwlp::write_text_file(opt.path("theorem2.csv"), csv);
    json rep;
    rep["n"] = opt.n;
    rep["seed"] = opt.seed;
    rep["trials"] = trials;
    rep["max_ratio"] = mx;
    lwlp::write_text_file(opt.path("theorem2.json"), rep.dump(2) + "\n");
    std::printf("%-10s %zu\n%-10s %s\n", "trials", trials, "max ratio", fmt(mx).c_str());
}

void cmd_regularize(Options& opt)
{
    opt.echo("regularize");
    const lwlp::Partition p = opt.partition_or_dyadic();
    std::vector<lwlp::FreqInterval> nonneg;
    for (const auto& iv : p.intervals())
        if (iv.a >= 0)
            nonneg.push_back(iv);
    const lwlp::DecompositionPlan plan = lwlp::regularize_partition(lwlp::Partition(nonneg));
    const lwlp::PlanValidation val = lwlp::validate_plan(plan);

    std::string csv = "piece,src,route,cut,support_a,support_b,group,s_class,s_shift\n";
    std::size_t shorts = 0, analytic = 0, reversed = 0;
    for (std::size_t i = 0; i < plan.pieces.size(); ++i) {
        const auto& pc = plan.pieces[i];
        csv += std::to_string(i) + "," + std::to_string(pc.src) + "," + lwlp::route_name(pc.route)
             + "," + std::to_string(pc.cut_index) + "," + std::to_string(pc.support.a) + ","
             + std::to_string(pc.support.b) + "," + std::to_string(pc.group) + ","
             + std::to_string(pc.s_class) + "," + std::to_string(pc.s_shift) + "\n";
        if (pc.route == lwlp::PieceRoute::Short) ++shorts;
        else if (pc.route == lwlp::PieceRoute::Analytic) ++analytic;
        else ++reversed;
    }
    lwlp::write_text_file(opt.path("plan.csv"), csv);
    json rep = lwlp::plan_to_json(plan);
    rep["valid"] = val.pass;
    rep["failures"] = val.failures;
    lwlp::write_text_file(opt.path("plan.json"), rep.dump(2) + "\n");
    std::printf("%-14s %zu\n%-14s %zu\n%-14s %zu\n%-14s %d\n%-14s %s\n", "short pieces", shorts,
                "analytic", analytic, "reversed", reversed, "colors", plan.colors_used,
                "validator", val.pass ? "pass" : "FAIL");
}

void cmd_correct_sweep(Options& opt)
{
    opt.echo("correct-sweep");
    opt.require_seed();
    const lwlp::WeightSpec wspec = opt.wspec("weight", "unit");
    const lwlp::WeightSpec aspec = opt.wspec("aweight", "unit");
    const lwlp::Weight w = lwlp::build_weight(wspec, opt.n);
    const lwlp::Weight a = lwlp::build_weight(aspec, opt.n);
    const lwlp::Partition p = opt.partition_or_dyadic();
    const std::string strategy = opt.config.value("strategy", std::string("zero-offenders"));

    // |f| <= w pointwise: uniform draw from the disk of radius w at each sample
    lwlp::Rng rng(opt.seed);
    std::vector<lwlp::cplx> v(opt.n);
    for (std::size_t m = 0; m < opt.n; ++m) {
        const double r = w[m] * std::sqrt(rng.uniform());
        const double th = lwlp::kTwoPi * rng.uniform();
        v[m] = lwlp::cplx(r * std::cos(th), r * std::sin(th));
    }
    const lwlp::SampledFunction f{std::move(v)};

    std::vector<double> b_grid;
    if (opt.config.contains("b_grid")) {
        b_grid = opt.grid("b_grid", {});
    } else {
        const double top = lwlp::detail::pointwise_bound(lwlp::square_function(f, p), w);
        for (int i = 0; i < 16; ++i)
            b_grid.push_back(top * 0.05 * std::pow(20.0, i / 15.0)); // 0.05*top .. top
    }
    const lwlp::SweepCurve curve = lwlp::sweep(f, w, a, p, b_grid, strategy);
    std::string csv = "B_target,epsilon,B_achieved,iterations,converged\n";
    std::printf("%14s %14s %14s %6s %5s\n", "B_target", "epsilon", "B_achieved", "iters", "conv");
    for (const auto& row : curve.rows) {
        csv += fmt(row.b_target) + "," + fmt(row.epsilon) + "," + fmt(row.b_achieved) + ","
             + std::to_string(row.iterations) + "," + (row.converged ? "1" : "0") + "\n";
        std::printf("%14.6g %14.6g %14.6g %6zu %5s\n", row.b_target, row.epsilon, row.b_achieved,
                    row.iterations, row.converged ? "yes" : "no");
    }
    lwlp::write_text_file(opt.path("correct_sweep.csv"), csv);
    json rep;
    rep["n"] = opt.n;
    rep["seed"] = opt.seed;
    rep["strategy"] = strategy;
    rep["fit_done"] = curve.fit_done;
    rep["fit_slope"] = curve.fit_slope;
    rep["fit_residual"] = curve.fit_residual;
    lwlp::write_text_file(opt.path("correct_sweep.json"), rep.dump(2) + "\n");
    if (curve.fit_done)
        std::printf("fit: B_achieved ~ %s * (1 + |log eps|), residual %s\n",
                    fmt(curve.fit_slope).c_str(), fmt(curve.fit_residual).c_str());
    else
        std::printf("fit: skipped (fewer than two corrected rows)\n");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Weighted Littlewood-Paley laboratory on the discretized circle"};
    app.require_subcommand(1);

    Options opt;
    std::vector<CLI::App*> cmds;
    for (const char* name : {"sigma", "weights", "lemma1", "lemma4", "theorem2-sweep",
                             "regularize", "correct-sweep"}) {
        CLI::App* c = app.add_subcommand(name);
        c->add_option("--n", opt.n, "grid size (power of two, >= 8)");
        c->add_option("--seed", opt.seed, "RNG seed");
        c->add_option("--config", opt.config_path, "JSON config file; flags override");
        c->add_option("--out", opt.out_dir, "output directory");
        c->add_option("--weight", opt.weight_specs, "weight catalog string(s): w first, then a");
        c->add_option("--partition", opt.partition_json, "partition as JSON [[a,b],...]");
        cmds.push_back(c);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CLI::App* active = app.get_subcommands().front();
        opt.finalize(*active);
        const std::string name = active->get_name();
        if (name == "sigma") cmd_sigma(opt);
        else if (name == "weights") cmd_weights(opt);
        else if (name == "lemma1") cmd_lemma1(opt);
        else if (name == "lemma4") cmd_lemma4(opt);
        else if (name == "theorem2-sweep") cmd_theorem2_sweep(opt);
        else if (name == "regularize") cmd_regularize(opt);
        else cmd_correct_sweep(opt);
    } catch (const lwlp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
