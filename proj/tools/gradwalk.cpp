// gradwalk: command-line driver for the gradient-walk verification lab.
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gradwalk/analysis.hpp"
#include "gradwalk/diffusion_engine.hpp"
#include "gradwalk/errors.hpp"
#include "gradwalk/experiment.hpp"
#include "gradwalk/parallel.hpp"
#include "gradwalk/pharmonic_catalog.hpp"
#include "gradwalk/step_measures.hpp"
#include "gradwalk/walk_engine.hpp"

using namespace gradwalk;

namespace {

struct CommonArgs {
    std::string fn = "linear";
    double p = 2.0;
    std::size_t n = 2;
    std::string eps = "0.05";
    std::optional<double> eta;
    std::optional<double> a_prime;
    std::string regime = "eta";
    std::uint64_t samples = 10'000;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    std::string out;
    std::string x0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--fn", a.fn, "catalog id: linear, radial, saddle, hpow:k")->capture_default_str();
    cmd->add_option("--p", a.p, "exponent p")->capture_default_str();
    cmd->add_option("--n", a.n, "dimension")->capture_default_str();
    cmd->add_option("--eps", a.eps, "step size, or comma list for sweeps")->capture_default_str();
    cmd->add_option("--eta", a.eta, "gradient cutoff for regime eta");
    cmd->add_option("--a-prime", a.a_prime, "cutoff exponent for regime rate");
    cmd->add_option("--regime", a.regime, "eta, rate or zeroset")->capture_default_str();
    cmd->add_option("--samples", a.samples, "walks or paths per estimate")->capture_default_str();
    cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
    cmd->add_option("--workers", a.workers, "threads (0: all cores)")->capture_default_str();
    cmd->add_option("--out", a.out, "CSV output path");
}

Point parse_point(std::string const& text, std::size_t n) {
    if (text.empty()) return Point::zero(n);
    std::vector<double> const c = parse_real_list(text);
    if (c.size() != n) throw ConfigError("--x0 needs " + std::to_string(n) + " coordinates");
    return Point::from_span(c);
}

RegimeConfig make_regime(CommonArgs const& a, double eps) {
    double const beta = beta_weight(a.p, static_cast<int>(a.n));
    switch (parse_regime(a.regime)) {
    case Regime::EtaCut:
        if (!a.eta) throw ConfigError("regime eta needs --eta");
        return RegimeConfig::eta_cut(eps, beta, *a.eta);
    case Regime::RateCut: return RegimeConfig::rate_cut(eps, beta, a.a_prime.value_or(kDefaultAPrime));
    case Regime::ZeroSetUniform: return RegimeConfig::zero_set_uniform(eps, beta);
    }
    throw ConfigError("unknown regime");
}

double single_eps(std::string const& text) {
    std::vector<double> const e = parse_real_list(text);
    if (e.size() != 1) throw ConfigError("--eps takes a single value here");
    return e.front();
}

void print_estimate(EstimateResult const& r, double truth) {
    std::printf("estimate=%.10g stderr=%.4g u(x0)=%.10g abs_error=%.4g samples=%llu mean_steps=%.6g seed=%llu\n",
                r.mean, r.std_error, truth, std::abs(r.mean - truth),
                static_cast<unsigned long long>(r.n_samples), r.mean_steps,
                static_cast<unsigned long long>(r.seed));
}

int cmd_catalog() {
    for (auto const& id : catalog_ids()) {
        TestFunction const fn = TestFunction::from_id(id, 2, id == "radial" ? 3.0 : 2.0);
        PRange const r = fn.p_range();
        std::printf("%-8s p in [%g, %g]  zero set size %zu (n = 2)\n", id.c_str(), r.min, r.max,
                    fn.zero_set().size());
    }
    return 0;
}

int cmd_value(CommonArgs const& a, double tol) {
    TestFunction const fn = TestFunction::from_id(a.fn, a.n, a.p);
    Point const x0 = parse_point(a.x0, a.n);
    RegimeConfig const cfg = make_regime(a, single_eps(a.eps));
    EstimateResult const r = estimate_value(fn, cfg, x0, a.samples, a.seed, {a.workers, kDefaultStepCap});
    double const truth = fn.eval(x0);
    print_estimate(r, truth);
    bool const ok = std::abs(r.mean - truth) <= tol + 3.0 * r.std_error;
    std::printf("%s abs_error=%.4g bound=%.4g\n", ok ? "PASS" : "FAIL", std::abs(r.mean - truth),
                tol + 3.0 * r.std_error);
    return ok ? 0 : 1;
}

int cmd_sweep(CommonArgs const& a, std::string const& config_path, bool explicit_flags) {
    ExperimentConfig cfg;
    if (!config_path.empty()) {
        if (explicit_flags) throw ConfigError("--config cannot be combined with sweep flags");
        cfg = load_config(config_path);
    } else {
        cfg.fn_id = a.fn;
        cfg.p = a.p;
        cfg.n = a.n;
        cfg.eps = parse_real_list(a.eps);
        cfg.regime = parse_regime(a.regime);
        cfg.eta = a.eta;
        cfg.a_prime = a.a_prime;
        cfg.samples = a.samples;
        cfg.seed = a.seed;
        cfg.workers = a.workers;
        cfg.out = a.out;
    }
    ExperimentReport const rep = run_experiment(cfg);
    for (auto const& s : rep.sweep)
        std::printf("eps=%-10g sup_error=%.6g max_stderr=%.4g\n", s.epsilon, s.sup_error, s.max_std_error);
    if (rep.fitted_rate)
        std::printf("fitted rate %.4f\n", *rep.fitted_rate);
    else
        std::printf("fitted rate: fewer than 3 errors above %g stderr, not fitted\n", kSignalToNoise);
    std::printf("drift: %zu configurations, %zu violations\n", rep.drift.count, rep.drift.violations);
    if (rep.residual.ran) {
        std::printf("residual ratios:");
        for (double r : rep.residual.ratios) std::printf(" %.4g", r);
        std::printf("\n");
    } else {
        std::printf("residual: %s\n", rep.residual.note.c_str());
    }
    std::printf("%s\n", rep.summary_line().c_str());
    return rep.passed ? 0 : 1;
}

int cmd_drift(std::vector<int> const& dims, std::uint64_t count, std::uint64_t seed) {
    DriftSuiteSummary const s = run_drift_suite(dims, count, seed);
    DriftReport const& w = s.worst;
    std::printf("configurations=%zu violations=%zu C(n):", s.count, s.violations);
    for (int n : dims) std::printf(" C(%d)=%.10g", n, drift_constant(n));
    std::printf("\nworst: |x|=%.6g eps=%.6g beta=%.6g lhs=%.12g rhs=%.12g\n", w.x.norm(), w.epsilon, w.beta,
                w.lhs, w.rhs);
    bool const ok = s.violations == 0;
    std::printf("%s worst_margin=%.6g\n", ok ? "PASS" : "FAIL", s.worst_margin);
    return ok ? 0 : 1;
}

/// Monte Carlo estimate of the residual for n > 4, where no ball rule exists.
int residual_monte_carlo(TestFunction const& fn, Point const& x, double p, std::vector<double> const& eps,
                         std::uint64_t samples, std::uint64_t seed) {
    Point g = fn.gradient(x);
    if (!(g.norm() > kGradZeroTol)) throw UndefinedOperatorError("residual needs a nonvanishing gradient");
    g *= 1.0 / g.norm();
    double const beta = beta_weight(p, static_cast<int>(fn.dim()));
    double const ux = fn.eval(x);
    std::printf("Monte Carlo fallback (n = %zu): ratio tests need residual above 4 stderr\n", fn.dim());
    for (std::size_t k = 0; k < eps.size(); ++k) {
        StepMeasure const m = StepMeasure::mu1(x, g, eps[k], beta);
        Rng rng = make_stream(seed, k);
        double sum = 0.0, sum_sq = 0.0;
        for (std::uint64_t i = 0; i < samples; ++i) {
            double const v = fn.eval(sample(m, rng)) - ux;
            sum += v;
            sum_sq += v * v;
        }
        double const mean = sum / static_cast<double>(samples);
        double const var = (sum_sq - sum * mean) / static_cast<double>(samples - 1);
        std::printf("eps=%-10g residual=%.6g stderr=%.4g\n", eps[k], std::abs(mean),
                    std::sqrt(var / static_cast<double>(samples)));
    }
    std::printf("PASS (informational)\n");
    return 0;
}

int cmd_residual(CommonArgs const& a) {
    TestFunction const fn = TestFunction::from_id(a.fn, a.n, a.p);
    Point const x = parse_point(a.x0, a.n);
    std::vector<double> eps = parse_real_list(a.eps);
    if (eps.size() < 2) eps = {0.1, 0.05, 0.025, 0.0125};
    if (a.n > 4) return residual_monte_carlo(fn, x, a.p, eps, a.samples, a.seed);
    ResidualSummary const s = residual_order_check(fn, x, a.p, eps);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        std::printf("eps=%-10g residual=%.6g", eps[i], s.residuals[i]);
        if (i > 0) std::printf(" ratio=%.4g", s.ratios[i - 1]);
        std::printf("\n");
    }
    std::printf("%s\n", s.passed ? "PASS" : "FAIL");
    return s.passed ? 0 : 1;
}

int cmd_diffusion(CommonArgs const& a, double h) {
    TestFunction const fn = TestFunction::from_id(a.fn, a.n, a.p);
    Point const x0 = parse_point(a.x0, a.n);
    DiffusionConfig cfg;
    cfg.p = a.p;
    cfg.h = h;
    cfg.seed = a.seed;
    EstimateResult const r = estimate_value_ct(fn, cfg, x0, a.samples, a.workers);
    double const truth = fn.eval(x0);
    print_estimate(r, truth);
    std::printf("mean exit time=%.6g\n", r.mean_steps * h);
    // exit bias of Euler-Maruyama is O(sqrt(h)); 2 sqrt(h) is 0.02 at h = 1e-4
    double const bound = 2.0 * std::sqrt(h) + 3.0 * r.std_error;
    bool const ok = std::abs(r.mean - truth) <= bound;
    std::printf("%s abs_error=%.4g bound=%.4g\n", ok ? "PASS" : "FAIL", std::abs(r.mean - truth), bound);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gradient-walk and diffusion estimates of p-harmonic functions"};
    app.require_subcommand(1);

    app.add_subcommand("catalog", "list catalog functions");

    CommonArgs value_args;
    double value_tol = 0.0;
    auto* value = app.add_subcommand("value", "walk estimate of u at one point");
    add_common(value, value_args);
    value->add_option("--x0", value_args.x0, "start point, comma separated (default origin)");
    value->add_option("--tol", value_tol, "allowed bias on top of 3 stderr")->capture_default_str();

    CommonArgs sweep_args;
    std::string config_path;
    auto* sweep = app.add_subcommand("sweep", "eps sweep over the default grid with drift and residual checks");
    add_common(sweep, sweep_args);
    sweep->add_option("--config", config_path, "key = value config file");

    std::vector<int> drift_dims{2, 3};
    std::uint64_t drift_count = 1000, drift_seed = 1;
    auto* drift = app.add_subcommand("drift-check", "randomized expected-distance drift inequality");
    drift->add_option("--n", drift_dims, "dimensions")->delimiter(',')->capture_default_str();
    drift->add_option("--samples", drift_count, "configurations per dimension")->capture_default_str();
    drift->add_option("--seed", drift_seed, "random seed")->capture_default_str();

    CommonArgs residual_args;
    residual_args.fn = "radial";
    residual_args.p = 3.0;
    residual_args.eps = "0.1,0.05,0.025,0.0125";
    residual_args.samples = 1'000'000;
    auto* residual = app.add_subcommand("residual-check", "decay order of the one-step expansion residual");
    add_common(residual, residual_args);
    residual->add_option("--x0", residual_args.x0, "evaluation point (default origin)");

    CommonArgs diff_args;
    double h = 1e-4;
    auto* diffusion = app.add_subcommand("diffusion", "Euler-Maruyama estimate of E[u(X_tau)]");
    diffusion->set_help_flag("--help", "print this help message and exit");
    add_common(diffusion, diff_args);
    diffusion->add_option("--x0", diff_args.x0, "start point (default origin)");
    diffusion->add_option("--h", h, "time step")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("catalog")) return cmd_catalog();
        if (value->parsed()) return cmd_value(value_args, value_tol);
        if (sweep->parsed()) {
            bool flags = false;
            for (auto const* opt : sweep->get_options())
                if (opt->get_name() != "--config" && opt->get_name() != "--help" && opt->count() > 0) flags = true;
            return cmd_sweep(sweep_args, config_path, flags);
        }
        if (drift->parsed()) return cmd_drift(drift_dims, drift_count, drift_seed);
        if (residual->parsed()) return cmd_residual(residual_args);
        if (diffusion->parsed()) return cmd_diffusion(diff_args, h);
    } catch (std::exception const& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
