#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "gradwalk/errors.hpp"
#include "gradwalk/experiment.hpp"

using namespace gradwalk;

namespace {

ExperimentConfig parse(std::string const& text) {
    std::istringstream in(text);
    return parse_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
    ExperimentConfig const c = parse(
        "# sweep of the radial function\n"
        "fn = radial\n"
        "p = 3\n"
        "n = 2\n"
        "eps = 0.1, 0.05,0.025   # decreasing\n"
        "regime = rate\n"
        "a-prime = 0.3\n"
        "samples = 1e4\n"
        "seed = 17\n"
        "workers = 2\n"
        "step-cap = 5000000\n"
        "out = sweep.csv\n"
        "\n");
    CHECK(c.fn_id == "radial");
    CHECK(c.p == 3.0);
    CHECK(c.eps == std::vector<double>{0.1, 0.05, 0.025});
    CHECK(c.regime == Regime::RateCut);
    CHECK(c.a_prime == 0.3);
    CHECK(c.samples == 10'000);
    CHECK(c.seed == 17);
    CHECK(c.workers == 2);
    CHECK(c.step_cap == 5'000'000);
    CHECK(c.out == "sweep.csv");
    CHECK(c.regime_for(0.05).threshold() == doctest::Approx(std::pow(0.05, 0.3)));

    ExperimentConfig const d = parse("fn = saddle\neps = 0.08\nregime = zeroset\ngrad-zero-tol = 1e-10\n");
    CHECK(d.regime_for(0.08).regime == Regime::ZeroSetUniform);
    CHECK(d.regime_for(0.08).grad_zero_tol == 1e-10);
    CHECK(d.regime_for(0.08).beta == 1.0);

    ExperimentConfig const r = parse("fn = radial\np = 3\neps = 0.1\nregime = rate\n");
    CHECK(r.regime_for(0.1).a_prime == kDefaultAPrime);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse("fn = linear\nregime = eta\neta = 0.1\n"), ConfigError);  // no eps
    CHECK_THROWS_AS(parse("fn = linear\neps =\nregime = eta\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("fn = linear\neps = 0.1\neta = 0.1\ncolour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse("fn = linear\nfn = saddle\neps = 0.1\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("fn linear\n"), ConfigError);
    CHECK_THROWS_AS(parse("eps = 0.05, 0.1\neta = 0.1\n"), ConfigError);  // increasing
    CHECK_THROWS_AS(parse("eps = 0.3\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("eps = 0.1, x\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("eps = 0.1\nregime = eta\n"), ConfigError);  // eta missing
    CHECK_THROWS_AS(parse("eps = 0.1\nregime = eta\neta = 0.1\na-prime = 0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse("eps = 0.1\nregime = rate\na-prime = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("eps = 0.1\nregime = spiral\n"), ConfigError);
    CHECK_THROWS_AS(parse("fn = saddle\np = 3\neps = 0.1\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("p = 1.5\neps = 0.1\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("n = 9\neps = 0.1\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("samples = 10\neps = 0.1\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse("samples = -5\neps = 0.1\neta = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/cfg.txt"), ConfigError);
}

TEST_CASE("csv round trip") {
    std::vector<CsvRecord> rows{
        {"radial", "eta", 3.0, 2, 0.05, {0.5, -0.5}, 1.0 / 3.0, 1e-3 * std::sqrt(2.0), 0.1 / 7.0, 10000, 412.3456789,
         std::numeric_limits<std::uint64_t>::max()},
        {"hpow:3", "zeroset", 2.0, 3, 0.025, {0.0, 0.0, 0.1}, -std::exp(-20.0), 0.0, 5e-300, 100, 1.0, 0},
    };
    std::stringstream ss;
    write_csv(ss, rows);
    ss << "# trailing summary line\n";
    std::string const text = ss.str();
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    std::istringstream in(text);
    CHECK(read_csv(in) == rows);

    std::istringstream bad("fn_id,regime\nx,y\n");
    CHECK_THROWS_AS(read_csv(bad), ConfigError);
}

TEST_CASE("linear sweep reproduces the function") {
    ExperimentConfig cfg = parse("fn = linear\np = 3\neps = 0.2, 0.1, 0.05\nregime = eta\neta = 0.1\nsamples = 2000\n");
    auto const path = std::filesystem::temp_directory_path() / "gradwalk_linear_sweep.csv";
    cfg.out = path.string();
    ExperimentReport const rep = run_experiment(cfg);
    REQUIRE(rep.sweep.size() == 3);
    for (auto const& s : rep.sweep) CHECK(s.sup_error <= 3.0 * s.max_std_error);
    CHECK(rep.rows.size() == 27);
    CHECK(rep.drift.violations == 0);
    CHECK(rep.residual.ran);
    CHECK(rep.passed);
    CHECK(rep.summary_line().rfind("PASS", 0) == 0);

    std::ifstream in(path);
    CHECK(read_csv(in) == rep.rows);
    std::filesystem::remove(path);
}

TEST_CASE("rate sweep of the radial function is pre-asymptotic") {
    // |grad u| <= 0.354 on the unit ball while eps^0.2 >= 0.48, so every step is a radial
    // push; each grid point exits at the same place for all three eps and the errors coincide
    ExperimentConfig const cfg =
        parse("fn = radial\np = 3\neps = 0.1, 0.05, 0.025\nregime = rate\na-prime = 0.2\nsamples = 10000\nseed = 3\n");
    ExperimentReport const rep = run_experiment(cfg);
    REQUIRE(rep.sweep.size() == 3);
    for (auto const& s : rep.sweep) {
        CHECK(s.max_std_error < 1e-12);
        CHECK(s.sup_error == doctest::Approx(rep.sweep.front().sup_error).epsilon(1e-12));
    }
    REQUIRE(rep.fitted_rate.has_value());
    CHECK(std::abs(*rep.fitted_rate) < 1e-9);
    CHECK(rep.residual.passed);
}

// A strictly positive slope needs eps^0.2 below min |grad u|, i.e. eps < 0.0056; the
// listed eps values cannot show it, so the case is reported but allowed to fail.
TEST_CASE("rate sweep of the radial function has a positive slope" * doctest::may_fail()) {
    ExperimentConfig const cfg =
        parse("fn = radial\np = 3\neps = 0.1, 0.05, 0.025\nregime = rate\na-prime = 0.2\nsamples = 10000\nseed = 3\n");
    ExperimentReport const rep = run_experiment(cfg);
    REQUIRE(rep.fitted_rate.has_value());
    CHECK(*rep.fitted_rate > 0.0);
}

TEST_CASE("residual check is skipped where it cannot run") {
    ExperimentConfig const hi = parse("fn = linear\nn = 5\neps = 0.2\neta = 0.5\nsamples = 200\n");
    ExperimentReport const rep = run_experiment(hi);
    CHECK_FALSE(rep.residual.ran);
    CHECK(!rep.residual.note.empty());
    CHECK(rep.passed);
}
