#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "gradwalk/errors.hpp"
#include "gradwalk/step_measures.hpp"
#include "oracles.hpp"

using namespace gradwalk;

TEST_CASE("beta weight") {
    CHECK(beta_weight(2.0, 5) == 1.0);
    CHECK(beta_weight(4.0, 2) == doctest::Approx(4.0 / 6.0).epsilon(1e-15));
    CHECK(beta_weight(12.0, 2) == doctest::Approx(0.2857143).epsilon(1e-7));
    for (int n = 2; n <= 10; ++n) CHECK(beta_weight(2.0, n) == 1.0);
    CHECK_THROWS_AS(beta_weight(1.9, 2), ParameterError);
    CHECK_THROWS_AS(beta_weight(3.0, 1), ParameterError);
}

TEST_CASE("measure construction") {
    CHECK_THROWS_AS(StepMeasure::mu1({0.0, 0.0}, {1.0, 1.0}, 0.1, 0.5), ParameterError);
    CHECK_THROWS_AS(StepMeasure::mu1({0.0, 0.0}, {1.0, 0.0}, 0.0, 0.5), ParameterError);
    CHECK_THROWS_AS(StepMeasure::mu1({0.0, 0.0}, {1.0, 0.0}, 0.1, 0.0), ParameterError);
    CHECK_THROWS_AS(StepMeasure::uniform_ball({0.0, 0.0}, -0.1), ParameterError);
    CHECK(StepMeasure::mu2({0.0, 0.0}, 0.1).direction == Point{1.0, 0.0});
    CHECK(StepMeasure::mu2({0.0, -0.4}, 0.1).direction == Point{0.0, -1.0});
}

TEST_CASE("mu2 is a deterministic radial push") {
    Rng rng = make_stream(1, 0);
    auto const m = StepMeasure::mu2({0.5, 0.0}, 0.1);
    for (int i = 0; i < 100; ++i) {
        Point const y = sample(m, rng);
        CHECK(y[0] == doctest::Approx(0.6).epsilon(1e-15));
        CHECK(y[1] == 0.0);
    }
    // at the origin the push is along e1
    Point const y0 = sample(StepMeasure::mu2({0.0, 0.0, 0.0}, 0.2), rng);
    CHECK(y0 == Point{0.2, 0.0, 0.0});
}

TEST_CASE("mu1 with beta one stays strictly inside the ball") {
    Rng rng = make_stream(2, 0);
    Point const c{0.1, 0.2};
    auto const m = StepMeasure::mu1(c, {0.0, 1.0}, 0.1, 1.0);
    for (int i = 0; i < 100000; ++i) CHECK(distance(sample(m, rng), c) < 0.1);
}

TEST_CASE("support lies in the closed eps ball") {
    Rng rng = make_stream(3, 0);
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        Point c = Point::zero(n);
        c[0] = 0.3;
        Point const d = Point::unit(n, n - 1);
        for (auto const& m : {StepMeasure::mu1(c, d, 0.07, 0.4), StepMeasure::mu2(c, 0.07),
                              StepMeasure::uniform_ball(c, 0.07)})
            for (int i = 0; i < 20000; ++i) CHECK(distance(sample(m, rng), c) <= 0.07 * (1.0 + 1e-14));
    }
}

TEST_CASE("uniform ball passes chi-square tests") {
    for (std::size_t n : {2u, 3u, 4u, 6u}) {
        CAPTURE(n);
        Rng rng = make_stream(4, n);
        Point c = Point::zero(n);
        c[0] = -0.2;
        std::vector<Point> draws;
        draws.reserve(1'000'000);
        for (int i = 0; i < 1'000'000; ++i) draws.push_back(sample_uniform_ball(c, 0.1, rng));
        CHECK(oracle::radial_shell_pvalue(draws, c, 0.1) > 0.001);
        CHECK(oracle::half_space_pvalue(draws, c) > 0.001);
    }
}

TEST_CASE("mu1 atom frequency is binomial with 1 - beta") {
    for (double beta : {0.25, 0.6, 0.9}) {
        Rng rng = make_stream(5, static_cast<std::uint64_t>(beta * 100));
        Point const c{0.1, -0.3, 0.2};
        Point const d = (1.0 / std::sqrt(3.0)) * Point{1.0, 1.0, 1.0};
        auto const m = StepMeasure::mu1(c, d, 0.05, beta);
        Point const plus = c + 0.05 * d, minus = c - 0.05 * d;
        int const trials = 200000;
        int plus_hits = 0, minus_hits = 0;
        for (int i = 0; i < trials; ++i) {
            Point const y = sample(m, rng);
            if (distance(y, plus) < 1e-15) ++plus_hits;
            if (distance(y, minus) < 1e-15) ++minus_hits;
        }
        double const q = 1.0 - beta;
        double const sd = std::sqrt(trials * q * beta);
        CHECK(std::abs(plus_hits + minus_hits - trials * q) < 4.0 * sd);
        double const sd_half = std::sqrt(trials * q / 2 * (1 - q / 2));
        CHECK(std::abs(plus_hits - trials * q / 2) < 4.0 * sd_half);
    }
}

TEST_CASE("quadrature normalization and symmetry") {
    auto one = [](Point const&) { return 1.0; };
    for (std::size_t n : {2u, 3u, 4u}) {
        Point c = Point::zero(n);
        c[n - 1] = 0.4;
        Point const d = Point::unit(n, 0);
        for (auto const& m : {StepMeasure::mu1(c, d, 0.1, 0.3), StepMeasure::mu2(c, 0.1),
                              StepMeasure::uniform_ball(c, 0.1), StepMeasure::mu1(c, d, 0.1, 1.0)})
            CHECK(std::abs(expectation_quadrature(m, one) - 1.0) < 1e-12);

        Rng rng = make_stream(6, n);
        for (int i = 0; i < 50; ++i) {
            Point const a = oracle::random_unit(n, rng);
            Point const dir = oracle::random_unit(n, rng);
            double const b = 0.1 + 0.9 * std::uniform_real_distribution<double>()(rng);
            auto f = [&](Point const& y) { return a.dot(y) + 0.7; };
            auto const m = StepMeasure::mu1(c, dir, 0.2, b);
            CHECK(std::abs(expectation_quadrature(m, f) - f(c)) < 1e-10);
        }
    }
}

TEST_CASE("quadrature of |y| over the centred ball") {
    for (std::size_t n : {2u, 3u, 4u}) {
        auto const m = StepMeasure::mu1(Point::zero(n), Point::unit(n, 0), 0.1, 1.0);
        // the kink at 0 sits on the radial endpoint, so the radial rule is exact
        double const v = expectation_quadrature(m, [](Point const& y) { return y.norm(); });
        CHECK(v == doctest::Approx(n * 0.1 / (n + 1.0)).epsilon(1e-12));
    }
    auto const m2 = StepMeasure::mu1({0.0, 0.0}, {1.0, 0.0}, 0.1, 1.0);
    CHECK(expectation_quadrature(m2, [](Point const& y) { return y.norm(); }) ==
          doctest::Approx(0.0666667).epsilon(1e-6));
}

TEST_CASE("quadrature in high dimension is unsupported") {
    auto const m = StepMeasure::uniform_ball(Point::zero(5), 0.1);
    CHECK_THROWS_AS(expectation_quadrature(m, [](Point const&) { return 1.0; }), UnsupportedDimensionError);
    // pure atoms need no ball rule
    CHECK(expectation_quadrature(StepMeasure::mu2(Point::zero(5), 0.1), [](Point const& y) { return y[0]; }) ==
          doctest::Approx(0.1));
}

TEST_CASE("sampler agrees with quadrature") {
    for (std::size_t n : {2u, 3u, 4u}) {
        CAPTURE(n);
        Point c = Point::zero(n);
        c[0] = 0.2;
        c[1] = -0.1;
        Point const d = (1.0 / std::sqrt(2.0)) * (Point::unit(n, 0) + Point::unit(n, 1));
        auto f = [](Point const& y) { return std::exp(y[0]) * std::cos(3.0 * y[1]) + y.norm_sq() * y[0]; };
        for (auto const& m : {StepMeasure::mu1(c, d, 0.15, 0.55), StepMeasure::uniform_ball(c, 0.15)}) {
            double const q = expectation_quadrature(m, f);
            Rng rng = make_stream(7, n);
            double sum = 0.0, sq = 0.0;
            int const draws = 1'000'000;
            for (int i = 0; i < draws; ++i) {
                double const v = f(sample(m, rng));
                sum += v;
                sq += v * v;
            }
            double const mean = sum / draws;
            double const se = std::sqrt((sq / draws - mean * mean) / draws);
            CHECK(std::abs(mean - q) < 4.0 * se);
        }
    }
}

TEST_CASE("regime selection") {
    auto const lin = TestFunction::linear_x1(2);
    auto const sad = TestFunction::saddle(2);

    StepMeasure const a = select_measure(RegimeConfig::eta_cut(0.05, 0.5, 0.1), lin, {0.2, 0.3});
    CHECK(a.kind == MeasureKind::Mu1);
    CHECK(a.direction == Point{1.0, 0.0});
    CHECK(a.beta == 0.5);

    CHECK(select_measure(RegimeConfig::zero_set_uniform(0.05, 1.0), sad, {0.0, 0.0}).kind ==
          MeasureKind::UniformBall);
    CHECK(select_measure(RegimeConfig::zero_set_uniform(0.05, 1.0), sad, {0.01, 0.0}).kind == MeasureKind::Mu1);

    StepMeasure const c = select_measure(RegimeConfig::eta_cut(0.05, 1.0, 0.1), sad, {0.01, 0.0});
    CHECK(c.kind == MeasureKind::Mu2);
    CHECK(c.direction == Point{1.0, 0.0});

    // ties go to Mu1: |grad| = 2 * 0.05 = 0.1
    CHECK(select_measure(RegimeConfig::eta_cut(0.05, 1.0, 0.1), sad, {0.05, 0.0}).kind == MeasureKind::Mu1);

    // rate regime: threshold eps^a'
    auto const rate = RegimeConfig::rate_cut(0.01, 1.0, 0.5);
    CHECK(rate.threshold() == doctest::Approx(0.1));
    CHECK(select_measure(rate, sad, {0.06, 0.0}).kind == MeasureKind::Mu1);
    CHECK(select_measure(rate, sad, {0.04, 0.0}).kind == MeasureKind::Mu2);
}

TEST_CASE("regime validation") {
    CHECK_THROWS_AS(RegimeConfig::eta_cut(0.3, 0.5, 0.1), ParameterError);
    CHECK_THROWS_AS(RegimeConfig::eta_cut(0.1, 0.5, 0.0), ParameterError);
    CHECK_THROWS_AS(RegimeConfig::rate_cut(0.1, 0.5, 1.0), ParameterError);
    CHECK_THROWS_AS(RegimeConfig::rate_cut(0.1, 1.5, 0.2), ParameterError);
    RegimeConfig bad = RegimeConfig::eta_cut(0.1, 0.5, 0.1);
    bad.a_prime = 0.3;
    CHECK_THROWS_AS(bad.validate(), ParameterError);

    CHECK(parse_regime("eta") == Regime::EtaCut);
    CHECK(parse_regime("rate") == Regime::RateCut);
    CHECK(parse_regime("zeroset") == Regime::ZeroSetUniform);
    CHECK(to_string(Regime::RateCut) == "rate");
    CHECK_THROWS_AS(parse_regime("other"), ParameterError);
}
