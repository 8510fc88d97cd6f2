#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "gradwalk/errors.hpp"
#include "gradwalk/quadrature.hpp"
#include "oracles.hpp"

using namespace gradwalk;

TEST_CASE("gauss-legendre nodes and weights") {
    auto const r2 = gauss_legendre(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    auto const r3 = gauss_legendre(3);
    CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(std::abs(r3.nodes[1]) < 1e-15);
    CHECK(r3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(r3.weights[0] == doctest::Approx(5.0 / 9.0).epsilon(1e-15));

    // order m integrates x^k exactly for k < 2m
    auto const r = gauss_legendre(10, 0.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        CHECK(s == doctest::Approx(std::pow(2.0, k + 1) / (k + 1)).epsilon(1e-13));
    }
}

TEST_CASE("ball rules integrate monomials") {
    // average of x1^2 over the unit ball is 1/(n+2); of x1^4 is 3/((n+2)(n+4))
    for (std::size_t n : {2u, 3u, 4u}) {
        CAPTURE(n);
        BallRule const& rule = default_ball_rule(n);
        double const wsum = std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0);
        CHECK(std::abs(wsum - 1.0) < 1e-12);
        for (Point const& y : rule.nodes) CHECK(y.norm() <= 1.0 + 1e-15);

        Point const c = Point::zero(n);
        auto avg = [&](auto f) { return ball_average(f, c, 1.0, rule); };
        CHECK(std::abs(avg([](Point const& y) { return y[0]; })) < 1e-15);
        CHECK(avg([](Point const& y) { return y[0] * y[0]; }) == doctest::Approx(1.0 / (n + 2.0)).epsilon(1e-13));
        CHECK(avg([](Point const& y) { return std::pow(y[1], 4); }) ==
              doctest::Approx(3.0 / ((n + 2.0) * (n + 4.0))).epsilon(1e-13));
        CHECK(avg([](Point const& y) { return y[0] * y[0] * y[1] * y[1]; }) ==
              doctest::Approx(1.0 / ((n + 2.0) * (n + 4.0))).epsilon(1e-13));
        CHECK(std::abs(avg([](Point const& y) { return y[0] * y[1] * y[1]; })) < 1e-15);
        // x1^6: 15/((n+2)(n+4)(n+6))
        CHECK(avg([](Point const& y) { return std::pow(y[0], 6); }) ==
              doctest::Approx(15.0 / ((n + 2.0) * (n + 4.0) * (n + 6.0))).epsilon(1e-12));
    }
}

TEST_CASE("ball average translates and scales") {
    Point const c{0.3, -0.2, 0.1};
    double const eps = 0.05;
    double const v = ball_average([&](Point const& y) { return (y - c).norm_sq(); }, c, eps, default_ball_rule(3));
    CHECK(v == doctest::Approx(3.0 * eps * eps / 5.0).epsilon(1e-13));
}

TEST_CASE("unsupported dimensions") {
    CHECK_THROWS_AS(make_ball_rule(5), UnsupportedDimensionError);
    CHECK_THROWS_AS(make_ball_rule(1), UnsupportedDimensionError);
}

TEST_CASE("mean distance over a ball") {
    for (std::size_t n : {2u, 3u, 4u, 5u, 8u}) {
        CAPTURE(n);
        // centred: n eps/(n+1)
        QuadratureValue const q = ball_mean_distance(0.0, 0.1, n);
        CHECK(q.value == doctest::Approx(n * 0.1 / (n + 1.0)).epsilon(1e-12));
        CHECK(q.error_estimate < 1e-12);
    }
    // far away the mean approaches the offset, with a positive correction
    for (std::size_t n : {2u, 3u}) {
        QuadratureValue const q = ball_mean_distance(0.8, 0.1, n);
        CHECK(q.value > 0.8);
        CHECK(q.value < 0.8 + 0.1 * 0.1 / 0.8);
    }
    // n = 3 offset d >= eps has the closed form d + eps^2/(5 d)
    CHECK(ball_mean_distance(0.5, 0.1, 3).value == doctest::Approx(0.5 + 0.01 / 2.5).epsilon(1e-12));
}

TEST_CASE("mean distance agrees with the ball rule and with sampling") {
    std::mt19937_64 rng(5);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (double d : {0.02, 0.09, 0.1, 0.11, 0.4}) {
            CAPTURE(n);
            CAPTURE(d);
            Point x = Point::zero(n);
            x[0] = d;
            double const eps = 0.1;
            double const q = ball_mean_distance(d, eps, n).value;
            // the kink makes the product rule only roughly accurate
            double const rule = ball_average([](Point const& y) { return y.norm(); }, x, eps,
                                             make_ball_rule(n, {40, 60}));
            CHECK(q == doctest::Approx(rule).epsilon(1e-4));
            double sum = 0.0, sq = 0.0;
            int const m = 200000;
            for (int i = 0; i < m; ++i) {
                double const v = (x + oracle::random_in_ball(n, eps, rng)).norm();
                sum += v;
                sq += v * v;
            }
            double const mean = sum / m;
            double const se = std::sqrt((sq / m - mean * mean) / m);
            CHECK(std::abs(mean - q) < 4.0 * se);
        }
    }
}
