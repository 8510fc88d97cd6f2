#include "gradwalk/analysis.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "gradwalk/parallel.hpp"
#include "gradwalk/quadrature.hpp"
#include "gradwalk/step_measures.hpp"

namespace gradwalk {

double drift_constant(int n) {
    if (n < 2) throw ParameterError("drift constant needs n >= 2");
    auto const nd = static_cast<double>(n);
    auto g = [nd](double c) { return (nd - 1.0) / nd * (1.0 - std::pow(c, nd)) * c * c; };

    // golden-section search for the maximum on [0, 1]
    double const invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > 1e-12) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - invphi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + invphi * (b - a);
            gd = g(d);
        }
    }
    return g(0.5 * (a + b));
}

DriftReport check_drift(Point const& x, Point const& nu, double epsilon, double beta) {
    std::size_t const n = x.dim();
    if (nu.dim() != n) throw ParameterError("direction has wrong dimension");
    if (std::abs(nu.norm() - 1.0) > 1e-12) throw ParameterError("direction must be a unit vector");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");

    double const r = x.norm();
    QuadratureValue const ball = ball_mean_distance(r, epsilon, n);
    if (ball.error_estimate > kDriftQuadratureTol)
        throw ToleranceError("ball average of |y| not resolved: error estimate " +
                             std::to_string(ball.error_estimate));

    Point plus = x, minus = x;
    plus.axpy(epsilon, nu);
    minus.axpy(-epsilon, nu);

    DriftReport rep;
    rep.x = x;
    rep.nu = nu;
    rep.epsilon = epsilon;
    rep.beta = beta;
    rep.lhs = 0.5 * (1.0 - beta) * (plus.norm() + minus.norm()) + beta * ball.value;
    rep.rhs = r + drift_constant(static_cast<int>(n)) * beta * epsilon * epsilon / (2.0 * (r + epsilon));
    rep.margin = rep.lhs - rep.rhs;
    rep.quadrature_error = beta * ball.error_estimate;
    return rep;
}

DriftSuiteSummary run_drift_suite(std::span<const int> dims, std::size_t count, std::uint64_t seed) {
    DriftSuiteSummary s;
    bool first = true;
    for (int n : dims) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(n));
        std::uniform_real_distribution<double> eps_dist(0.01, 0.2);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::normal_distribution<double> normal;
        Point const origin = Point::zero(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < count; ++i) {
            double const eps = eps_dist(rng);
            double const beta = 1.0 - unit(rng);  // (0, 1]
            Point nu(static_cast<std::size_t>(n));
            double nn = 0.0;
            while (nn == 0.0) {
                for (std::size_t k = 0; k < nu.dim(); ++k) nu[k] = normal(rng);
                nn = nu.norm();
            }
            nu *= 1.0 / nn;
            Point const x = sample_uniform_ball(origin, i % 2 == 0 ? 1.0 : 0.2, rng);

            DriftReport const rep = check_drift(x, nu, eps, beta);
            ++s.count;
            if (rep.margin < -kDriftMarginTol) ++s.violations;
            if (first || rep.margin < s.worst_margin) {
                s.worst_margin = rep.margin;
                s.worst = rep;
                first = false;
            }
        }
    }
    return s;
}

double dpp_residual(TestFunction const& fn, Point const& x, double epsilon, double p) {
    Point g = fn.gradient(x);
    double const gnorm = g.norm();
    if (!(gnorm > kGradZeroTol)) throw UndefinedOperatorError("dpp residual needs a nonvanishing gradient");
    g *= 1.0 / gnorm;
    double const beta = beta_weight(p, static_cast<int>(fn.dim()));
    StepMeasure const m = StepMeasure::mu1(x, g, epsilon, beta);
    double const ux = fn.eval(x);
    // integrate u - u(x) so the cancellation happens before the sum
    return std::abs(expectation_quadrature(m, [&](Point const& y) { return fn.eval(y) - ux; }));
}

double fit_rate(std::span<const double> eps, std::span<const double> err) {
    if (eps.size() != err.size()) throw ParameterError("fit_rate: lists differ in length");
    if (eps.size() < 3) throw ParameterError("fit_rate needs at least three points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0) || !(err[i] > 0.0)) throw DomainError("fit_rate needs positive entries");
        lx.push_back(std::log(eps[i]));
        ly.push_back(std::log(err[i]));
    }
    auto const m = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) throw ParameterError("fit_rate needs at least two distinct eps values");
    return sxy / sxx;
}

}  // namespace gradwalk
