#include "gradwalk/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <utility>

namespace gradwalk {
namespace {

using std::numbers::pi;

/// Points and weights (summing to one) on the unit sphere S^{n-1}.
struct SphereRule {
    std::vector<Point> nodes;
    std::vector<double> weights;
};

SphereRule circle_rule(std::size_t angular) {
    SphereRule s;
    for (std::size_t j = 0; j < angular; ++j) {
        double const th = 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(angular);
        s.nodes.push_back(Point{std::cos(th), std::sin(th)});
        s.weights.push_back(1.0 / static_cast<double>(angular));
    }
    return s;
}

/// Lift a rule on S^{m-1} to S^m using x = (t, sqrt(1 - t^2) omega), where t
/// is distributed with density proportional to (1 - t^2)^{(m-2)/2}.
SphereRule lift_sphere(SphereRule const& lower, std::size_t m, std::size_t order) {
    std::vector<double> ts, ws;
    if (m == 2) {
        // uniform density on [-1, 1]
        auto gl = gauss_legendre(order);
        for (std::size_t i = 0; i < order; ++i) {
            ts.push_back(gl.nodes[i]);
            ws.push_back(0.5 * gl.weights[i]);
        }
    } else if (m == 3) {
        // density (2/pi) sqrt(1 - t^2): Gauss-Chebyshev of the second kind
        for (std::size_t k = 1; k <= order; ++k) {
            double const a = static_cast<double>(k) * pi / static_cast<double>(order + 1);
            ts.push_back(std::cos(a));
            ws.push_back(2.0 / static_cast<double>(order + 1) * std::sin(a) * std::sin(a));
        }
    } else {
        throw UnsupportedDimensionError("no sphere rule beyond S^3");
    }

    SphereRule s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        double const rho = std::sqrt(std::max(0.0, 1.0 - ts[i] * ts[i]));
        for (std::size_t j = 0; j < lower.nodes.size(); ++j) {
            Point p(m + 1);
            p[0] = ts[i];
            for (std::size_t c = 0; c < m; ++c) p[c + 1] = rho * lower.nodes[j][c];
            s.nodes.push_back(p);
            s.weights.push_back(ws[i] * lower.weights[j]);
        }
    }
    return s;
}

SphereRule sphere_rule(std::size_t n, std::size_t angular) {
    // n is the ambient dimension; polar orders use half the azimuthal count,
    // which gives matching polynomial exactness.
    std::size_t const polar = std::max<std::size_t>(2, angular / 2);
    SphereRule s = circle_rule(angular);
    for (std::size_t m = 2; m < n; ++m) s = lift_sphere(s, m, polar);
    return s;
}

/// Mean of |x + r theta| over theta in S^{n-1} where |x| = d.
double sphere_mean_distance(double r, double d, std::size_t n, std::size_t order) {
    if (r == 0.0) return d;
    if (d == 0.0) return r;
    if (n == 2) {
        double const s = r + d;
        double const k = std::min(1.0, 2.0 * std::sqrt(r * d) / s);
        return 2.0 / pi * s * std::comp_ellint_2(k);
    }
    if (n == 3) return r < d ? d + r * r / (3.0 * d) : r + d * d / (3.0 * r);

    // Polar angle psi with density proportional to sin^{n-2}(psi). Panels
    // cluster toward psi = 0 where the integrand is nearly conical.
    static constexpr std::array<double, 5> breaks{0.0, pi / 64.0, pi / 16.0, pi / 4.0, pi};
    auto const gl = gauss_legendre(order);
    double num = 0.0, den = 0.0;
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        double const lo = breaks[b], hi = breaks[b + 1];
        for (std::size_t i = 0; i < order; ++i) {
            double const psi = 0.5 * (hi - lo) * gl.nodes[i] + 0.5 * (hi + lo);
            double const w = 0.5 * (hi - lo) * gl.weights[i] *
                             std::pow(std::sin(psi), static_cast<double>(n - 2));
            double const half = std::sin(0.5 * psi);
            num += w * std::sqrt((r - d) * (r - d) + 4.0 * r * d * half * half);
            den += w;
        }
    }
    return num / den;
}

double ball_mean_distance_at_order(double d, double eps, std::size_t n, std::size_t order) {
    auto const gl = gauss_legendre(order);
    auto const nd = static_cast<double>(n);
    auto integrate = [&](double lo, double hi) {
        double s = 0.0;
        for (std::size_t i = 0; i < order; ++i) {
            double const r = 0.5 * (hi - lo) * gl.nodes[i] + 0.5 * (hi + lo);
            s += 0.5 * (hi - lo) * gl.weights[i] * std::pow(r, nd - 1.0) *
                 sphere_mean_distance(r, d, n, order);
        }
        return s;
    };
    double total = 0.0;
    if (d > 0.0 && d < eps) {
        total = integrate(0.0, d) + integrate(d, eps);
    } else {
        total = integrate(0.0, eps);
    }
    return nd * total / std::pow(eps, nd);
}

}  // namespace

QuadratureRule1D gauss_legendre(std::size_t order, double a, double b) {
    if (order == 0) throw ParameterError("Gauss-Legendre order must be positive");
    QuadratureRule1D rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    auto const m = static_cast<double>(order);
    // Returns (P_m(x), P_m'(x)) via the three-term recurrence.
    auto legendre = [order, m](double x) {
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= order; ++k) {
            auto const kd = static_cast<double>(k);
            double const p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, m * (x * p1 - p0) / (x * x - 1.0)};
    };
    for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
        // Newton iteration from the Tricomi initial guess
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (m + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto const [p, dp] = legendre(x);
            double const dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        auto const dp = legendre(x).second;
        double const w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;

    double const half = 0.5 * (b - a), mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < order; ++i) {
        rule.nodes[i] = half * rule.nodes[i] + mid;
        rule.weights[i] *= half;
    }
    return rule;
}

BallRule make_ball_rule(std::size_t n, BallRuleOrders orders) {
    if (n < 2 || n > 4)
        throw UnsupportedDimensionError("deterministic ball quadrature supports 2 <= n <= 4, got n = " +
                                        std::to_string(n));
    auto const radial = gauss_legendre(orders.radial, 0.0, 1.0);
    SphereRule const sphere = sphere_rule(n, orders.angular);
    auto const nd = static_cast<double>(n);

    BallRule rule;
    rule.dim = n;
    for (std::size_t i = 0; i < orders.radial; ++i) {
        double const r = radial.nodes[i];
        // radial density n r^{n-1} on [0, 1]
        double const wr = radial.weights[i] * nd * std::pow(r, nd - 1.0);
        for (std::size_t j = 0; j < sphere.nodes.size(); ++j) {
            rule.nodes.push_back(r * sphere.nodes[j]);
            rule.weights.push_back(wr * sphere.weights[j]);
        }
    }
    return rule;
}

BallRule const& default_ball_rule(std::size_t n) {
    if (n < 2 || n > 4)
        throw UnsupportedDimensionError("deterministic ball quadrature supports 2 <= n <= 4, got n = " +
                                        std::to_string(n));
    static std::array<BallRule, 3> cache;
    static std::array<std::once_flag, 3> flags;
    std::call_once(flags[n - 2], [n] { cache[n - 2] = make_ball_rule(n); });
    return cache[n - 2];
}

double ball_average(std::function<double(Point const&)> const& f, Point const& center, double eps,
                    BallRule const& rule) {
    if (center.dim() != rule.dim) throw ParameterError("ball rule dimension mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        Point y = center;
        y.axpy(eps, rule.nodes[i]);
        sum += rule.weights[i] * f(y);
    }
    return sum;
}

QuadratureValue ball_mean_distance(double offset, double eps, std::size_t n) {
    if (n < 2) throw ParameterError("dimension must be at least 2");
    if (!(eps > 0.0) || !(offset >= 0.0)) throw ParameterError("need eps > 0 and offset >= 0");
    double const coarse = ball_mean_distance_at_order(offset, eps, n, 32);
    double const fine = ball_mean_distance_at_order(offset, eps, n, 64);
    return {fine, std::abs(fine - coarse)};
}

}  // namespace gradwalk
