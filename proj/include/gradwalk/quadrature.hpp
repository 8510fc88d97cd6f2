#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gradwalk/point.hpp"

namespace gradwalk {

/// One-dimensional rule: integral of f over [a, b] ~= sum w_i f(x_i).
struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order on [a, b] (default [-1, 1]).
QuadratureRule1D gauss_legendre(std::size_t order, double a = -1.0, double b = 1.0);

/// Nodes inside the closed unit ball and weights summing to one, so that
/// sum w_i f(x + eps * y_i) approximates the average of f over B(x, eps).
struct BallRule {
    std::size_t dim = 0;
    std::vector<Point> nodes;
    std::vector<double> weights;
};

struct BallRuleOrders {
    std::size_t radial = 12;
    std::size_t angular = 24;
};

/// Product rule in spherical coordinates: Gauss-Legendre in the radius, and
/// a tensor rule on the sphere (trapezoid for S^1, Gauss-Legendre in the
/// polar cosine for S^2, Gauss-Chebyshev of the second kind for the extra
/// S^3 angle). Exact for polynomials of degree below min(2 radial - n,
/// angular). Only 2 <= n <= 4 has a rule.
BallRule make_ball_rule(std::size_t n, BallRuleOrders orders = {});

/// Cached default-order rule for dimension n.
BallRule const& default_ball_rule(std::size_t n);

/// Average of f over B(center, eps) with the given rule.
double ball_average(std::function<double(Point const&)> const& f, Point const& center,
                    double eps, BallRule const& rule);

/// Result of a quadrature that carries an error estimate.
struct QuadratureValue {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Average of |y - z| over y in B(x, eps) in R^n when |x - z| = offset.
/// The angular part is reduced to a closed form (n = 2 via the complete
/// elliptic integral of the second kind, n = 3 exactly) or a panelled
/// Gauss-Legendre rule (n >= 4); the radial integral is split at the kink
/// r = offset. The error estimate compares the rule with one of doubled order.
QuadratureValue ball_mean_distance(double offset, double eps, std::size_t n);

}  // namespace gradwalk
