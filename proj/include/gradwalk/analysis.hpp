#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gradwalk/pharmonic_catalog.hpp"
#include "gradwalk/point.hpp"

namespace gradwalk {

/// Quadrature error allowed in a drift margin.
inline constexpr double kDriftQuadratureTol = 1e-9;

/// A drift margin below -kDriftMarginTol counts as a violation.
inline constexpr double kDriftMarginTol = 1e-8;

/// C(n) = max over c in (0, 1) of ((n - 1)/n)(1 - c^n) c^2, by golden-section
/// search. C(2) = 1/8 and C(n) -> 1.
double drift_constant(int n);

/// Both sides of the expected-distance drift inequality
///   (1-b)/2 (|x + e v| + |x - e v|) + b avg_{B(x,e)} |y|  >=  |x| + C(n) b e^2 / (2(|x| + e)).
struct DriftReport {
    Point x;
    Point nu;
    double epsilon = 0.0;
    double beta = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  ///< lhs - rhs
    double quadrature_error = 0.0;
};

/// Throws ToleranceError if the ball average cannot be resolved to
/// kDriftQuadratureTol.
DriftReport check_drift(Point const& x, Point const& nu, double epsilon, double beta);

struct DriftSuiteSummary {
    std::size_t count = 0;
    std::size_t violations = 0;  ///< margins below -kDriftMarginTol
    double worst_margin = 0.0;
    DriftReport worst;
};

/// Randomized drift verification: `count` draws per dimension with
/// eps ~ U[0.01, 0.2], beta ~ U(0, 1], nu uniform on the sphere and x uniform
/// in B(0, 1) (every other draw uniform in B(0, 0.2), so |x| < eps occurs).
DriftSuiteSummary run_drift_suite(std::span<const int> dims, std::size_t count, std::uint64_t seed);

/// |integral of u against mu_{x,1} - u(x)| with direction grad u/|grad u| and
/// beta = beta_weight(p, n), evaluated by deterministic quadrature.
/// Throws UndefinedOperatorError at critical points.
double dpp_residual(TestFunction const& fn, Point const& x, double epsilon, double p);

/// Ordinary least-squares slope of log(err) against log(eps).
/// Throws DomainError on nonpositive entries, ParameterError on size mismatch
/// or fewer than three points.
double fit_rate(std::span<const double> eps, std::span<const double> err);

}  // namespace gradwalk
