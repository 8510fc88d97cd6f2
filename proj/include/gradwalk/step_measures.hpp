#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "gradwalk/parallel.hpp"
#include "gradwalk/pharmonic_catalog.hpp"
#include "gradwalk/point.hpp"
#include "gradwalk/quadrature.hpp"

namespace gradwalk {

enum class MeasureKind {
    Mu1,          ///< beta * uniform(B(x, eps)) + (1 - beta)/2 * (delta_{x + eps d} + delta_{x - eps d})
    Mu2,          ///< delta_{x + eps d}, d = x/|x| (e1 at the origin)
    UniformBall,  ///< uniform(B(x, eps))
};

/// One-step transition law of the walk. Immutable value.
struct StepMeasure {
    MeasureKind kind = MeasureKind::UniformBall;
    Point center;
    Point direction;  ///< unit vector; unused for UniformBall
    double epsilon = 0.0;
    double beta = 1.0;  ///< Mu1 only

    static StepMeasure mu1(Point const& center, Point const& direction, double eps, double beta);
    /// Radial push outward; direction x/|x|, or e1 when x = 0.
    static StepMeasure mu2(Point const& center, double eps);
    static StepMeasure uniform_ball(Point const& center, double eps);
};

/// Mixing weight beta = (2 + n)/(p + n) of the ball part; requires p >= 2.
double beta_weight(double p, int n);

/// Uniform point of the open ball B(center, eps).
Point sample_uniform_ball(Point const& center, double eps, Rng& rng);

/// Exact draw from the measure; the result is always within eps of center.
Point sample(StepMeasure const& m, Rng& rng);

/// Deterministic integral of f against the measure using a product ball rule.
/// Throws UnsupportedDimensionError for n > 4 when a ball average is needed.
double expectation_quadrature(StepMeasure const& m, std::function<double(Point const&)> const& f);
double expectation_quadrature(StepMeasure const& m, std::function<double(Point const&)> const& f,
                              BallRule const& rule);

enum class Regime {
    EtaCut,          ///< Mu1 if |grad u| >= eta, else Mu2
    RateCut,         ///< Mu1 if |grad u| >= eps^a', else Mu2
    ZeroSetUniform,  ///< Mu1 if |grad u| > tol, else UniformBall
};

std::string to_string(Regime r);
/// "eta", "rate" or "zeroset".
Regime parse_regime(std::string_view name);

/// Rule choosing the one-step measure from the local gradient.
struct RegimeConfig {
    Regime regime = Regime::EtaCut;
    double eta = 0.0;      ///< EtaCut only
    double a_prime = 0.0;  ///< RateCut only, in (0, 1)
    double grad_zero_tol = kGradZeroTol;
    double epsilon = 0.0;  ///< step size, 0 < eps < 0.25
    double beta = 1.0;

    static RegimeConfig eta_cut(double eps, double beta, double eta);
    static RegimeConfig rate_cut(double eps, double beta, double a_prime);
    static RegimeConfig zero_set_uniform(double eps, double beta, double tol = kGradZeroTol);

    /// Gradient magnitude at or above which Mu1 is used (eta or eps^a');
    /// for ZeroSetUniform the threshold is strict and equals grad_zero_tol.
    double threshold() const;

    /// Throws ParameterError on inconsistent fields.
    void validate() const;
};

StepMeasure select_measure(RegimeConfig const& cfg, TestFunction const& fn, Point const& x);

}  // namespace gradwalk
