#include "gradwalk/step_measures.hpp"

#include <cmath>
#include <random>

namespace gradwalk {
namespace {

void check_eps(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ParameterError("step size must be positive");
}

Point radial_direction(Point const& x) {
    double const r = x.norm();
    if (r == 0.0) return Point::unit(x.dim(), 0);
    return (1.0 / r) * x;
}

}  // namespace

StepMeasure StepMeasure::mu1(Point const& center, Point const& direction, double eps, double beta) {
    check_eps(eps);
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
    if (direction.dim() != center.dim()) throw ParameterError("direction dimension mismatch");
    if (std::abs(direction.norm() - 1.0) > 1e-12) throw ParameterError("direction must be a unit vector");
    return {MeasureKind::Mu1, center, direction, eps, beta};
}

StepMeasure StepMeasure::mu2(Point const& center, double eps) {
    check_eps(eps);
    return {MeasureKind::Mu2, center, radial_direction(center), eps, 1.0};
}

StepMeasure StepMeasure::uniform_ball(Point const& center, double eps) {
    check_eps(eps);
    return {MeasureKind::UniformBall, center, Point::zero(center.dim()), eps, 1.0};
}

double beta_weight(double p, int n) {
    if (!(p >= 2.0) || !std::isfinite(p)) throw ParameterError("the discrete walk needs 2 <= p < inf");
    if (n < 2) throw ParameterError("dimension must be at least 2");
    return (2.0 + n) / (p + n);
}

Point sample_uniform_ball(Point const& center, double eps, Rng& rng) {
    std::size_t const n = center.dim();
    Point y = center;
    if (n <= 4) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double c[kMaxDim];
        for (;;) {
            double r2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                c[i] = u(rng);
                r2 += c[i] * c[i];
            }
            if (r2 < 1.0) break;
        }
        for (std::size_t i = 0; i < n; ++i) y[i] += eps * c[i];
        return y;
    }
    // Gaussian direction, radius U^{1/n}
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point dir(n);
    double r2 = 0.0;
    while (r2 == 0.0) {
        for (std::size_t i = 0; i < n; ++i) dir[i] = g(rng);
        r2 = dir.norm_sq();
    }
    double const radius = eps * std::pow(u(rng), 1.0 / static_cast<double>(n));
    y.axpy(radius / std::sqrt(r2), dir);
    return y;
}

Point sample(StepMeasure const& m, Rng& rng) {
    switch (m.kind) {
    case MeasureKind::Mu2: {
        Point y = m.center;
        return y.axpy(m.epsilon, m.direction);
    }
    case MeasureKind::UniformBall:
        return sample_uniform_ball(m.center, m.epsilon, rng);
    case MeasureKind::Mu1: {
        if (m.beta >= 1.0) return sample_uniform_ball(m.center, m.epsilon, rng);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double const v = u(rng);
        if (v < m.beta) return sample_uniform_ball(m.center, m.epsilon, rng);
        Point y = m.center;
        double const sign = v < m.beta + 0.5 * (1.0 - m.beta) ? 1.0 : -1.0;
        return y.axpy(sign * m.epsilon, m.direction);
    }
    }
    throw ParameterError("unknown measure kind");
}

double expectation_quadrature(StepMeasure const& m, std::function<double(Point const&)> const& f) {
    if (m.kind == MeasureKind::Mu2) {
        Point y = m.center;
        return f(y.axpy(m.epsilon, m.direction));
    }
    return expectation_quadrature(m, f, default_ball_rule(m.center.dim()));
}

double expectation_quadrature(StepMeasure const& m, std::function<double(Point const&)> const& f,
                              BallRule const& rule) {
    switch (m.kind) {
    case MeasureKind::Mu2: {
        Point y = m.center;
        return f(y.axpy(m.epsilon, m.direction));
    }
    case MeasureKind::UniformBall:
        return ball_average(f, m.center, m.epsilon, rule);
    case MeasureKind::Mu1: {
        double const ball = ball_average(f, m.center, m.epsilon, rule);
        if (m.beta >= 1.0) return ball;
        Point plus = m.center, minus = m.center;
        plus.axpy(m.epsilon, m.direction);
        minus.axpy(-m.epsilon, m.direction);
        return m.beta * ball + 0.5 * (1.0 - m.beta) * (f(plus) + f(minus));
    }
    }
    throw ParameterError("unknown measure kind");
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::EtaCut: return "eta";
    case Regime::RateCut: return "rate";
    case Regime::ZeroSetUniform: return "zeroset";
    }
    return "?";
}

Regime parse_regime(std::string_view name) {
    if (name == "eta") return Regime::EtaCut;
    if (name == "rate") return Regime::RateCut;
    if (name == "zeroset") return Regime::ZeroSetUniform;
    throw ParameterError("unknown regime: " + std::string(name) + " (expected eta, rate or zeroset)");
}

RegimeConfig RegimeConfig::eta_cut(double eps, double beta, double eta) {
    RegimeConfig c;
    c.regime = Regime::EtaCut;
    c.epsilon = eps;
    c.beta = beta;
    c.eta = eta;
    c.validate();
    return c;
}

RegimeConfig RegimeConfig::rate_cut(double eps, double beta, double a_prime) {
    RegimeConfig c;
    c.regime = Regime::RateCut;
    c.epsilon = eps;
    c.beta = beta;
    c.a_prime = a_prime;
    c.validate();
    return c;
}

RegimeConfig RegimeConfig::zero_set_uniform(double eps, double beta, double tol) {
    RegimeConfig c;
    c.regime = Regime::ZeroSetUniform;
    c.epsilon = eps;
    c.beta = beta;
    c.grad_zero_tol = tol;
    c.validate();
    return c;
}

double RegimeConfig::threshold() const {
    switch (regime) {
    case Regime::EtaCut: return eta;
    case Regime::RateCut: return std::pow(epsilon, a_prime);
    case Regime::ZeroSetUniform: return grad_zero_tol;
    }
    return 0.0;
}

void RegimeConfig::validate() const {
    if (!(epsilon > 0.0 && epsilon < 0.25)) throw ParameterError("epsilon must lie in (0, 0.25)");
    if (!(beta > 0.0 && beta <= 1.0)) throw ParameterError("beta must lie in (0, 1]");
    switch (regime) {
    case Regime::EtaCut:
        if (!(eta > 0.0)) throw ParameterError("eta regime needs eta > 0");
        if (a_prime != 0.0) throw ParameterError("eta regime does not take a'");
        break;
    case Regime::RateCut:
        if (!(a_prime > 0.0 && a_prime < 1.0)) throw ParameterError("rate regime needs a' in (0, 1)");
        if (eta != 0.0) throw ParameterError("rate regime does not take eta");
        break;
    case Regime::ZeroSetUniform:
        if (!(grad_zero_tol >= 0.0)) throw ParameterError("gradient tolerance must be nonnegative");
        if (eta != 0.0 || a_prime != 0.0) throw ParameterError("zeroset regime takes neither eta nor a'");
        break;
    }
}

StepMeasure select_measure(RegimeConfig const& cfg, TestFunction const& fn, Point const& x) {
    Point g = fn.gradient(x);
    double const gnorm = g.norm();
    bool const use_mu1 = cfg.regime == Regime::ZeroSetUniform ? gnorm > cfg.grad_zero_tol
                                                              : gnorm >= cfg.threshold();
    if (use_mu1) {
        g *= 1.0 / gnorm;
        return {MeasureKind::Mu1, x, g, cfg.epsilon, cfg.beta};
    }
    if (cfg.regime == Regime::ZeroSetUniform)
        return {MeasureKind::UniformBall, x, Point::zero(x.dim()), cfg.epsilon, cfg.beta};
    return {MeasureKind::Mu2, x, radial_direction(x), cfg.epsilon, cfg.beta};
}

}  // namespace gradwalk
