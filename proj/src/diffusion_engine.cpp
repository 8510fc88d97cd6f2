#include "gradwalk/diffusion_engine.hpp"

#include <cmath>
#include <random>
#include <string>

namespace gradwalk {
namespace {

constexpr double kExitRadiusSq = (1.0 - kExitTol) * (1.0 - kExitTol);

Point advance(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x, Rng& rng,
              std::normal_distribution<double>& normal) {
    std::size_t const n = x.dim();
    Point xi(n);
    for (std::size_t i = 0; i < n; ++i) xi[i] = normal(rng);

    // sigma xi = xi + (sqrt(p-1) - 1) q (q . xi), without forming sigma
    Point q = fn.gradient(x);
    double const gnorm = q.norm();
    if (gnorm > cfg.grad_zero_tol) {
        q *= 1.0 / gnorm;
        xi.axpy((std::sqrt(cfg.p - 1.0) - 1.0) * q.dot(xi), q);
    }
    Point y = x;
    return y.axpy(std::sqrt(cfg.h), xi);
}

}  // namespace

void DiffusionConfig::validate() const {
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("diffusion needs 1 < p < inf");
    if (!(h > 0.0 && h <= 1e-2)) throw ParameterError("time step must lie in (0, 1e-2]");
    if (path_cap == 0) throw ParameterError("path cap must be positive");
}

DiffusionMatrix diffusion_matrix(TestFunction const& fn, Point const& x, double p, double grad_zero_tol) {
    std::size_t const n = fn.dim();
    Point g = fn.gradient(x);
    double const gnorm = g.norm();
    DiffusionMatrix a{0.5 * Matrix::identity(n), std::nullopt};
    if (gnorm > grad_zero_tol) {
        g *= 1.0 / gnorm;
        a.entries += (0.5 * (p - 2.0)) * Matrix::outer(g, g);
        a.grad_dir = g;
    }
    return a;
}

Matrix sigma_factor(DiffusionMatrix const& a, std::optional<Point> const& grad_dir, double p) {
    if (!(p > 1.0)) throw ParameterError("sigma factor needs p > 1");
    std::size_t const n = a.entries.dim();
    Matrix sigma = Matrix::identity(n);
    if (grad_dir) {
        if (grad_dir->dim() != n) throw ParameterError("gradient direction has wrong dimension");
        sigma += (std::sqrt(p - 1.0) - 1.0) * Matrix::outer(*grad_dir, *grad_dir);
    }
    return sigma;
}

Point diffusion_step(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x, Rng& rng) {
    std::normal_distribution<double> normal;
    return advance(fn, cfg, x, rng, normal);
}

WalkResult run_diffusion(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x0, Rng& rng) {
    cfg.validate();
    if (x0.dim() != fn.dim()) throw ParameterError("start point has wrong dimension");
    if (!x0.is_finite() || !(x0.norm_sq() < kExitRadiusSq))
        throw DomainError("start point must lie in the open unit ball");

    std::normal_distribution<double> normal;
    WalkResult res;
    res.trajectory_hash = detail::hash_step(detail::kHashSeed, x0);
    Point x = x0;
    while (x.norm_sq() < kExitRadiusSq) {
        if (res.steps >= cfg.path_cap)
            throw NonterminationError("diffusion path exceeded cap of " + std::to_string(cfg.path_cap), 1);
        x = advance(fn, cfg, x, rng, normal);
        ++res.steps;
        res.trajectory_hash = detail::hash_step(res.trajectory_hash, x);
    }
    if (!(x.norm() < fn.domain_radius()))
        throw DomainError("diffusion iterate escaped B(0, " + std::to_string(fn.domain_radius()) +
                          "); reduce the time step");
    res.exit_point = x;
    return res;
}

EstimateResult estimate_value_ct(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x0,
                                 std::uint64_t n_paths, unsigned workers) {
    cfg.validate();
    if (n_paths < 2) throw ParameterError("need at least two paths");
    return detail::monte_carlo_exit_mean(fn, n_paths, cfg.seed, workers,
                                         [&](Rng& rng) { return run_diffusion(fn, cfg, x0, rng); });
}

}  // namespace gradwalk
