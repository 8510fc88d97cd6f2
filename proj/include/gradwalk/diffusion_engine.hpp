#pragma once

#include <cstdint>
#include <optional>

#include "gradwalk/parallel.hpp"
#include "gradwalk/pharmonic_catalog.hpp"
#include "gradwalk/point.hpp"
#include "gradwalk/walk_engine.hpp"

namespace gradwalk {

inline constexpr std::uint64_t kDefaultPathCap = 100'000'000;

/// Generator coefficients A(x) = (1/2)(I + (p - 2) q q^T), q = grad u/|grad u|,
/// and A = I/2 where the gradient vanishes.
struct DiffusionMatrix {
    Matrix entries;
    /// Unit gradient direction used to build the matrix; empty at critical points.
    std::optional<Point> grad_dir;
};

struct DiffusionConfig {
    double p = 2.0;
    double h = 1e-4;  ///< Euler-Maruyama time step
    std::uint64_t path_cap = kDefaultPathCap;
    std::uint64_t seed = 0;
    double grad_zero_tol = kGradZeroTol;

    /// Throws ParameterError unless p > 1 and 0 < h <= 1e-2.
    void validate() const;
};

DiffusionMatrix diffusion_matrix(TestFunction const& fn, Point const& x, double p,
                                 double grad_zero_tol = kGradZeroTol);

/// sigma = I + (sqrt(p - 1) - 1) q q^T, or I when grad_dir is absent, so that
/// sigma sigma^T = 2A. Throws ParameterError for p <= 1.
Matrix sigma_factor(DiffusionMatrix const& a, std::optional<Point> const& grad_dir, double p);

/// One Euler-Maruyama increment from x: x + sqrt(h) sigma(x) xi, xi ~ N(0, I).
Point diffusion_step(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x, Rng& rng);

/// Euler-Maruyama path from x0 stopped at the first iterate with |X| >= 1.
/// Throws NonterminationError past path_cap steps, DomainError if an iterate
/// leaves the function domain.
WalkResult run_diffusion(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x0, Rng& rng);

/// v(x0) = E[u(X_tau)] over n_paths paths, seeded from cfg.seed with the same
/// substream and reduction scheme as estimate_value.
EstimateResult estimate_value_ct(TestFunction const& fn, DiffusionConfig const& cfg, Point const& x0,
                                 std::uint64_t n_paths, unsigned workers = 0);

}  // namespace gradwalk
