#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "gradwalk/parallel.hpp"
#include "gradwalk/pharmonic_catalog.hpp"
#include "gradwalk/point.hpp"
#include "gradwalk/step_measures.hpp"

namespace gradwalk {

inline constexpr std::uint64_t kDefaultStepCap = 10'000'000;

/// Iterates with |x| >= 1 - kExitTol count as having left B(0, 1). Absorbs
/// the rounding in x + k eps landing a hair short of the sphere.
inline constexpr double kExitTol = 1e-12;

/// Samples per random substream; fixed so that results never depend on the
/// number of workers.
inline constexpr std::size_t kSamplesPerBlock = 64;

struct WalkResult {
    Point exit_point;
    std::uint64_t steps = 0;
    std::uint64_t trajectory_hash = 0;
};

/// Monte Carlo mean of u at the exit point.
struct EstimateResult {
    double mean = 0.0;
    double std_error = 0.0;  ///< sample standard deviation / sqrt(n_samples)
    std::uint64_t n_samples = 0;
    double mean_steps = 0.0;
    std::uint64_t seed = 0;
};

struct EstimateOptions {
    unsigned workers = 0;  ///< 0: hardware concurrency
    std::uint64_t step_cap = kDefaultStepCap;
};

/// Runs the gradient walk from x0 until it first leaves B(0, 1).
/// Throws NonterminationError after step_cap steps.
WalkResult run_walk(TestFunction const& fn, RegimeConfig const& cfg, Point const& x0, Rng& rng,
                    std::uint64_t step_cap = kDefaultStepCap);

/// u_eps(x0) = E[u(x_tau)] over n_samples independent walks. Sample i uses
/// substream (seed, i / kSamplesPerBlock); the reduction is pairwise in
/// sample order, so the result is bit-identical for any worker count.
EstimateResult estimate_value(TestFunction const& fn, RegimeConfig const& cfg, Point const& x0,
                              std::uint64_t n_samples, std::uint64_t seed, EstimateOptions opts = {});

struct SupErrorResult {
    double sup_error = 0.0;
    double max_std_error = 0.0;
    std::vector<Point> grid;
    std::vector<EstimateResult> estimates;  ///< one per grid point
};

/// max over the grid of |u_eps(x) - u(x)|. Grid point i is estimated with
/// seed mix_seed(seed, i).
SupErrorResult sup_error(TestFunction const& fn, RegimeConfig const& cfg, std::vector<Point> const& grid,
                         std::uint64_t n_samples, std::uint64_t seed, EstimateOptions opts = {});

/// Lattice {-0.5, 0, 0.5}^n intersected with the open unit ball.
std::vector<Point> default_grid(std::size_t n);

namespace detail {

/// Shared Monte Carlo driver for the walk and diffusion engines: runs
/// `path(rng)` n_samples times over block substreams, evaluates fn at the exit
/// points and reduces deterministically. Nontermination and escape failures
/// are counted and rethrown together once every sample has run.
EstimateResult monte_carlo_exit_mean(TestFunction const& fn, std::uint64_t n_samples, std::uint64_t seed,
                                     unsigned workers, std::function<WalkResult(Rng&)> const& path);

/// Order-dependent hash of a trajectory.
inline std::uint64_t hash_step(std::uint64_t h, Point const& x) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
        h = (h ^ std::bit_cast<std::uint64_t>(x[i])) * 0x100000001B3ULL;
        h ^= h >> 29;
    }
    return h;
}

inline constexpr std::uint64_t kHashSeed = 0xCBF29CE484222325ULL;

}  // namespace detail
}  // namespace gradwalk
