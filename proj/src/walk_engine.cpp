#include "gradwalk/walk_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace gradwalk {
namespace {

constexpr double kExitRadiusSq = (1.0 - kExitTol) * (1.0 - kExitTol);

void check_start(TestFunction const& fn, Point const& x0) {
    if (x0.dim() != fn.dim()) throw ParameterError("start point has wrong dimension");
    if (!x0.is_finite() || !(x0.norm_sq() < kExitRadiusSq))
        throw DomainError("start point must lie in the open unit ball");
}

}  // namespace

WalkResult run_walk(TestFunction const& fn, RegimeConfig const& cfg, Point const& x0, Rng& rng,
                    std::uint64_t step_cap) {
    cfg.validate();
    check_start(fn, x0);

    WalkResult res;
    res.trajectory_hash = detail::hash_step(detail::kHashSeed, x0);
    Point x = x0;
    while (x.norm_sq() < kExitRadiusSq) {
        if (res.steps >= step_cap)
            throw NonterminationError("walk exceeded step cap of " + std::to_string(step_cap), 1);
        x = sample(select_measure(cfg, fn, x), rng);
        ++res.steps;
        res.trajectory_hash = detail::hash_step(res.trajectory_hash, x);
    }
    res.exit_point = x;
    return res;
}

EstimateResult estimate_value(TestFunction const& fn, RegimeConfig const& cfg, Point const& x0,
                              std::uint64_t n_samples, std::uint64_t seed, EstimateOptions opts) {
    cfg.validate();
    check_start(fn, x0);
    if (n_samples < 100) throw ParameterError("estimate_value needs at least 100 samples");
    return detail::monte_carlo_exit_mean(fn, n_samples, seed, opts.workers, [&](Rng& rng) {
        return run_walk(fn, cfg, x0, rng, opts.step_cap);
    });
}

SupErrorResult sup_error(TestFunction const& fn, RegimeConfig const& cfg, std::vector<Point> const& grid,
                         std::uint64_t n_samples, std::uint64_t seed, EstimateOptions opts) {
    if (grid.empty()) throw ParameterError("sup_error needs a nonempty grid");
    SupErrorResult out;
    out.grid = grid;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EstimateResult est = estimate_value(fn, cfg, grid[i], n_samples, mix_seed(seed, i), opts);
        out.sup_error = std::max(out.sup_error, std::abs(est.mean - fn.eval(grid[i])));
        out.max_std_error = std::max(out.max_std_error, est.std_error);
        out.estimates.push_back(est);
    }
    return out;
}

std::vector<Point> default_grid(std::size_t n) {
    if (n < 2 || n > kMaxDim) throw ParameterError("grid dimension out of range");
    static constexpr double levels[3] = {-0.5, 0.0, 0.5};
    std::vector<Point> grid;
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
        Point p(n);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = levels[c % 3];
            c /= 3;
        }
        if (p.norm_sq() < 1.0) grid.push_back(p);
    }
    return grid;
}

namespace detail {

EstimateResult monte_carlo_exit_mean(TestFunction const& fn, std::uint64_t n_samples, std::uint64_t seed,
                                     unsigned workers, std::function<WalkResult(Rng&)> const& path) {
    std::vector<double> values(n_samples), steps(n_samples);
    std::size_t const n_blocks = (n_samples + kSamplesPerBlock - 1) / kSamplesPerBlock;
    std::vector<std::uint64_t> stalled(n_blocks, 0), escaped(n_blocks, 0);
    std::vector<std::string> first_message(n_blocks);

    parallel_for_blocks(n_blocks, workers, [&](std::size_t block) {
        Rng rng = make_stream(seed, block);
        std::size_t const lo = block * kSamplesPerBlock;
        std::size_t const hi = std::min<std::size_t>(lo + kSamplesPerBlock, n_samples);
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                WalkResult const w = path(rng);
                values[i] = fn.eval(w.exit_point);
                steps[i] = static_cast<double>(w.steps);
            } catch (NonterminationError const& e) {
                ++stalled[block];
                if (first_message[block].empty()) first_message[block] = e.what();
            } catch (DomainError const& e) {
                ++escaped[block];
                if (first_message[block].empty()) first_message[block] = e.what();
            }
        }
    });

    std::uint64_t n_stalled = 0, n_escaped = 0;
    std::string message;
    for (std::size_t b = 0; b < n_blocks; ++b) {
        n_stalled += stalled[b];
        n_escaped += escaped[b];
        if (message.empty()) message = first_message[b];
    }
    if (n_escaped > 0)
        throw DomainError(std::to_string(n_escaped) + " of " + std::to_string(n_samples) +
                          " paths left the function domain: " + message);
    if (n_stalled > 0)
        throw NonterminationError(std::to_string(n_stalled) + " of " + std::to_string(n_samples) +
                                      " paths hit the step cap: " + message,
                                  n_stalled);

    auto const n = static_cast<double>(n_samples);
    EstimateResult r;
    r.n_samples = n_samples;
    r.seed = seed;
    r.mean = pairwise_sum(values) / n;
    r.mean_steps = pairwise_sum(steps) / n;
    for (double& v : values) v = (v - r.mean) * (v - r.mean);
    double const var = n_samples > 1 ? pairwise_sum(values) / (n - 1.0) : 0.0;
    r.std_error = std::sqrt(var / n);
    return r;
}

}  // namespace detail
}  // namespace gradwalk
