#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>

namespace gradwalk {

/// Random stream used by every sampler.
using Rng = std::mt19937_64;

/// splitmix64 finalizer applied to seed ^ f(index); used to derive
/// statistically unrelated seeds for substreams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Independent stream number `stream` of the family identified by `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// Pairwise (cascade) summation; result depends only on the order of `values`.
double pairwise_sum(std::span<const double> values);

/// Number of worker threads to use when the caller passes 0.
unsigned default_workers();

/// Run body(block) for block in [0, n_blocks) on `workers` threads. Blocks are
/// handed out dynamically; the body must only write to block-owned state.
/// The first exception thrown by any body is rethrown after all threads join.
void parallel_for_blocks(std::size_t n_blocks, unsigned workers,
                         std::function<void(std::size_t)> const& body);

}  // namespace gradwalk
