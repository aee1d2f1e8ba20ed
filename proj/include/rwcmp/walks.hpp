#pragma once

#include <cstdint>

#include "rwcmp/rng.hpp"

// Simple symmetric random walks on the integers. A walk starts at an
// arbitrary integer and takes `steps` independent ±1 moves; walks are never
// clamped to an interval, the endpoint may land anywhere in
// [start - steps, start + steps]. Two engines draw from the same exact law:
// a stepwise simulator (one coin flip per step) and a closed-form endpoint
// sampler (displacement = 2·Binomial(steps, 1/2) − steps, via popcount of
// whole 64-bit words).

namespace rwcmp::walks {

struct WalkSpec {
  std::int64_t start = 0;
  std::int64_t steps = 0;

  WalkSpec(std::int64_t start_pos, std::int64_t step_count);
};

struct WalkResult {
  std::int64_t endpoint = 0;
  std::int64_t displacement = 0;  // endpoint - start
};

enum class Engine { Stepwise, FastEndpoint };

// Exact Binomial(m, 1/2) draw. Consumes ceil(m/64) generator words.
std::int64_t binomial_half(std::int64_t m, RngStream& rng);

// Simulates the walk one ±1 step at a time; consumes exactly `steps` coin
// flips from the stream.
WalkResult walk_stepwise(const WalkSpec& spec, RngStream& rng);

// Samples the endpoint law directly without visiting the path.
WalkResult walk_endpoint_fast(const WalkSpec& spec, RngStream& rng);

WalkResult walk(const WalkSpec& spec, RngStream& rng, Engine engine);

// Difference of two independent walks, simulated as one lazy walk:
// each step stays with probability 1/2 and moves ±2 with probability 1/4
// each (two coins per step). Returns the final gap.
std::int64_t lazy_difference_walk(std::int64_t steps, std::int64_t start_gap,
                                  RngStream& rng);

}  // namespace rwcmp::walks
