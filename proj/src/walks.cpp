#include "rwcmp/walks.hpp"

#include <bit>
#include <string>

#include "rwcmp/errors.hpp"

namespace rwcmp::walks {

namespace {

// Endpoints must stay well inside int64 range; 2^62 leaves headroom for
// differences of two endpoints.
constexpr std::int64_t kMagnitudeCap = std::int64_t{1} << 62;

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

}  // namespace

WalkSpec::WalkSpec(std::int64_t start_pos, std::int64_t step_count)
    : start(start_pos), steps(step_count) {
  if (steps < 0)
    throw InvalidInput("walk steps must be non-negative, got " + std::to_string(steps));
  if (abs64(start) >= kMagnitudeCap - steps)
    throw InvalidInput("walk range |start| + steps exceeds the 2^62 endpoint cap");
}

std::int64_t binomial_half(std::int64_t m, RngStream& rng) {
  if (m < 0) throw InvalidInput("binomial_half needs m >= 0");
  std::int64_t ones = 0;
  std::int64_t full_words = m / 64;
  const int rem = static_cast<int>(m % 64);
  for (std::int64_t i = 0; i < full_words; ++i)
    ones += std::popcount(rng.next_u64());
  if (rem > 0)
    ones += std::popcount(rng.next_u64() & ((std::uint64_t{1} << rem) - 1));
  return ones;
}

WalkResult walk_stepwise(const WalkSpec& spec, RngStream& rng) {
  std::int64_t pos = spec.start;
  for (std::int64_t i = 0; i < spec.steps; ++i) pos += rng.coin() ? 1 : -1;
  return {pos, pos - spec.start};
}

WalkResult walk_endpoint_fast(const WalkSpec& spec, RngStream& rng) {
  const std::int64_t ups = binomial_half(spec.steps, rng);
  const std::int64_t disp = 2 * ups - spec.steps;
  return {spec.start + disp, disp};
}

WalkResult walk(const WalkSpec& spec, RngStream& rng, Engine engine) {
  return engine == Engine::Stepwise ? walk_stepwise(spec, rng)
                                    : walk_endpoint_fast(spec, rng);
}

std::int64_t lazy_difference_walk(std::int64_t steps, std::int64_t start_gap,
                                  RngStream& rng) {
  if (steps < 0)
    throw InvalidInput("lazy walk steps must be non-negative, got " + std::to_string(steps));
  if (abs64(start_gap) >= kMagnitudeCap - 2 * steps)
    throw InvalidInput("lazy walk range exceeds the 2^62 endpoint cap");
  std::int64_t gap = start_gap;
  for (std::int64_t i = 0; i < steps; ++i) {
    // One ±1 move per side; opposite moves cancel. Two explicit draws keep
    // the flip order deterministic across compilers.
    const int lead = rng.coin() ? 1 : -1;
    const int chase = rng.coin() ? 1 : -1;
    gap += lead - chase;
  }
  return gap;
}

}  // namespace rwcmp::walks
