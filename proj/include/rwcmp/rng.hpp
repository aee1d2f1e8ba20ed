#pragma once

#include <array>
#include <bit>
#include <cstdint>

// Deterministic, splittable pseudo-randomness. A stream is addressed by
// (seed, stream_id); the pair is hashed through SplitMix64 into the state
// of a xoshiro256++ generator, so distinct stream ids give statistically
// independent sequences from one master seed. Both primitives are the
// public-domain references (Blackman & Vigna; Steele, Lea & Flood).

namespace rwcmp {

// SplitMix64 step: advances `state` and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    // Fold seed and stream id through independent SplitMix64 chains; the
    // xor of the two mixed words keys a third chain that fills the state.
    std::uint64_t a = seed;
    std::uint64_t b = stream_id ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t key = splitmix64(a) ^ splitmix64(b);
    for (auto& word : state_) word = splitmix64(key);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  // xoshiro256++ core.
  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

  // One fair coin flip. Flips are buffered 64 at a time; flips() counts
  // exactly how many have been consumed, which pins down the randomness
  // cost of the stepwise walk engines.
  bool coin() noexcept {
    if (bits_left_ == 0) {
      bit_buf_ = next_u64();
      bits_left_ = 64;
    }
    const bool b = (bit_buf_ & 1u) != 0;
    bit_buf_ >>= 1;
    --bits_left_;
    ++flips_;
    return b;
  }

  std::uint64_t flips() const noexcept { return flips_; }

  // Unbiased integer in [0, bound) — Lemire's nearly-divisionless method.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept {
    unsigned __int128 r = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(r);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        r = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<std::uint64_t>(r);
      }
    }
    return static_cast<std::uint64_t>(r >> 64);
  }

  // Unbiased integer in [lo, hi], inclusive. Requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(uniform_below(span));
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t bit_buf_ = 0;
  int bits_left_ = 0;
  std::uint64_t flips_ = 0;
};

}  // namespace rwcmp
