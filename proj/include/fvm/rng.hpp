#pragma once

// Splittable pseudo-random streams for replica-parallel Monte Carlo.
//
// Replica i of a run seeded with s draws from RngStream(s, i). Sub-stream
// states are derived by hashing the (seed, stream) pair, so any replica can
// be generated independently of the others: serial and parallel execution
// produce identical samples per replica index.
//
// The generator is xoshiro256++ (Blackman & Vigna, public domain) with
// SplitMix64 state expansion. All floating-point conversions are explicit,
// so a given (seed, stream) yields the same draws on any IEEE-754 platform.

#include <cstdint>
#include <cmath>

namespace fvm {

namespace detail {

// SplitMix64 finalizer; also usable as a 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) {
    // Derive four state words from the hashed (seed, stream) key.
    std::uint64_t key = detail::mix64(seed ^ detail::mix64(stream * 0x9e3779b97f4a7c15ULL + 1));
    for (auto& w : state_) {
      key = detail::mix64(key);
      w = key;
    }
    // xoshiro256++ must not start from the all-zero state.
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 0x1ULL;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  // Uniform on [0,1), 53 random bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0,1]; safe as a log() argument.
  double uniform_pos() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double exponential(double rate) noexcept { return -std::log(uniform_pos()) / rate; }

  // Standard normal via Box-Muller; the pair partner is cached.
  double normal() noexcept {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    const double phi = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(phi);
    have_cached_ = true;
    return r * std::cos(phi);
  }

  // Equiprobable +1 / -1.
  int sign() noexcept { return (next_u64() >> 63) ? 1 : -1; }

  // Uniform on {0, ..., n-1} for small n.
  int uniform_int(int n) noexcept { return static_cast<int>(uniform() * n); }

 private:
  std::uint64_t state_[4];
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace fvm
