#pragma once

#include <cstdint>

// Counter-based pseudo-random generator used everywhere randomness is
// consumed. The core is the SplitMix64 finalizer (constants from Steele,
// Lea & Flood's published generator):
//
//   value(seed, i) = mix64(seed + (i + 1) * 0x9e3779b97f4a7c15)
//
// Being a pure function of (seed, counter) it is reproducible bit-for-bit
// across platforms and across any parallel schedule, which is part of the
// experiment contract. Per-element inclusion decisions compare a 53-bit
// uniform draw against the probability threshold; both sides are exact
// IEEE-754 doubles, so the comparison is platform-independent.

namespace cayleyfp::rng {

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// i-th value of the stream identified by `seed`.
inline constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t counter) {
  return mix64(seed + (counter + 1) * kGamma);
}

// Uniform draw in [0, 1) with 53-bit resolution.
inline double uniform53(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(at(seed, counter) >> 11) * 0x1.0p-53;
}

// Derives an independent per-trial seed from a master seed. Same finalizer,
// keyed by the trial index.
inline constexpr std::uint64_t split(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ at(0x243f6a8885a308d3ULL, index));
}

// Small stateful wrapper for sequential consumption.
struct Stream {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  explicit Stream(std::uint64_t s) : seed(s) {}

  std::uint64_t next() { return at(seed, counter++); }

  // Uniform in [0, bound). Modulo bias is negligible for the heuristic and
  // sampling uses this serves; platform independence is what matters here.
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace cayleyfp::rng
