#pragma once

#include <cstdint>

namespace cayleyfp {

struct PrimalityResult {
  bool prime;
  // For composites: a Miller-Rabin base witnessing compositeness, or the
  // number itself when it is caught structurally (even, < 2). 0 for primes.
  std::uint64_t witness;
};

// Deterministic Miller-Rabin over the twelve bases 2..37, sound for all
// 64-bit inputs.
PrimalityResult check_prime(std::uint64_t n);

inline bool is_prime_u64(std::uint64_t n) { return check_prime(n).prime; }

}  // namespace cayleyfp
