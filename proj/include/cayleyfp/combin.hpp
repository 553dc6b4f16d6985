#pragma once

#include <cstdint>
#include <vector>

namespace cayleyfp {

// C(n, k) saturated at cap+1 so callers can test "fits under cap" without
// overflow. Returns cap+1 whenever the true value exceeds cap.
inline std::uint64_t choose_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    // r fits under cap so r * (n-k+i) stays within 64 bits for sane caps
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    if (r > cap) return cap + 1;
  }
  return r;
}

// Lexicographic k-combinations of {0..n-1}. Seed with idx = {0,1,..,k-1};
// returns false once idx was the last combination.
inline bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace cayleyfp
