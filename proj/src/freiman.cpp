#include "cayleyfp/freiman.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "cayleyfp/combin.hpp"
#include "cayleyfp/errors.hpp"

namespace cayleyfp {

namespace {

// Pair-sum buckets keyed by sum value; pairs (i,j), i <= j, in lex order.
template <typename Key, typename SumFn>
std::map<Key, std::vector<std::pair<int, int>>> pair_sum_buckets(int m, SumFn sum) {
  std::map<Key, std::vector<std::pair<int, int>>> buckets;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) buckets[sum(i, j)].push_back({i, j});
  return buckets;
}

template <typename Key>
std::vector<QuadrupleRelation> relations_from_buckets(
    const std::map<Key, std::vector<std::pair<int, int>>>& buckets) {
  std::vector<QuadrupleRelation> rels;
  for (const auto& [sum, pairs] : buckets) {
    for (size_t a = 0; a < pairs.size(); ++a)
      for (size_t b = a + 1; b < pairs.size(); ++b)
        rels.push_back({pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second});
  }
  std::sort(rels.begin(), rels.end());
  return rels;
}

// Fraction-free elimination; entries stay integer minors of the input.
// The __int128 instantiation guards every stored entry at 2^62 so operand
// products fit in 127 bits; on guard failure the caller reruns with cpp_int.
template <typename T>
int bareiss_rank(std::vector<std::vector<T>>& rows, int m, bool* overflow) {
  constexpr bool kChecked = std::is_same_v<T, __int128>;
  const int nrows = static_cast<int>(rows.size());
  int rank = 0;
  T prev = 1;
  for (int col = 0; col < m && rank < nrows; ++col) {
    int piv = -1;
    for (int r = rank; r < nrows; ++r)
      if (rows[r][col] != 0) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = rank + 1; r < nrows; ++r) {
      for (int c = col + 1; c < m; ++c) {
        T v = (rows[rank][col] * rows[r][c] - rows[r][col] * rows[rank][c]) / prev;
        if constexpr (kChecked) {
          constexpr __int128 kLim = static_cast<__int128>(1) << 62;
          if (v > kLim || v < -kLim) { *overflow = true; return -1; }
        }
        rows[r][c] = v;
      }
      rows[r][col] = 0;
    }
    prev = rows[rank][col];
    ++rank;
  }
  return rank;
}

// Rank over Q of the quadruple relation rows for a set with pair-sum
// buckets as given. Within one bucket of c pairs, the C(c,2) relation rows
// and the c-1 consecutive-pair rows span the same space, so only the chain
// rows are materialized.
template <typename Key>
int relation_rank(const std::map<Key, std::vector<std::pair<int, int>>>& buckets, int m) {
  std::vector<std::array<int, 4>> chain;
  for (const auto& [sum, pairs] : buckets) {
    for (size_t a = 0; a + 1 < pairs.size(); ++a)
      chain.push_back({pairs[a].first, pairs[a].second, pairs[a + 1].first, pairs[a + 1].second});
  }
  auto build = [&](auto zero) {
    using T = decltype(zero);
    std::vector<std::vector<T>> rows;
    rows.reserve(chain.size());
    for (const auto& q : chain) {
      std::vector<T> row(m, zero);
      row[q[0]] += 1;
      row[q[1]] += 1;
      row[q[2]] -= 1;
      row[q[3]] -= 1;
      rows.push_back(std::move(row));
    }
    return rows;
  };
  bool overflow = false;
  auto fast = build(static_cast<__int128>(0));
  int r = bareiss_rank(fast, m, &overflow);
  if (!overflow) return r;
  auto wide = build(boost::multiprecision::cpp_int(0));
  return bareiss_rank(wide, m, &overflow);
}

}  // namespace

std::vector<QuadrupleRelation> additive_quadruples(const ZnSet& A) {
  if (A.empty()) throw std::invalid_argument("additive_quadruples: empty set");
  const std::vector<int> el = A.elements();
  const int m = static_cast<int>(el.size());
  const int n = A.modulus();
  auto buckets = pair_sum_buckets<int>(m, [&](int i, int j) { return (el[i] + el[j]) % n; });
  return relations_from_buckets(buckets);
}

std::vector<QuadrupleRelation> additive_quadruples(const std::vector<std::vector<int>>& pts) {
  if (pts.empty()) throw std::invalid_argument("additive_quadruples: empty tuple");
  const int m = static_cast<int>(pts.size());
  const size_t dim = pts[0].size();
  for (const auto& p : pts)
    if (p.size() != dim) throw std::invalid_argument("additive_quadruples: ragged points");
  auto buckets = pair_sum_buckets<std::vector<int>>(m, [&](int i, int j) {
    std::vector<int> s(dim);
    for (size_t c = 0; c < dim; ++c) s[c] = pts[i][c] + pts[j][c];
    return s;
  });
  return relations_from_buckets(buckets);
}

int freiman_dimension(const ZnSet& A, int size_cap) {
  if (A.empty()) throw std::invalid_argument("freiman_dimension: empty set");
  const std::vector<int> el = A.elements();
  const int m = static_cast<int>(el.size());
  if (m > size_cap || m > 64)
    throw refusal_error("freiman_dimension: set size " + std::to_string(m) +
                        " exceeds exact-arithmetic cap");
  if (m == 1) return 1;
  const int n = A.modulus();
  auto buckets = pair_sum_buckets<int>(m, [&](int i, int j) { return (el[i] + el[j]) % n; });
  int r = relation_rank(buckets, m);
  return std::max(m - 1 - r, 1);
}

namespace {

struct EmbedSearch {
  int m;
  int d;
  int box;
  const std::vector<int>* sa;  // pair sums of A, indexed i*m+j for i<=j
  std::vector<std::vector<int>> pts;
  // forcing relations per index t: (t appears once) b_t = b_k + b_l - b_o,
  // or (pair (t,t)) 2 b_t = b_k + b_l
  struct Force {
    bool doubled;
    int k, l, o;
  };
  std::vector<std::vector<Force>> forces;

  int asum(int i, int j) const { return (*sa)[std::min(i, j) * m + std::max(i, j)]; }

  // Exact-relation check of pair (i,t) and (t,t) sums against all pairs
  // with both indices <= t. Point sums must collide iff the A sums do.
  bool consistent(int t) const {
    auto psum = [&](int i, int j, int c) { return pts[i][c] + pts[j][c]; };
    for (int i = 0; i <= t; ++i) {
      for (int k = 0; k <= t; ++k) {
        for (int l = k; l <= t; ++l) {
          if (k == i && l == t) continue;  // same pair
          bool eq_a = asum(i, t) == asum(k, l);
          bool eq_b = true;
          for (int c = 0; c < d && eq_b; ++c) eq_b = psum(i, t, c) == psum(k, l, c);
          if (eq_a != eq_b) return false;
        }
      }
    }
    return true;
  }

  bool place(int t, int active, int unforced_left) {
    if (t == m) return active == d;
    // remaining unforced steps cannot activate enough axes
    if (!forces[t].empty()) {
      std::vector<int> cand(d, 0);
      bool feasible = true;
      const Force& f0 = forces[t][0];
      for (int c = 0; c < d && feasible; ++c) {
        if (f0.doubled) {
          int s = pts[f0.k][c] + pts[f0.l][c];
          if (s % 2 != 0) feasible = false;
          else cand[c] = s / 2;
        } else {
          cand[c] = pts[f0.k][c] + pts[f0.l][c] - pts[f0.o][c];
        }
        if (feasible && (cand[c] < -box || cand[c] > box)) feasible = false;
      }
      for (size_t q = 1; q < forces[t].size() && feasible; ++q) {
        const Force& f = forces[t][q];
        for (int c = 0; c < d && feasible; ++c) {
          int want = f.doubled ? pts[f.k][c] + pts[f.l][c]
                               : pts[f.k][c] + pts[f.l][c] - pts[f.o][c];
          int have = f.doubled ? 2 * cand[c] : cand[c];
          if (have != want) feasible = false;
        }
      }
      if (!feasible) return false;
      for (int i = 0; i < t; ++i)
        if (pts[i] == cand) return false;
      pts[t] = cand;
      if (!consistent(t)) return false;
      return place(t + 1, active, unforced_left);
    }
    if (active + unforced_left < d) return false;
    // Unforced: enumerate candidates in echelon form. Coordinates on the
    // active axes range over [-box, box]; optionally activate the next axis
    // with a positive first-use coordinate. Later axes stay zero.
    std::vector<int> cand(d, 0);
    auto try_cand = [&](int new_active) -> bool {
      for (int i = 0; i < t; ++i)
        if (pts[i] == cand) return false;
      pts[t] = cand;
      if (!consistent(t)) return false;
      return place(t + 1, new_active, unforced_left - 1);
    };
    // odometer over the first `active` coordinates
    auto sweep = [&](int extra_axis) -> bool {
      for (int c = 0; c < active; ++c) cand[c] = -box;
      while (true) {
        if (extra_axis < 0) {
          if (try_cand(active)) return true;
        } else {
          for (int v = 1; v <= box; ++v) {
            cand[extra_axis] = v;
            if (try_cand(active + 1)) return true;
          }
          cand[extra_axis] = 0;
        }
        int c = 0;
        while (c < active && cand[c] == box) cand[c++] = -box;
        if (c == active) break;
        ++cand[c];
      }
      return false;
    };
    if (sweep(-1)) return true;
    if (active < d && sweep(active)) return true;
    return false;
  }
};

}  // namespace

int freiman_dimension_oracle(const ZnSet& A, int box) {
  if (A.empty()) throw std::invalid_argument("freiman_dimension_oracle: empty set");
  if (box < 1) throw std::invalid_argument("freiman_dimension_oracle: box < 1");
  const std::vector<int> el = A.elements();
  const int m = static_cast<int>(el.size());
  if (m > 6) throw refusal_error("freiman_dimension_oracle: set size exceeds 6");
  if (m == 1) return 1;
  const int n = A.modulus();

  std::vector<int> sa(m * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) sa[i * m + j] = (el[i] + el[j]) % n;

  // Every relation pins its maximal index: (i,j)~(k,l) with max index t has
  // t exactly once (b_t affine in earlier points) or as the pair (t,t)
  // (2 b_t pinned). Steps with no pinning relation are the only ones that
  // can activate a new axis.
  std::vector<std::vector<EmbedSearch::Force>> forces(m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      for (int k = i; k < m; ++k) {
        for (int l = k; l < m; ++l) {
          if (std::make_pair(k, l) <= std::make_pair(i, j)) continue;
          if (sa[i * m + j] != sa[k * m + l]) continue;
          int t = std::max(j, l);
          if (l == t) {
            if (k == t)
              forces[t].push_back({true, i, j, 0});
            else
              forces[t].push_back({false, i, j, k});
          } else {  // j == t, l < t; i < t since (i,j) < (k,l)
            forces[t].push_back({false, k, l, i});
          }
        }
      }
    }
  }
  int unforced = 0;
  for (int t = 1; t < m; ++t)
    if (forces[t].empty()) ++unforced;

  for (int d = m - 1; d >= 2; --d) {
    if (unforced < d) continue;
    EmbedSearch s;
    s.m = m;
    s.d = d;
    s.box = box;
    s.sa = &sa;
    s.pts.assign(m, std::vector<int>(d, 0));
    s.forces = forces;
    if (s.place(1, 0, unforced)) return d;
  }
  return 1;
}

Observation2Result check_observation2(const ZnSet& A) {
  Rational sigma = doubling_sigma(A);
  int dim = freiman_dimension(A);
  Rational k_bound(2 * sigma.num, sigma.den);
  // dim < 2 num/den with den > 0
  bool ok = static_cast<long long>(dim) * sigma.den < 2 * sigma.num;
  return {sigma, k_bound, dim, ok};
}

bool is_freiman_robust(const ZnSet& X, const RobustnessParams& params) {
  if (X.empty()) throw std::invalid_argument("is_freiman_robust: empty set");
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0))
    throw std::invalid_argument("is_freiman_robust: epsilon outside (0,1)");
  if (!(params.beta > 0.0 && params.beta < 1.0))
    throw std::invalid_argument("is_freiman_robust: beta outside (0,1)");
  const std::vector<int> el = X.elements();
  const int m = static_cast<int>(el.size());
  const int d = freiman_dimension(X);
  const int smin = robust_min_size(m, params.epsilon);

  constexpr std::uint64_t kCap = 1000000;
  std::uint64_t total = 0;
  for (int s = smin; s <= m; ++s) {
    total += choose_capped(m, s, kCap);
    if (total > kCap)
      throw refusal_error("is_freiman_robust: subset count exceeds 10^6");
  }

  const int n = X.modulus();
  for (int s = smin; s <= m; ++s) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i) idx[i] = i;
    do {
      ZnSet sub(n);
      for (int i : idx) sub.add(el[i]);
      if (!keeps_dimension(freiman_dimension(sub), d, params.beta)) return false;
    } while (next_combination(idx, m));
  }
  return true;
}

}  // namespace cayleyfp
