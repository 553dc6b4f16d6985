#include "cayleyfp/cayley.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <vector>

#include "cayleyfp/errors.hpp"
#include "cayleyfp/rng.hpp"

namespace cayleyfp {

bool is_independent(const ZnSet& A, const ZnSet& S) {
  if (A.modulus() != S.modulus())
    throw std::invalid_argument("is_independent: modulus mismatch");
  return restricted_sumset(A).intersect(S).empty();
}

namespace {

int popcount_words(const uint64_t* w, int nw) {
  int c = 0;
  for (int i = 0; i < nw; ++i) c += std::popcount(w[i]);
  return c;
}

int nth_set_bit(const uint64_t* w, int nw, int r) {
  for (int i = 0; i < nw; ++i) {
    int c = std::popcount(w[i]);
    if (r < c) {
      uint64_t v = w[i];
      while (r--) v &= v - 1;
      return i * 64 + std::countr_zero(v);
    }
    r -= c;
  }
  return -1;
}

// Maximum clique search on the complement graph: an independent set in the
// Cayley sum graph of S is a clique in the sum graph of S's complement, whose
// adjacency rows are rotations of a single mask.
struct CliqueSolver {
  int n, nw;
  std::vector<uint64_t> rows;  // n rows of nw words each
  uint64_t budget = 0;         // search nodes, 0 = unlimited
  uint64_t nodes = 0;
  bool truncated = false;
  int best = 0;
  std::vector<int> best_members;
  std::vector<int> cur;

  struct Level {
    std::vector<uint64_t> P, U, Q, W;
    std::vector<int> vs, col;
  };
  std::deque<Level> levels;  // deque: references stay valid as levels grow

  explicit CliqueSolver(const ZnSet& S) : n(S.modulus()), nw(S.nwords()) {
    ZnSet comp(n);
    for (int w = 0; w < nw; ++w) comp.words()[w] = ~S.words()[w];
    int r = n & 63;
    if (r) comp.words()[nw - 1] &= (~uint64_t{0}) >> (64 - r);

    rows.assign(static_cast<size_t>(n) * nw, 0);
    for (int x = 0; x < n; ++x) {
      ZnSet row = comp.rotated((n - x) % n);
      if (row.contains(x)) row.erase(x);
      std::copy(row.words().begin(), row.words().end(),
                rows.begin() + static_cast<size_t>(x) * nw);
    }
  }

  const uint64_t* row(int v) const { return rows.data() + static_cast<size_t>(v) * nw; }

  Level& level(int d) {
    while (static_cast<int>(levels.size()) <= d) {
      Level L;
      L.P.assign(nw, 0);
      L.U.assign(nw, 0);
      L.Q.assign(nw, 0);
      L.W.assign(nw, 0);
      L.vs.assign(n, 0);
      L.col.assign(n, 0);
      levels.push_back(std::move(L));
    }
    return levels[d];
  }

  void full_mask(uint64_t* dst) const {
    for (int w = 0; w < nw; ++w) dst[w] = ~uint64_t{0};
    int r = n & 63;
    if (r) dst[nw - 1] &= (~uint64_t{0}) >> (64 - r);
  }

  // Randomized greedy clique from candidate mask P (consumed).
  void greedy_extend(std::vector<int>& K, std::vector<uint64_t>& P, rng::Stream& rs) {
    int pc = popcount_words(P.data(), nw);
    while (pc > 0) {
      int v = nth_set_bit(P.data(), nw, static_cast<int>(rs.below(pc)));
      K.push_back(v);
      const uint64_t* rv = row(v);
      pc = 0;
      for (int w = 0; w < nw; ++w) {
        P[w] &= rv[w];
        pc += std::popcount(P[w]);
      }
    }
  }

  // Incumbent via multi-start randomized greedy with plateau-accepting
  // removals. Seeded from the instance content only, so the result is the
  // same wherever the solve runs.
  void seed_incumbent(const ZnSet& S) {
    uint64_t h = rng::mix64(0x1905b5c1f0a4bd21ULL ^ static_cast<uint64_t>(n));
    for (uint64_t w : S.words()) h = rng::mix64(h ^ w);
    rng::Stream rs(h);

    int iters = n <= 64 ? 400 : 40000;
    std::vector<uint64_t> P(nw);
    std::vector<int> K, trial;
    full_mask(P.data());
    greedy_extend(K, P, rs);
    best = static_cast<int>(K.size());
    best_members = K;

    int stale = 0;
    for (int it = 0; it < iters; ++it) {
      trial = K;
      int drop = 1 + static_cast<int>(rs.below(2));
      while (drop-- > 0 && trial.size() > 1)
        trial.erase(trial.begin() + static_cast<size_t>(rs.below(trial.size())));
      full_mask(P.data());
      for (int v : trial)
        for (int w = 0; w < nw; ++w) P[w] &= row(v)[w];
      greedy_extend(trial, P, rs);
      if (trial.size() >= K.size()) K = trial;
      if (static_cast<int>(K.size()) > best) {
        best = static_cast<int>(K.size());
        best_members = K;
        stale = 0;
      } else if (++stale > 4000) {
        K.clear();
        full_mask(P.data());
        greedy_extend(K, P, rs);
        stale = 0;
      }
    }
  }

  void expand(int depth) {
    ++nodes;
    if (budget && nodes > budget) {
      truncated = true;
      return;
    }
    Level& L = level(depth);
    uint64_t* P = L.P.data();
    int pc = popcount_words(P, nw);
    if (pc == 0) {
      if (depth > best) {
        best = depth;
        best_members = cur;
      }
      return;
    }
    if (depth + pc <= best) return;

    // Greedy cover of P by independent-in-complement classes; class index is
    // the bound on how much clique the covered vertices can still add.
    uint64_t* U = L.U.data();
    uint64_t* Q = L.Q.data();
    std::copy(P, P + nw, U);
    int m = 0, c = 0;
    int ucount = pc;
    while (ucount > 0) {
      ++c;
      std::copy(U, U + nw, Q);
      for (int w = 0; w < nw; ++w) {
        while (Q[w]) {
          int v = w * 64 + std::countr_zero(Q[w]);
          uint64_t bit = uint64_t{1} << (v & 63);
          Q[w] &= ~bit;
          U[w] &= ~bit;
          --ucount;
          const uint64_t* rv = row(v);
          for (int w2 = w; w2 < nw; ++w2) Q[w2] &= ~rv[w2];
          L.vs[m] = v;
          L.col[m] = c;
          ++m;
        }
      }
    }

    uint64_t* W = L.W.data();
    std::copy(P, P + nw, W);
    Level& child = level(depth + 1);
    for (int i = m - 1; i >= 0; --i) {
      if (depth + L.col[i] <= best) return;
      int v = L.vs[i];
      W[v >> 6] &= ~(uint64_t{1} << (v & 63));
      const uint64_t* rv = row(v);
      uint64_t* CP = child.P.data();
      for (int w = 0; w < nw; ++w) CP[w] = W[w] & rv[w];
      cur.push_back(v);
      expand(depth + 1);
      cur.pop_back();
      if (truncated) return;
    }
  }
};

}  // namespace

MisResult independence_number_nodes(const ZnSet& S, uint64_t node_budget) {
  auto t0 = std::chrono::steady_clock::now();
  CliqueSolver solver(S);
  solver.budget = node_budget;
  solver.seed_incumbent(S);
  solver.full_mask(solver.level(0).P.data());
  solver.expand(0);

  MisResult res;
  res.alpha = solver.best;
  res.node_count = solver.nodes;
  res.lower_bound_only = solver.truncated;
  res.witness = ZnSet(S.modulus());
  for (int v : solver.best_members) res.witness.add(v);
  res.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - t0);
  if (!is_independent(res.witness, S))
    throw std::logic_error("independence_number: witness failed verification");
  return res;
}

MisResult independence_number(const ZnSet& S) { return independence_number_nodes(S, 0); }

MisResult independence_number(const ZnSet& S, std::chrono::milliseconds time_budget) {
  uint64_t ms = static_cast<uint64_t>(std::max<long long>(1, time_budget.count()));
  return independence_number_nodes(S, ms * kBudgetNodesPerMs);
}

int brute_force_alpha(const ZnSet& S) {
  int n = S.modulus();
  if (n > 32)
    throw refusal_error("brute_force_alpha: refusing n=" + std::to_string(n) +
                        " (subset enumeration capped at n=32)");
  std::vector<uint32_t> adj(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && S.contains((x + y) % n)) adj[x] |= uint32_t{1} << y;

  size_t total = size_t{1} << n;
  std::vector<bool> indep(total, false);
  indep[0] = true;
  int alpha = 0;
  for (size_t mask = 1; mask < total; ++mask) {
    uint32_t m32 = static_cast<uint32_t>(mask);
    int v = std::countr_zero(m32);
    uint32_t rest = m32 & (m32 - 1);
    if (indep[rest] && (adj[v] & rest) == 0) {
      indep[mask] = true;
      alpha = std::max(alpha, std::popcount(m32));
    }
  }
  return alpha;
}

}  // namespace cayleyfp
