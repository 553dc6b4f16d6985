#pragma once

#include <chrono>
#include <cstdint>

#include "cayleyfp/znset.hpp"

namespace cayleyfp {

// Cayley sum graph on Z_n: distinct x, y are adjacent iff x + y mod n lies in
// the connection set S. Adjacency is derived from S by rotation on demand,
// so a graph instance costs O(n) memory regardless of edge count.
class CayleyGraph {
 public:
  explicit CayleyGraph(ZnSet S) : S_(std::move(S)) {}

  int modulus() const { return S_.modulus(); }
  const ZnSet& connection_set() const { return S_; }

  bool adjacent(int x, int y) const {
    if (x == y) return false;
    int n = modulus();
    return S_.contains((x + y) % n);
  }

  // Row x of the adjacency relation: {y != x : x + y in S} = rot(S, -x) \ {x}.
  ZnSet neighbors(int x) const {
    ZnSet row = S_.rotated(modulus() - (x % modulus()));
    if (row.contains(x)) row.erase(x);
    return row;
  }

 private:
  ZnSet S_;
};

struct MisResult {
  int alpha = 0;
  ZnSet witness;
  uint64_t node_count = 0;
  std::chrono::microseconds elapsed{0};
  // Set when a search budget ran out: alpha is then the best independent set
  // found, a certified lower bound rather than the exact value.
  bool lower_bound_only = false;

  MisResult() : witness(1) {}
};

// True iff no two distinct members of A are adjacent in the Cayley sum graph
// of S, i.e. restricted_sumset(A) and S are disjoint.
bool is_independent(const ZnSet& A, const ZnSet& S);

// Exact independence number of the Cayley sum graph of S, with witness.
// The search is branch-and-bound over candidate bit-vectors: greedy clique
// cover of the residual candidates as the bound, branching in cover-class
// order, incumbent seeded by a deterministic randomized-greedy local search.
// Deterministic for a given S.
MisResult independence_number(const ZnSet& S);

// Same solver with a budget measured in search-tree nodes (0 = unlimited).
// Node budgets, unlike wall-clock deadlines, truncate the search at a
// reproducible point, which the experiment harness relies on for
// byte-identical reruns.
MisResult independence_number_nodes(const ZnSet& S, uint64_t node_budget);

// Duration budgets are converted to node budgets at this fixed documented
// rate, keeping truncated results machine-independent. The rate is a
// deliberate constant, not a measurement.
constexpr uint64_t kBudgetNodesPerMs = 3000;

MisResult independence_number(const ZnSet& S, std::chrono::milliseconds time_budget);

// Exact alpha by dynamic programming over all 2^n subsets; the test oracle.
// Refuses n > 32.
int brute_force_alpha(const ZnSet& S);

}  // namespace cayleyfp
