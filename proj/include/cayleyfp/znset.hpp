#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cayleyfp/rational.hpp"

namespace cayleyfp {

// Dense bit-vector subset of Z_n. Bits at positions >= n are kept zero as an
// invariant so word-level operations (popcount, equality, OR) need no
// special-casing.
class ZnSet {
 public:
  explicit ZnSet(int n);
  ZnSet(int n, const std::vector<int>& xs);

  int modulus() const { return n_; }
  int nwords() const { return static_cast<int>(w_.size()); }
  bool empty() const { return size() == 0; }
  int size() const;

  bool contains(int x) const;
  void add(int x);
  void erase(int x);
  void clear();

  std::vector<int> elements() const;  // sorted ascending
  int min_element() const;            // throws on empty set

  const std::vector<uint64_t>& words() const { return w_; }
  std::vector<uint64_t>& words() { return w_; }

  // {(s + a) mod n : s in S}
  ZnSet rotated(int a) const;

  void or_with(const ZnSet& o);
  void and_not_with(const ZnSet& o);  // set difference, this \ o
  ZnSet intersect(const ZnSet& o) const;

  friend bool operator==(const ZnSet& a, const ZnSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const ZnSet& a, const ZnSet& b) { return !(a == b); }

  std::string str() const;  // "{0, 1, 4}" for diagnostics

 private:
  int n_;
  std::vector<uint64_t> w_;

  void check_element(int x) const;
};

// Each residue of Z_n included independently with probability p, decided by
// the counter-based generator: residue i is in the set iff
// (rng::at(seed, i) >> 11) < p * 2^53. Both sides are doubles with exact
// integer left-hand values, so the draw is reproducible across platforms.
// Requires n >= 2 and p strictly inside (0, 1).
ZnSet sample_p_random(int n, double p, uint64_t seed);

// A + B = {a + b mod n}. Parallelized over the members of A when the work
// (|A| * words) is large enough to pay for thread startup; the result is
// bit-identical to the serial path because the merge is a pure OR.
ZnSet sumset(const ZnSet& A, const ZnSet& B);

// A +^ A = {a + a' mod n : a != a'}. Distinct-pair sums only; 2a enters the
// result only when some other pair also reaches it.
ZnSet restricted_sumset(const ZnSet& A);

// sigma(A) = |A + A| / |A| as an exact rational. Throws on empty A.
Rational doubling_sigma(const ZnSet& A);

// Trichotomy on the doubling constant used to route a set to the matching
// union-bound sum. Boundaries are decided by exact rational comparison
// against k^(1/4) (computed as sqrt(sqrt(k))) and delta*k/10:
//   X1: sigma <  k^(1/4)
//   X2: k^(1/4) <= sigma < delta*k/10
//   X3: otherwise
enum class SigmaClass { X1, X2, X3 };

struct DoublingClass {
  SigmaClass cls;
  Rational sigma;
  double k;
};

// Requires k > 0 and delta > 0.
SigmaClass classify_sigma(const Rational& sigma, double k, double delta);
DoublingClass classify_doubling(const ZnSet& A, double k, double delta);
const char* to_string(SigmaClass c);

}  // namespace cayleyfp
