#pragma once

#include <cmath>
#include <vector>

#include "cayleyfp/rational.hpp"
#include "cayleyfp/znset.hpp"

namespace cayleyfp {

// a_i + a_j = a_k + a_l over indices into the sorted element list, with
// i <= j, k <= l, (i,j) < (k,l) lexicographically and {i,j} != {k,l} as
// multisets. One record per unordered pair of pairs.
struct QuadrupleRelation {
  int i, j, k, l;
  friend bool operator==(const QuadrupleRelation&, const QuadrupleRelation&) = default;
  friend auto operator<=>(const QuadrupleRelation&, const QuadrupleRelation&) = default;
};

// Complete canonical list of nontrivial quadruple relations; the ambient
// group is Z_n for the set form and Z^d (exact integer sums) for the point
// tuple form. In the point form, index order is the tuple order given.
std::vector<QuadrupleRelation> additive_quadruples(const ZnSet& A);
std::vector<QuadrupleRelation> additive_quadruples(
    const std::vector<std::vector<int>>& pts);

// dim_f(A) = max(|A| - 1 - r, 1), r the rank over Q of the matrix with one
// row e_i + e_j - e_k - e_l per quadruple relation. The floor at 1 is the
// "trivially dim_f >= 1" convention. Rank is computed by fraction-free
// integer elimination, exact in 128-bit arithmetic for |A| <= 64.
int freiman_dimension(const ZnSet& A, int size_cap = 64);

// Independent validation for tiny sets: largest d <= |A|-1 such that an
// exhaustive search finds points of Z^d with coordinates in [-box, box],
// full affine rank d, and exactly A's relation list (index-for-index, which
// covers all bijections). Falls back to the dimension floor 1 when no d >= 2
// embedding exists in the box. |A| <= 6 enforced.
int freiman_dimension_oracle(const ZnSet& A, int box = 4);

struct Observation2Result {
  Rational sigma;    // K = sigma(A)
  Rational k_bound;  // 2K
  int dim;
  bool ok;           // dim < 2K
};
Observation2Result check_observation2(const ZnSet& A);

struct RobustnessParams {
  double epsilon;  // in (0,1)
  double beta;     // in (0,1)
};

// Smallest subset size that still counts as "keeping a (1-eps) fraction".
inline int robust_min_size(int m, double epsilon) {
  return static_cast<int>(std::ceil((1.0 - epsilon) * m));
}

// Whether a subset dimension dprime keeps a (1-beta) fraction of dim d.
inline bool keeps_dimension(int dprime, int d, double beta) {
  return !(dprime < (1.0 - beta) * d);
}

// True iff every X' subset of X with |X'| >= (1-eps)|X| has
// dim_f(X') >= (1-beta) dim_f(X). Enumerates qualifying subsets; refuses
// when more than 10^6 would be needed.
bool is_freiman_robust(const ZnSet& X, const RobustnessParams& params);

}  // namespace cayleyfp
