#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cayleyfp/rational.hpp"
#include "cayleyfp/znset.hpp"

namespace cayleyfp {

struct GreedyTrace {
  std::vector<int> picks;  // chosen translates, in pick order
  std::vector<int> gains;  // marginal |new sums| per pick, nonincreasing
};

struct TranslateSelection {
  ZnSet T;
  GreedyTrace trace;
};

// Greedy choice of t translates from T' maximizing coverage of T' + X.
// Guarantees |T + X| * |T'| >= t * |T' + X| (checked internally).
TranslateSelection greedy_translate_selection(const ZnSet& Tprime, const ZnSet& X, int t);

enum class FingerprintMode { kGreedy, kExhaustive };

// T subset of X with |T| <= budget, maximizing (greedily or exactly) the
// coverage |T + X|. Exhaustive mode refuses when C(|X|, budget) > 10^6 and
// breaks ties toward the lexicographically smallest element tuple.
ZnSet find_fingerprint(const ZnSet& X, int budget, FingerprintMode mode);

struct RobustSubsetResult {
  ZnSet X;
  int rounds;
  double epsilon;
  double L;  // log_{1/(1-a)}(2 sigma(A))
};

// Iteratively replace X by the first subset of size >= (1-eps)|X| whose
// Freiman dimension drops below (1-a) dim_f(X), until none exists. The
// subset scan order is fixed: sizes ascending, index tuples lexicographic.
RobustSubsetResult robust_subset(const ZnSet& A, double a,
                                 std::optional<double> eps_override = std::nullopt);

struct PhaseOneRound {
  ZnSet T;
  int achieved;   // |T + X_i|
  double target;  // (1-2a)(d+1)|X_i| / 2
};

// Repeated fingerprint extraction: X_{i+1} = X_i \ T_i for
// ell = max(1, round(sqrt(|X|/d))) rounds, stopping early when X_i empties.
std::vector<PhaseOneRound> phase_one(const ZnSet& X, double a, int C);

inline int planned_rounds(int x_size, int d) {
  return std::max(1, static_cast<int>(std::lround(std::sqrt(
                         static_cast<double>(x_size) / static_cast<double>(d)))));
}

enum class PhaseTwoStop { kTargetMet, kStalled, kCapReached };
const char* to_string(PhaseTwoStop s);

struct PhaseTwoResult {
  ZnSet Fprime;
  std::vector<int> gains;  // strictly positive, per accepted element
  PhaseTwoStop stop;
  int y_size;       // |Y| when the loop stopped
  double target;    // (1-5a)(d+1)|X| / 2
};

// Grow Y = F_T +^ F_T by adding x in X maximizing |(F_T + x) \ Y| until the
// target is met, no positive gain remains, or |F'| hits abs_cap.
PhaseTwoResult phase_two(const ZnSet& F_T, const ZnSet& X, int d, double a, int abs_cap);

struct PipelineParams {
  int C = 1;
  double xi = 1.0;
  std::optional<double> Cprime;        // padding coefficient, default C + 2/a
  std::optional<int> abs_cap;          // phase-two cap, default ceil((2/a) sqrt(d |A|))
  std::optional<double> eps_override;  // robustness epsilon, default a / L
};

struct FingerprintReport {
  ZnSet A;
  double a;
  Rational K;  // sigma(A)
  double L;
  double epsilon;
  ZnSet X;
  int robust_rounds;
  int d;    // dim_f(X)
  int ell;  // planned phase-one rounds
  std::vector<PhaseOneRound> rounds;
  ZnSet F_T;
  PhaseTwoResult phase2;
  ZnSet F;
  int padding_added;
  bool padding_capped;  // requested size exceeded |X|
  int achieved;         // |F +^ F|
  double target;        // (1-a)(d+1)|A| / 2
  double ratio;         // achieved / target, reported not asserted
  bool hypothesis_k_small;  // K <= xi |A| / ln^2 |A|
  bool epsilon_regime;      // epsilon > 4 C sqrt(K / |X|)
};

FingerprintReport fingerprint_pipeline(const ZnSet& A, double a,
                                       const PipelineParams& params = {});

// Pretty-printed JSON with keys in report order.
std::string to_json(const FingerprintReport& r);

}  // namespace cayleyfp
