#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cayleyfp/logsum.hpp"

namespace cayleyfp {

struct BoundParams {
  long long n = 3;
  double p = 0.5;
  double delta = 0.1;
  double alpha_slack = 0.05;   // alpha in (0, 1/3)
  double eps_exponent = 0.0;   // eps >= 0
  double c_f = 1.0;            // fingerprint-size coefficient, > 0
  std::optional<double> k_coefficient;  // override for the 2 + 4*delta factor
};

void validate_params(const BoundParams& q);

// k = (2 + 4 delta) ln n / ln(1/(1-p)), the independence-number scale.
double compute_k(long long n, double p, double delta);
double compute_k(const BoundParams& q);  // honors k_coefficient

struct TermRow {
  double index;     // d or m
  double log_term;
};

struct SumBound {
  double log_sum = kNegInf;
  std::vector<TermRow> table;
  bool empty_range = false;
  std::vector<std::string> notes;
};

// Union-bound sums in log space for the three doubling classes.
// x1: sum over dimension d = 1 .. ceil(4 k^{1/4});
// x2: sum over m = ceil(k^{5/4}) .. ceil(delta k^2 / 10);
// x3: sum over m = max(1, ceil(delta k / 10)) .. ceil(k).
SumBound x1_log_bound(const BoundParams& q);
SumBound x2_log_bound(const BoundParams& q);
SumBound x3_log_bound(const BoundParams& q);

// max{ t : C(n,t) (1-p)^{C(t,2)} >= 1 }, the first-moment scale for the
// independence number of G(n, p), found by an upward scan.
long long expected_alpha_gnp(long long n, double p);

}  // namespace cayleyfp
