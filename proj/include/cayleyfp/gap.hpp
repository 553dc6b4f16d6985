#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cayleyfp/znset.hpp"

namespace cayleyfp {

// Shifted centred generalized arithmetic progression in Z_n:
//   { v0 + sum_i c_i v_i  :  -N_i <= c_i <= N_i },  i = 1..d.
struct Gap {
  int n = 1;
  int v0 = 0;
  std::vector<int> gens;         // v_1 .. v_d, residues mod n
  std::vector<long long> radii;  // N_1 .. N_d, each >= 1

  int dim() const { return static_cast<int>(gens.size()); }
};

// Throws std::invalid_argument on malformed data (d < 1, residues out of
// range, radii < 1, mismatched lengths).
void validate_gap(const Gap& P);

// Formal size prod_i (2 N_i + 1); counts lattice points, not residues.
boost::multiprecision::cpp_int gap_size(const Gap& P);

// Residues covered by P. Refuses when the formal size exceeds 10^7.
ZnSet gap_elements(const Gap& P);

// A subset of the residues of P; empty A is trivially contained.
bool gap_contains(const Gap& P, const ZnSet& A);

// Round each radius up to the next power of two; size grows by < 2^d.
Gap normalize_pow2(const Gap& P);

// ln of the count proxy for gaps in Z_n of dimension d whose per-generator
// log-size contributions fit a budget: (d+1) ln n + ln C(B, d-1) where B is
// the number of exponents e >= 0 with ln(2*2^e + 1) <= log_size_budget.
double log_count_gaps(long long n, int d, double log_size_budget);

// "n;v0;v1,...,vd;N1,...,Nd"
std::string gap_to_string(const Gap& P);
Gap gap_parse(const std::string& text);

}  // namespace cayleyfp
