#include "cayleyfp/gap.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cayleyfp/errors.hpp"
#include "cayleyfp/logsum.hpp"

namespace cayleyfp {

void validate_gap(const Gap& P) {
  if (P.n < 1) throw std::invalid_argument("gap: modulus < 1");
  if (P.gens.empty()) throw std::invalid_argument("gap: dimension < 1");
  if (P.gens.size() != P.radii.size())
    throw std::invalid_argument("gap: generator/radius count mismatch");
  if (P.v0 < 0 || P.v0 >= P.n) throw std::invalid_argument("gap: base point out of range");
  for (int v : P.gens)
    if (v < 0 || v >= P.n) throw std::invalid_argument("gap: generator out of range");
  for (long long N : P.radii)
    if (N < 1) throw std::invalid_argument("gap: radius < 1");
}

boost::multiprecision::cpp_int gap_size(const Gap& P) {
  validate_gap(P);
  boost::multiprecision::cpp_int size = 1;
  for (long long N : P.radii) size *= 2 * boost::multiprecision::cpp_int(N) + 1;
  return size;
}

ZnSet gap_elements(const Gap& P) {
  constexpr long long kCap = 10000000;
  if (gap_size(P) > kCap)
    throw refusal_error("gap_elements: formal size exceeds 10^7");

  const int n = P.n;
  const int d = P.dim();
  ZnSet out(n);
  // odometer over (c_1..c_d), tracking the residue incrementally
  std::vector<int> step(d), width(d);
  long long corner = P.v0;
  for (int i = 0; i < d; ++i) {
    step[i] = P.gens[i] % n;
    width[i] = static_cast<int>(2 * P.radii[i]);  // kCap bounds each 2N+1
    corner -= (P.radii[i] % n) * step[i] % n;
    corner %= n;
  }
  corner = ((corner % n) + n) % n;

  std::vector<int> cnt(d, 0);
  long long cur = corner;
  for (;;) {
    out.add(static_cast<int>(cur));
    int i = 0;
    while (i < d && cnt[i] == width[i]) {
      cnt[i] = 0;
      // unwind axis i back to its low end: subtract width steps
      long long back = (static_cast<long long>(width[i]) % n) * step[i] % n;
      cur = (cur - back + n) % n;
      ++i;
    }
    if (i == d) break;
    ++cnt[i];
    cur = (cur + step[i]) % n;
  }
  return out;
}

bool gap_contains(const Gap& P, const ZnSet& A) {
  validate_gap(P);
  if (A.modulus() != P.n) throw std::invalid_argument("gap_contains: modulus mismatch");
  if (A.empty()) return true;
  ZnSet cover = gap_elements(P);
  ZnSet rest = A;
  rest.and_not_with(cover);
  return rest.empty();
}

Gap normalize_pow2(const Gap& P) {
  validate_gap(P);
  Gap out = P;
  for (auto& N : out.radii)
    N = static_cast<long long>(std::bit_ceil(static_cast<unsigned long long>(N)));
  return out;
}

double log_count_gaps(long long n, int d, double log_size_budget) {
  if (n < 1) throw std::invalid_argument("log_count_gaps: n < 1");
  if (d < 1) throw std::invalid_argument("log_count_gaps: d < 1");
  int B = 0;
  for (int e = 0; e < 63; ++e) {
    double contrib = std::log(2.0 * std::ldexp(1.0, e) + 1.0);
    if (contrib <= log_size_budget) ++B;
    else break;
  }
  return (d + 1) * std::log(static_cast<double>(n)) + ln_choose(B, d - 1);
}

std::string gap_to_string(const Gap& P) {
  validate_gap(P);
  std::ostringstream os;
  os << P.n << ';' << P.v0 << ';';
  for (size_t i = 0; i < P.gens.size(); ++i) os << (i ? "," : "") << P.gens[i];
  os << ';';
  for (size_t i = 0; i < P.radii.size(); ++i) os << (i ? "," : "") << P.radii[i];
  return os.str();
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) { parts.push_back(cur); cur.clear(); }
    else cur += c;
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Gap gap_parse(const std::string& text) {
  auto fields = split(text, ';');
  if (fields.size() != 4)
    throw std::invalid_argument("gap_parse: expected n;v0;gens;radii");
  Gap P;
  try {
    P.n = std::stoi(fields[0]);
    P.v0 = std::stoi(fields[1]);
    for (const auto& tok : split(fields[2], ',')) P.gens.push_back(std::stoi(tok));
    for (const auto& tok : split(fields[3], ',')) P.radii.push_back(std::stoll(tok));
  } catch (const std::exception&) {
    throw std::invalid_argument("gap_parse: malformed number in '" + text + "'");
  }
  validate_gap(P);
  return P;
}

}  // namespace cayleyfp
