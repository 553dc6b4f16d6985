#include "cayleyfp/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "cayleyfp/errors.hpp"

namespace cayleyfp {

namespace {

constexpr long long kMaxTableRows = 10000000;

const char* kExponentNote =
    "per-term decay uses ln(1-p) directly; with k = (2+4delta) ln n / ln(1/(1-p)) "
    "this equals the n^(-...) exponent form";

void check_range(long long lo, long long hi) {
  if (hi - lo >= kMaxTableRows)
    throw refusal_error("bounds: term range exceeds table cap");
}

}  // namespace

void validate_params(const BoundParams& q) {
  if (q.n < 3) throw std::invalid_argument("bounds: n < 3");
  if (!(q.p > 0.0 && q.p < 1.0)) throw std::invalid_argument("bounds: p outside (0,1)");
  if (!(q.delta >= 0.0)) throw std::invalid_argument("bounds: delta < 0");
  if (!(q.alpha_slack > 0.0 && q.alpha_slack < 1.0 / 3.0))
    throw std::invalid_argument("bounds: alpha outside (0, 1/3)");
  if (!(q.eps_exponent >= 0.0)) throw std::invalid_argument("bounds: eps < 0");
  if (!(q.c_f > 0.0)) throw std::invalid_argument("bounds: c_f <= 0");
  if (q.k_coefficient && !(*q.k_coefficient > 0.0))
    throw std::invalid_argument("bounds: k coefficient <= 0");
}

double compute_k(long long n, double p, double delta) {
  if (n < 3) throw std::invalid_argument("compute_k: n < 3");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("compute_k: p outside (0,1)");
  if (!(delta >= 0.0)) throw std::invalid_argument("compute_k: delta < 0");
  return (2.0 + 4.0 * delta) * std::log(static_cast<double>(n)) / -std::log1p(-p);
}

double compute_k(const BoundParams& q) {
  validate_params(q);
  double coeff = q.k_coefficient ? *q.k_coefficient : 2.0 + 4.0 * q.delta;
  return coeff * std::log(static_cast<double>(q.n)) / -std::log1p(-q.p);
}

SumBound x1_log_bound(const BoundParams& q) {
  validate_params(q);
  const double k = compute_k(q);
  const double ln_n = std::log(static_cast<double>(q.n));
  const double ln_1mp = std::log1p(-q.p);
  const double kq = std::pow(k, 0.25 + q.eps_exponent);
  const long long D = static_cast<long long>(std::ceil(4.0 * std::pow(k, 0.25)));
  check_range(1, D + 1);

  SumBound out;
  out.notes.push_back(kExponentNote);
  LogSumExp acc;
  for (long long d = 1; d <= D; ++d) {
    double t = (d + 1) * ln_n;
    t += ln_choose(kq, static_cast<double>(d - 1));
    t += ln_choose(std::exp(kq), q.c_f * std::sqrt(static_cast<double>(d) * k));
    t += (1.0 - 2.0 * q.alpha_slack) * (d + 1) * k / 2.0 * ln_1mp;
    out.table.push_back({static_cast<double>(d), t});
    acc.add(t);
  }
  out.log_sum = acc.value();
  out.empty_range = out.table.empty();
  return out;
}

SumBound x2_log_bound(const BoundParams& q) {
  validate_params(q);
  const double k = compute_k(q);
  const double ln_n = std::log(static_cast<double>(q.n));
  const double ln_1mp = std::log1p(-q.p);
  const long long lo = static_cast<long long>(std::ceil(std::pow(k, 1.25)));
  const long long hi = static_cast<long long>(std::ceil(q.delta * k * k / 10.0));

  SumBound out;
  out.notes.push_back(kExponentNote);
  out.notes.push_back("m ranges over [ceil(k^(5/4)), ceil(delta k^2 / 10)]");
  if (lo > hi) {
    out.empty_range = true;
    return out;
  }
  check_range(lo, hi);
  LogSumExp acc;
  for (long long m = lo; m <= hi; ++m) {
    double t = (2.0 + 2.0 * q.delta) * (m / k) * ln_n;
    t += 4.0 * k * std::log(k);
    t += ((1.0 - q.delta / 2.0) * m + q.delta * m / 2.0) * ln_1mp;
    out.table.push_back({static_cast<double>(m), t});
    acc.add(t);
  }
  out.log_sum = acc.value();
  return out;
}

SumBound x3_log_bound(const BoundParams& q) {
  validate_params(q);
  const double k = compute_k(q);
  const double ln_n = std::log(static_cast<double>(q.n));
  const double ln_1mp = std::log1p(-q.p);
  const long long lo = std::max(1LL, static_cast<long long>(std::ceil(q.delta * k / 10.0)));
  const long long hi = static_cast<long long>(std::ceil(k));

  SumBound out;
  out.notes.push_back(kExponentNote);
  out.notes.push_back("m ranges over [max(1, ceil(delta k / 10)), ceil(k)]");
  if (lo > hi) {
    out.empty_range = true;
    return out;
  }
  check_range(lo, hi);
  LogSumExp acc;
  for (long long m = lo; m <= hi; ++m) {
    double t = (2.0 + 2.0 * q.delta) * (m / k) * ln_n + m * ln_1mp;
    out.table.push_back({static_cast<double>(m), t});
    acc.add(t);
  }
  out.log_sum = acc.value();
  return out;
}

long long expected_alpha_gnp(long long n, double p) {
  if (n < 1) throw std::invalid_argument("expected_alpha_gnp: n < 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("expected_alpha_gnp: p outside (0,1)");
  const double nn = static_cast<double>(n);
  const double ln_1mp = std::log1p(-p);
  long long best = 0;
  for (long long t = 1; t <= n; ++t) {
    double f = ln_choose(nn, static_cast<double>(t)) +
               (static_cast<double>(t) * (t - 1) / 2.0) * ln_1mp;
    if (f >= 0.0) best = t;
    else break;  // f is concave in t: once negative it stays negative
  }
  return best;
}

}  // namespace cayleyfp
