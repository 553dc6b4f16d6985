#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cayleyfp {

// Exact nonnegative rational with a small numerator/denominator, used for the
// doubling constant so that classification boundaries are decided exactly
// rather than through floating-point rounding.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }

  // Three-way comparison of num/den against an exact IEEE double value:
  // the double is decomposed as M * 2^e with integer M, and the comparison
  // num * 2^-e vs M * den is carried out in 128-bit integers. Returns
  // -1, 0, +1.
  int cmp(double t) const {
    if (std::isnan(t)) throw std::invalid_argument("Rational::cmp: NaN");
    bool neg = num < 0;
    if (std::isinf(t)) return t > 0 ? -1 : 1;
    if (t == 0.0) return num == 0 ? 0 : (neg ? -1 : 1);
    if (num == 0) return t > 0 ? -1 : 1;
    if (neg && t > 0) return -1;
    if (!neg && t < 0) return 1;

    int e;
    double fm = std::frexp(t, &e);                     // t = fm * 2^e, |fm| in [0.5, 1)
    auto M = static_cast<long long>(std::ldexp(fm, 53));  // t = M * 2^(e-53), exactly
    int shift = e - 53;

    __int128 lhs = num;
    __int128 rhs = static_cast<__int128>(den) * M;
    // Fold 2^shift into whichever side keeps magnitudes bounded. |lhs| and
    // |rhs| start below 2^63 and 2^117; a shift of up to 10 bits at a time
    // with early exit cannot overflow 128 bits before the comparison is
    // already decided.
    while (shift > 0) {
      int s = shift > 10 ? 10 : shift;
      rhs <<= s;
      shift -= s;
      if (rhs > (static_cast<__int128>(1) << 122) || rhs < -(static_cast<__int128>(1) << 122))
        return (rhs > 0) ? -1 : 1;  // |t*den| astronomically larger than |num|
    }
    while (shift < 0) {
      int s = (-shift) > 10 ? 10 : -shift;
      lhs <<= s;
      shift += s;
      if (lhs > (static_cast<__int128>(1) << 122) || lhs < -(static_cast<__int128>(1) << 122))
        return (lhs > 0) ? 1 : -1;  // |num/den| astronomically larger than |t|
    }
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  bool operator<(double t) const { return cmp(t) < 0; }
  bool operator>=(double t) const { return cmp(t) >= 0; }
};

}  // namespace cayleyfp
