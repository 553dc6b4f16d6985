#include "cayleyfp/znset.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cayleyfp/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cayleyfp {

namespace {

constexpr uint64_t kAll = ~uint64_t{0};

inline uint64_t tail_mask(int n) {
  int r = n & 63;
  return r ? (kAll >> (64 - r)) : kAll;
}

// dst |= rot(src, a) over an n-bit ring; dst's tail is re-masked afterwards.
// rot moves bit s to (s + a) mod n, realized as (src << a) | (src >> (n - a))
// carried out across words.
void or_rot_into(const uint64_t* src, int n, int a, uint64_t* dst, int nw) {
  int ws = a >> 6, bs = a & 63;
  for (int i = nw - 1; i >= ws; --i) {
    uint64_t v = src[i - ws] << bs;
    if (bs && i - ws - 1 >= 0) v |= src[i - ws - 1] >> (64 - bs);
    dst[i] |= v;
  }
  if (a != 0) {
    int b = n - a;
    int ws2 = b >> 6, bs2 = b & 63;
    for (int i = 0; i + ws2 < nw; ++i) {
      uint64_t v = src[i + ws2] >> bs2;
      if (bs2 && i + ws2 + 1 < nw) v |= src[i + ws2 + 1] << (64 - bs2);
      dst[i] |= v;
    }
  }
  dst[nw - 1] &= tail_mask(n);
}

// Work below this many word-writes is cheaper serial than spinning up a team.
constexpr long long kParallelThreshold = 1LL << 15;

}  // namespace

ZnSet::ZnSet(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("ZnSet: modulus must be >= 1");
  w_.assign((n + 63) / 64, 0);
}

ZnSet::ZnSet(int n, const std::vector<int>& xs) : ZnSet(n) {
  for (int x : xs) add(x);
}

void ZnSet::check_element(int x) const {
  if (x < 0 || x >= n_)
    throw std::invalid_argument("ZnSet: element " + std::to_string(x) +
                                " out of range for modulus " + std::to_string(n_));
}

int ZnSet::size() const {
  int c = 0;
  for (uint64_t v : w_) c += std::popcount(v);
  return c;
}

bool ZnSet::contains(int x) const {
  check_element(x);
  return (w_[x >> 6] >> (x & 63)) & 1;
}

void ZnSet::add(int x) {
  check_element(x);
  w_[x >> 6] |= uint64_t{1} << (x & 63);
}

void ZnSet::erase(int x) {
  check_element(x);
  w_[x >> 6] &= ~(uint64_t{1} << (x & 63));
}

void ZnSet::clear() { std::fill(w_.begin(), w_.end(), 0); }

std::vector<int> ZnSet::elements() const {
  std::vector<int> out;
  out.reserve(size());
  for (int wi = 0; wi < nwords(); ++wi) {
    uint64_t v = w_[wi];
    while (v) {
      out.push_back(wi * 64 + std::countr_zero(v));
      v &= v - 1;
    }
  }
  return out;
}

int ZnSet::min_element() const {
  for (int wi = 0; wi < nwords(); ++wi)
    if (w_[wi]) return wi * 64 + std::countr_zero(w_[wi]);
  throw std::invalid_argument("ZnSet::min_element: empty set");
}

ZnSet ZnSet::rotated(int a) const {
  a %= n_;
  if (a < 0) a += n_;
  ZnSet out(n_);
  or_rot_into(w_.data(), n_, a, out.w_.data(), nwords());
  return out;
}

void ZnSet::or_with(const ZnSet& o) {
  if (o.n_ != n_) throw std::invalid_argument("ZnSet::or_with: modulus mismatch");
  for (int i = 0; i < nwords(); ++i) w_[i] |= o.w_[i];
}

void ZnSet::and_not_with(const ZnSet& o) {
  if (o.n_ != n_) throw std::invalid_argument("ZnSet::and_not_with: modulus mismatch");
  for (int i = 0; i < nwords(); ++i) w_[i] &= ~o.w_[i];
}

ZnSet ZnSet::intersect(const ZnSet& o) const {
  if (o.n_ != n_) throw std::invalid_argument("ZnSet::intersect: modulus mismatch");
  ZnSet out(n_);
  for (int i = 0; i < nwords(); ++i) out.w_[i] = w_[i] & o.w_[i];
  return out;
}

std::string ZnSet::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int x : elements()) {
    if (!first) os << ", ";
    os << x;
    first = false;
  }
  os << "}";
  return os.str();
}

ZnSet sample_p_random(int n, double p, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("sample_p_random: n must be >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("sample_p_random: p must lie strictly in (0, 1)");
  ZnSet out(n);
  const double threshold = p * 9007199254740992.0;  // p * 2^53
  for (int i = 0; i < n; ++i) {
    double r = static_cast<double>(rng::at(seed, static_cast<uint64_t>(i)) >> 11);
    if (r < threshold) out.add(i);
  }
  return out;
}

ZnSet sumset(const ZnSet& A, const ZnSet& B) {
  if (A.modulus() != B.modulus())
    throw std::invalid_argument("sumset: modulus mismatch");
  const int n = A.modulus();
  const int nw = A.nwords();
  ZnSet out(n);
  std::vector<int> as = A.elements();
  const uint64_t* src = B.words().data();

#ifdef _OPENMP
  long long work = static_cast<long long>(as.size()) * nw;
  if (work >= kParallelThreshold) {
    uint64_t* dst = out.words().data();
#pragma omp parallel
    {
      std::vector<uint64_t> acc(nw, 0);
#pragma omp for schedule(static) nowait
      for (long long i = 0; i < static_cast<long long>(as.size()); ++i)
        or_rot_into(src, n, as[i], acc.data(), nw);
#pragma omp critical(cayleyfp_sumset_merge)
      for (int w = 0; w < nw; ++w) dst[w] |= acc[w];
    }
    return out;
  }
#endif
  for (int a : as) or_rot_into(src, n, a, out.words().data(), nw);
  return out;
}

ZnSet restricted_sumset(const ZnSet& A) {
  const int n = A.modulus();
  const int nw = A.nwords();
  ZnSet out(n);
  std::vector<int> as = A.elements();
  const uint64_t* src = A.words().data();

  auto accumulate = [&](int a, uint64_t* acc, uint64_t* tmp) {
    std::fill(tmp, tmp + nw, 0);
    or_rot_into(src, n, a, tmp, nw);
    int d = (2 * a) % n;  // drop a + a: only distinct pairs contribute
    tmp[d >> 6] &= ~(uint64_t{1} << (d & 63));
    for (int w = 0; w < nw; ++w) acc[w] |= tmp[w];
  };

#ifdef _OPENMP
  long long work = static_cast<long long>(as.size()) * nw;
  if (work >= kParallelThreshold) {
    uint64_t* dst = out.words().data();
#pragma omp parallel
    {
      std::vector<uint64_t> acc(nw, 0), tmp(nw, 0);
#pragma omp for schedule(static) nowait
      for (long long i = 0; i < static_cast<long long>(as.size()); ++i)
        accumulate(as[i], acc.data(), tmp.data());
#pragma omp critical(cayleyfp_rsumset_merge)
      for (int w = 0; w < nw; ++w) dst[w] |= acc[w];
    }
    return out;
  }
#endif
  std::vector<uint64_t> tmp(nw, 0);
  for (int a : as) accumulate(a, out.words().data(), tmp.data());
  return out;
}

Rational doubling_sigma(const ZnSet& A) {
  int k = A.size();
  if (k == 0) throw std::invalid_argument("doubling_sigma: empty set");
  return Rational(sumset(A, A).size(), k);
}

SigmaClass classify_sigma(const Rational& sigma, double k, double delta) {
  if (!(k > 0)) throw std::invalid_argument("classify_sigma: k must be positive");
  if (!(delta > 0)) throw std::invalid_argument("classify_sigma: delta must be positive");
  double quarter = std::sqrt(std::sqrt(k));
  if (sigma.cmp(quarter) < 0) return SigmaClass::X1;
  if (sigma.cmp(delta * k / 10.0) < 0) return SigmaClass::X2;
  return SigmaClass::X3;
}

DoublingClass classify_doubling(const ZnSet& A, double k, double delta) {
  Rational sigma = doubling_sigma(A);
  return DoublingClass{classify_sigma(sigma, k, delta), sigma, k};
}

const char* to_string(SigmaClass c) {
  switch (c) {
    case SigmaClass::X1: return "X1";
    case SigmaClass::X2: return "X2";
    default: return "X3";
  }
}

}  // namespace cayleyfp
