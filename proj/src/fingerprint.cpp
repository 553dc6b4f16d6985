#include "cayleyfp/fingerprint.hpp"

#include <cstdint>
#include <stdexcept>

#include <json.hpp>

#include "cayleyfp/combin.hpp"
#include "cayleyfp/errors.hpp"
#include "cayleyfp/freiman.hpp"

namespace cayleyfp {

namespace {

// |(x + X) \ Y| where x + X is a rotation of X.
int translate_gain(const ZnSet& X, int x, const ZnSet& Y) {
  ZnSet shifted = X.rotated(x);
  shifted.and_not_with(Y);
  return shifted.size();
}

void check_same_modulus(const ZnSet& a, const ZnSet& b, const char* where) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument(std::string(where) + ": modulus mismatch");
}

}  // namespace

TranslateSelection greedy_translate_selection(const ZnSet& Tprime, const ZnSet& X, int t) {
  check_same_modulus(Tprime, X, "greedy_translate_selection");
  if (Tprime.empty() || X.empty())
    throw std::invalid_argument("greedy_translate_selection: empty input set");
  if (t < 1 || t > Tprime.size())
    throw std::invalid_argument("greedy_translate_selection: t outside [1, |T'|]");

  const int n = X.modulus();
  ZnSet T(n);
  ZnSet Y(n);
  GreedyTrace trace;
  std::vector<int> remaining = Tprime.elements();
  for (int s = 0; s < t; ++s) {
    int best_a = -1, best_gain = -1;
    for (int a : remaining) {
      if (T.contains(a)) continue;
      int g = translate_gain(X, a, Y);
      if (g > best_gain) { best_gain = g; best_a = a; }
    }
    T.add(best_a);
    Y.or_with(X.rotated(best_a));
    trace.picks.push_back(best_a);
    trace.gains.push_back(best_gain);
  }
  for (size_t i = 1; i < trace.gains.size(); ++i)
    if (trace.gains[i] > trace.gains[i - 1])
      throw std::logic_error("greedy_translate_selection: gains not nonincreasing");
  // coverage bound: |T + X| |T'| >= t |T' + X|
  long long lhs = static_cast<long long>(Y.size()) * Tprime.size();
  long long rhs = static_cast<long long>(t) * sumset(Tprime, X).size();
  if (lhs < rhs)
    throw std::logic_error("greedy_translate_selection: coverage bound violated");
  return {T, trace};
}

ZnSet find_fingerprint(const ZnSet& X, int budget, FingerprintMode mode) {
  if (X.empty()) throw std::invalid_argument("find_fingerprint: empty set");
  if (budget < 1) throw std::invalid_argument("find_fingerprint: budget < 1");
  const int n = X.modulus();
  const std::vector<int> el = X.elements();
  const int m = static_cast<int>(el.size());
  const int b = std::min(budget, m);

  if (mode == FingerprintMode::kGreedy) {
    ZnSet T(n);
    ZnSet Y(n);
    for (int s = 0; s < b; ++s) {
      int best_x = -1, best_gain = 0;
      for (int x : el) {
        if (T.contains(x)) continue;
        int g = translate_gain(X, x, Y);
        if (g > best_gain) { best_gain = g; best_x = x; }
      }
      if (best_x < 0) break;  // no positive gain left
      T.add(best_x);
      Y.or_with(X.rotated(best_x));
    }
    return T;
  }

  constexpr std::uint64_t kCap = 1000000;
  if (choose_capped(m, b, kCap) > kCap)
    throw refusal_error("find_fingerprint: exhaustive subset count exceeds 10^6");
  ZnSet best(n);
  int best_cov = -1;
  std::vector<int> idx(b);
  for (int i = 0; i < b; ++i) idx[i] = i;
  do {
    ZnSet T(n);
    for (int i : idx) T.add(el[i]);
    int cov = sumset(T, X).size();
    if (cov > best_cov) { best_cov = cov; best = T; }
  } while (next_combination(idx, m));
  return best;
}

RobustSubsetResult robust_subset(const ZnSet& A, double a,
                                 std::optional<double> eps_override) {
  if (A.empty()) throw std::invalid_argument("robust_subset: empty set");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("robust_subset: a outside (0,1)");

  const double K = doubling_sigma(A).to_double();
  const double L = std::log(2.0 * K) / std::log(1.0 / (1.0 - a));
  const double eps = eps_override ? *eps_override : (L > 0.0 ? a / L : a);
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("robust_subset: epsilon outside (0,1)");

  const int n = A.modulus();
  ZnSet X = A;
  int rounds = 0;
  constexpr std::uint64_t kCap = 1000000;
  for (;;) {
    const std::vector<int> el = X.elements();
    const int m = static_cast<int>(el.size());
    const int d = freiman_dimension(X);
    const int smin = robust_min_size(m, eps);

    std::uint64_t total = 0;
    for (int s = smin; s <= m; ++s) {
      total += choose_capped(m, s, kCap);
      if (total > kCap)
        throw refusal_error("robust_subset: subset count exceeds 10^6");
    }

    bool replaced = false;
    for (int s = smin; s <= m && !replaced; ++s) {
      std::vector<int> idx(s);
      for (int i = 0; i < s; ++i) idx[i] = i;
      do {
        ZnSet sub(n);
        for (int i : idx) sub.add(el[i]);
        if (!keeps_dimension(freiman_dimension(sub), d, a)) {
          X = sub;
          ++rounds;
          replaced = true;
          break;
        }
      } while (next_combination(idx, m));
    }
    if (!replaced) break;
  }
  return {X, rounds, eps, L};
}

std::vector<PhaseOneRound> phase_one(const ZnSet& X, double a, int C) {
  if (X.empty()) throw std::invalid_argument("phase_one: empty set");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("phase_one: a outside (0,1)");
  if (C < 1) throw std::invalid_argument("phase_one: C < 1");

  const int d = freiman_dimension(X);
  const int ell = planned_rounds(X.size(), d);
  std::vector<PhaseOneRound> rounds;
  ZnSet Xi = X;
  for (int i = 0; i < ell && !Xi.empty(); ++i) {
    ZnSet T = find_fingerprint(Xi, 2 * C * d, FingerprintMode::kGreedy);
    int achieved = sumset(T, Xi).size();
    double target = (1.0 - 2.0 * a) * (d + 1) * Xi.size() / 2.0;
    rounds.push_back({T, achieved, target});
    Xi.and_not_with(T);
  }
  return rounds;
}

const char* to_string(PhaseTwoStop s) {
  switch (s) {
    case PhaseTwoStop::kTargetMet: return "target_met";
    case PhaseTwoStop::kStalled: return "stalled";
    case PhaseTwoStop::kCapReached: return "cap_reached";
  }
  return "?";
}

PhaseTwoResult phase_two(const ZnSet& F_T, const ZnSet& X, int d, double a, int abs_cap) {
  check_same_modulus(F_T, X, "phase_two");
  if (d < 1) throw std::invalid_argument("phase_two: d < 1");
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("phase_two: a outside (0,1)");
  if (abs_cap < 0) throw std::invalid_argument("phase_two: negative cap");

  const int n = X.modulus();
  ZnSet Y = restricted_sumset(F_T);
  const double target = (1.0 - 5.0 * a) * (d + 1) * X.size() / 2.0;
  ZnSet Fprime(n);
  std::vector<int> gains;
  PhaseTwoStop stop;
  for (;;) {
    if (Y.size() >= target) { stop = PhaseTwoStop::kTargetMet; break; }
    if (Fprime.size() >= abs_cap) { stop = PhaseTwoStop::kCapReached; break; }
    int best_x = -1, best_gain = 0;
    for (int x : X.elements()) {
      int g = translate_gain(F_T, x, Y);
      if (g > best_gain) { best_gain = g; best_x = x; }
    }
    if (best_x < 0) { stop = PhaseTwoStop::kStalled; break; }
    Fprime.add(best_x);
    gains.push_back(best_gain);
    Y.or_with(F_T.rotated(best_x));
  }
  return {Fprime, gains, stop, Y.size(), target};
}

FingerprintReport fingerprint_pipeline(const ZnSet& A, double a,
                                       const PipelineParams& params) {
  if (A.empty()) throw std::invalid_argument("fingerprint_pipeline: empty set");
  if (!(a > 0.0 && a < 1.0))
    throw std::invalid_argument("fingerprint_pipeline: a outside (0,1)");
  if (params.C < 1) throw std::invalid_argument("fingerprint_pipeline: C < 1");
  if (!(params.xi > 0.0)) throw std::invalid_argument("fingerprint_pipeline: xi <= 0");

  const int n = A.modulus();
  const Rational K = doubling_sigma(A);

  RobustSubsetResult rs = robust_subset(A, a, params.eps_override);
  const ZnSet& X = rs.X;
  const int d = freiman_dimension(X);
  const int ell = planned_rounds(X.size(), d);

  std::vector<PhaseOneRound> rounds = phase_one(X, a, params.C);
  ZnSet F_T(n);
  for (const auto& r : rounds) F_T.or_with(r.T);

  const int cap = params.abs_cap
                      ? *params.abs_cap
                      : static_cast<int>(std::ceil(
                            (2.0 / a) * std::sqrt(static_cast<double>(d) * A.size())));
  PhaseTwoResult ph2 = phase_two(F_T, X, d, a, cap);

  ZnSet F = F_T;
  F.or_with(ph2.Fprime);

  const double cprime = params.Cprime ? *params.Cprime : params.C + 2.0 / a;
  const int want = static_cast<int>(
      std::ceil(cprime * std::sqrt(static_cast<double>(d) * A.size())));
  const bool capped = want > X.size();
  const int pad_to = std::min(want, X.size());
  int padding_added = 0;
  for (int x : X.elements()) {
    if (F.size() >= pad_to) break;
    if (!F.contains(x)) { F.add(x); ++padding_added; }
  }

  const int achieved = restricted_sumset(F).size();
  const double target = (1.0 - a) * (d + 1) * A.size() / 2.0;

  bool hyp;
  if (A.size() == 1) {
    hyp = true;  // ln^2 |A| = 0: the bound is vacuous
  } else {
    double lg = std::log(static_cast<double>(A.size()));
    hyp = K.cmp(params.xi * A.size() / (lg * lg)) <= 0;
  }
  const bool eps_regime =
      rs.epsilon > 4.0 * params.C * std::sqrt(K.to_double() / X.size());

  return {A,
          a,
          K,
          rs.L,
          rs.epsilon,
          X,
          rs.rounds,
          d,
          ell,
          std::move(rounds),
          F_T,
          std::move(ph2),
          F,
          padding_added,
          capped,
          achieved,
          target,
          achieved / target,
          hyp,
          eps_regime};
}

std::string to_json(const FingerprintReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["n"] = r.A.modulus();
  j["A"] = r.A.elements();
  j["a"] = r.a;
  j["K"] = r.K.str();
  j["K_value"] = r.K.to_double();
  j["L"] = r.L;
  j["epsilon"] = r.epsilon;
  j["X"] = r.X.elements();
  j["robust_rounds"] = r.robust_rounds;
  j["d"] = r.d;
  j["ell"] = r.ell;
  j["phase_one"] = json::array();
  for (const auto& round : r.rounds) {
    j["phase_one"].push_back({{"T", round.T.elements()},
                              {"achieved", round.achieved},
                              {"target", round.target}});
  }
  j["F_T"] = r.F_T.elements();
  j["phase_two"] = {{"F_prime", r.phase2.Fprime.elements()},
                    {"gains", r.phase2.gains},
                    {"stop", to_string(r.phase2.stop)},
                    {"y_size", r.phase2.y_size},
                    {"target", r.phase2.target}};
  j["F"] = r.F.elements();
  j["padding_added"] = r.padding_added;
  j["padding_capped"] = r.padding_capped;
  j["achieved"] = r.achieved;
  j["target"] = r.target;
  j["ratio"] = r.ratio;
  j["hypothesis_k_small"] = r.hypothesis_k_small;
  j["epsilon_regime"] = r.epsilon_regime;
  return j.dump(2);
}

}  // namespace cayleyfp
