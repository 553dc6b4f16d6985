// Acceptance runner: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] must point at the command-line binary (criterion 9).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cayleyfp/bounds.hpp"
#include "cayleyfp/cayley.hpp"
#include "cayleyfp/experiment.hpp"
#include "cayleyfp/fingerprint.hpp"
#include "cayleyfp/freiman.hpp"
#include "cayleyfp/rng.hpp"
#include "cayleyfp/znset.hpp"

using namespace cayleyfp;

namespace {

// per-trial search budget for the desk-scale independence runs; the witness
// quality comes from the content-seeded incumbent, the branch-and-bound pass
// then improves or certifies it within this cap
constexpr std::uint64_t kC2NodeBudget = 1000000;

int g_failures = 0;

void report(int idx, bool ok, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ZnSet random_subset(int n, int m, std::uint64_t seed) {
  rng::Stream st(seed);
  ZnSet A(n);
  while (A.size() < m) A.add(static_cast<int>(st.below(n)));
  return A;
}

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  const double ps[3] = {0.2, 0.5, 0.8};
  int mismatches = 0, checked = 0;
  for (int i = 0; i < 500; ++i) {
    int n = 4 + i % 21;
    double p = ps[i % 3];
    ZnSet S = sample_p_random(n, p, rng::split(0xC101, i));
    MisResult r = independence_number(S);
    int want = brute_force_alpha(S);
    if (r.alpha != want) ++mismatches;
    ++checked;
  }
  double el = seconds_since(t0);
  std::ostringstream os;
  os << "solver vs subset-enumeration oracle, " << checked << " instances (n <= 24), "
     << mismatches << " mismatches, " << el << " s";
  report(1, mismatches == 0 && el < 60.0, os.str());
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::ostringstream os;
  os << "alpha(Gamma_p) vs first-moment reference:";
  for (long long n : {1009LL, 2003LL, 5003LL}) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.p = 0.5;
    cfg.trials = 50;
    cfg.master_seed = 0x51ab0000ULL + static_cast<std::uint64_t>(n);
    cfg.node_budget = kC2NodeBudget;
    cfg.timing = "none";
    ExperimentResult res = run_experiment(cfg);

    long long expected = expected_alpha_gnp(n, 0.5);
    double mean = 0.0;
    int flagged = 0, ratio_bad = 0;
    for (const auto& r : res.records) {
      mean += r.alpha;
      flagged += r.budget_flagged ? 1 : 0;
      if (r.ratio < 1.2 || r.ratio > 2.6) ++ratio_bad;
    }
    mean /= res.records.size();
    bool here = std::fabs(mean - expected) <= 3.0 && ratio_bad == 0;
    ok = ok && here;
    os << " n=" << n << " mean=" << mean << " expected=" << expected
       << " ratio_violations=" << ratio_bad << " budget_flagged=" << flagged << ";";
  }
  double el = seconds_since(t0);
  ok = ok && el < 600.0;
  os << " " << el << " s";
  report(2, ok, os.str());
}

void criterion3() {
  int disagreements = 0, checked = 0;
  for (int mask = 1; mask < (1 << 11); ++mask) {
    if (__builtin_popcount(mask) > 5) continue;
    ZnSet A(101);
    for (int b = 0; b < 11; ++b)
      if (mask & (1 << b)) A.add(b);
    if (freiman_dimension(A) != freiman_dimension_oracle(A)) ++disagreements;
    ++checked;
  }
  std::ostringstream os;
  os << "rank formula vs embedding search on " << checked
     << " subsets of {0..10} (size <= 5) in Z_101, " << disagreements << " disagreements";
  report(3, checked == 1023 && disagreements == 0, os.str());
}

void criterion4() {
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    rng::Stream st(rng::split(0x0b52, i));
    int m = 3 + static_cast<int>(st.below(18));
    ZnSet A = random_subset(1009, m, st.next());
    if (!check_observation2(A).ok) ++violations;
  }
  std::ostringstream os;
  os << "dim_f(A) < 2 sigma(A) on 1000 random A in Z_1009 (3 <= |A| <= 20), "
     << violations << " violations";
  report(4, violations == 0, os.str());
}

void criterion5() {
  const int ns[3] = {97, 257, 1009};
  int violations = 0, order_violations = 0;
  for (int i = 0; i < 1000; ++i) {
    rng::Stream st(rng::split(0x1707, i));
    int n = ns[i % 3];
    int tp_size = 1 + static_cast<int>(st.below(8));
    int x_size = 1 + static_cast<int>(st.below(40));
    ZnSet Tp = random_subset(n, tp_size, st.next());
    ZnSet X = random_subset(n, x_size, st.next());
    int t = 1 + static_cast<int>(st.below(Tp.size()));
    TranslateSelection sel = greedy_translate_selection(Tp, X, t);
    long long lhs = static_cast<long long>(sumset(sel.T, X).size()) * Tp.size();
    long long rhs = static_cast<long long>(t) * sumset(Tp, X).size();
    if (lhs < rhs) ++violations;
    for (size_t g = 1; g < sel.trace.gains.size(); ++g)
      if (sel.trace.gains[g] > sel.trace.gains[g - 1]) ++order_violations;
  }
  std::ostringstream os;
  os << "|T+X||T'| >= t|T'+X| on 1000 random greedy selections, " << violations
     << " bound violations, " << order_violations << " gain-order violations";
  report(5, violations == 0 && order_violations == 0, os.str());
}

void criterion6() {
  const double as[5] = {0.1, 0.2, 0.3, 0.4, 0.5};
  int robust_failures = 0, round_failures = 0;
  for (int i = 0; i < 200; ++i) {
    rng::Stream st(rng::split(0x6e04, i));
    int m = 1 + static_cast<int>(st.below(8));
    ZnSet A = random_subset(1009, m, st.next());
    double a = as[i % 5];
    RobustSubsetResult r = robust_subset(A, a);
    if (!is_freiman_robust(r.X, {r.epsilon, a})) ++robust_failures;
    if (r.rounds > static_cast<int>(std::ceil(r.L))) ++round_failures;
  }
  std::ostringstream os;
  os << "robust_subset output re-verified on 200 random A (|A| <= 8), "
     << robust_failures << " robustness failures, " << round_failures
     << " round-bound failures";
  report(6, robust_failures == 0 && round_failures == 0, os.str());
}

void criterion7() {
  int structural_failures = 0;
  double rsum = 0.0, rmin = 1e300, rmax = -1e300;
  for (int i = 0; i < 100; ++i) {
    rng::Stream st(rng::split(0xF177, i));
    int m = 1 + static_cast<int>(st.below(16));
    ZnSet A = random_subset(1009, m, st.next());
    FingerprintReport rep = fingerprint_pipeline(A, 0.2);

    bool ok = true;
    for (int x : rep.X.elements()) ok = ok && rep.A.contains(x);
    for (int x : rep.F.elements()) ok = ok && rep.X.contains(x);
    ZnSet seen(1009);
    for (const auto& round : rep.rounds) {
      ok = ok && round.T.intersect(seen).empty();
      seen.or_with(round.T);
    }
    for (int g : rep.phase2.gains) ok = ok && g > 0;
    if (!ok) ++structural_failures;
    rsum += rep.ratio;
    rmin = std::min(rmin, rep.ratio);
    rmax = std::max(rmax, rep.ratio);
  }
  std::ostringstream os;
  os << "pipeline structure on 100 random A (|A| <= 16), " << structural_failures
     << " failures; achieved/target ratio mean=" << rsum / 100.0 << " min=" << rmin
     << " max=" << rmax << " (reported, not asserted)";
  report(7, structural_failures == 0, os.str());
}

void criterion8() {
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    rng::Stream st(rng::split(0x83b0, i));
    BoundParams q;
    q.n = 500 + static_cast<long long>(st.below(2000000));
    q.p = 0.05 + 0.9 * st.uniform();
    q.delta = 2.0 * st.uniform();
    q.alpha_slack = 0.01 + 0.3 * st.uniform();
    SumBound b = x3_log_bound(q);

    long double k = (2.0L + 4.0L * (long double)q.delta) * logl((long double)q.n) /
                    -log1pl(-(long double)q.p);
    long double c = (2.0L + 2.0L * (long double)q.delta) * (1.0L / k) *
                        logl((long double)q.n) +
                    log1pl(-(long double)q.p);
    long long lo = std::max(1LL, (long long)ceill((long double)q.delta * k / 10.0L));
    long long hi = (long long)ceill(k);
    long double r = expl(c), sum = 0.0L, cur = powl(r, (long double)lo);
    for (long long m = lo; m <= hi; ++m, cur *= r) sum += cur;
    long double want = logl(sum);
    if (fabsl((long double)b.log_sum - want) > 1e-10L * fabsl(want)) ++bad;
  }

  // the log-terms collapse to -2 delta ln(n) m / k when k is the (2+4delta)
  // scale, making the sum a plain geometric series
  BoundParams pinned;
  pinned.n = 1009;
  SumBound b = x3_log_bound(pinned);
  double k = compute_k(pinned);
  double direct = 0.0;
  for (int m = 1; m <= 24; ++m)
    direct += std::exp(-2.0 * pinned.delta * std::log(1009.0) * m / k);
  direct = std::log(direct);
  bool pin_ok = std::fabs(b.log_sum - direct) <= 1e-10 * std::fabs(direct);

  std::ostringstream os;
  os << "x3 log-sum vs geometric closed form, 100 random draws, " << bad
     << " beyond 1e-10 relative; pinned n=1009 case "
     << (pin_ok ? "matches" : "differs");
  report(8, bad == 0 && pin_ok, os.str());
}

void criterion9(const std::string& binary) {
  std::vector<std::string> files;
  bool ran_ok = true;
  int runs = 0;
  for (int threads : {1, 3}) {
    for (int rep = 0; rep < 2; ++rep) {
      std::string path = "/tmp/cayleyfp_acc9_" + std::to_string(threads) + "_" +
                         std::to_string(rep) + ".csv";
      std::string cmd = "'" + binary +
                        "' experiment --n 211 --p 0.5 --trials 24 --seed 99 "
                        "--timing none --budget-nodes 20000 --threads " +
                        std::to_string(threads) + " --out " + path +
                        " >/dev/null 2>&1";
      ran_ok = ran_ok && std::system(cmd.c_str()) == 0;
      files.push_back(path);
      ++runs;
    }
  }
  std::vector<std::string> contents;
  for (const auto& f : files) {
    std::ifstream in(f);
    std::ostringstream os;
    os << in.rdbuf();
    contents.push_back(os.str());
    std::remove(f.c_str());
  }
  bool identical = !contents.empty() && !contents[0].empty();
  for (const auto& c : contents) identical = identical && c == contents[0];
  std::ostringstream os;
  os << runs << " driver runs (threads 1 and 3, twice each) "
     << (identical ? "produced byte-identical CSV" : "produced differing CSV");
  report(9, ran_ok && identical, os.str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cli-binary>\n");
    return 1;
  }
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9(argv[1]);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
