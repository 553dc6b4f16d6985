#include "cayleyfp/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cayleyfp/bounds.hpp"
#include "cayleyfp/cayley.hpp"
#include "cayleyfp/errors.hpp"
#include "cayleyfp/fingerprint.hpp"
#include "cayleyfp/freiman.hpp"
#include "cayleyfp/primality.hpp"
#include "cayleyfp/rng.hpp"
#include "cayleyfp/znset.hpp"

namespace cayleyfp {

namespace {

using json = nlohmann::ordered_json;

enum class Mode { kAlpha, kDimension, kFingerprint, kBounds };

Mode parse_mode(const std::string& s) {
  if (s == "alpha") return Mode::kAlpha;
  if (s == "dimension") return Mode::kDimension;
  if (s == "fingerprint") return Mode::kFingerprint;
  if (s == "bounds") return Mode::kBounds;
  throw usage_error("experiment: unknown mode '" + s + "'");
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// Random m-subset of Z_n by rejection; deterministic in (seed).
ZnSet sample_subset(int n, int m, std::uint64_t seed) {
  rng::Stream st(seed);
  ZnSet A(n);
  while (A.size() < m) A.add(static_cast<int>(st.below(static_cast<std::uint64_t>(n))));
  return A;
}

const char* csv_header(Mode mode) {
  switch (mode) {
    case Mode::kAlpha: return "trial,seed,set_size,alpha,nodes,micros,ratio";
    case Mode::kDimension: return "trial,seed,set_size,dim,sigma,obs2_ok";
    case Mode::kFingerprint:
      return "trial,seed,set_size,x_size,d,f_size,achieved,target,ratio";
    case Mode::kBounds: return "what,value,flag";
  }
  return "";
}

void validate_config(const ExperimentConfig& cfg, Mode mode) {
  if (cfg.n < 2) throw std::invalid_argument("experiment: n < 2");
  if (cfg.n > std::numeric_limits<int>::max())
    throw std::invalid_argument("experiment: n too large");
  if (cfg.trials < 1) throw std::invalid_argument("experiment: trials < 1");
  if (cfg.threads < 0) throw std::invalid_argument("experiment: negative thread count");
  if (cfg.timing != "wall" && cfg.timing != "none")
    throw usage_error("experiment: timing must be wall or none");
  if (mode == Mode::kAlpha || mode == Mode::kBounds) {
    if (!(cfg.p > 0.0 && cfg.p < 1.0))
      throw std::invalid_argument("experiment: p outside (0,1)");
  }
  if (mode == Mode::kDimension || mode == Mode::kFingerprint) {
    if (cfg.fixed_set.empty()) {
      if (cfg.sample_size < 1 || cfg.sample_size > cfg.n)
        throw std::invalid_argument("experiment: sample_size outside [1, n]");
      if (cfg.sample_size > 64)
        throw refusal_error("experiment: sample_size exceeds the dimension cap 64");
    }
    if (mode == Mode::kFingerprint && !(cfg.a_slack > 0.0 && cfg.a_slack < 1.0))
      throw std::invalid_argument("experiment: a outside (0,1)");
  }
  if (mode != Mode::kBounds) {
    PrimalityResult pr = check_prime(static_cast<std::uint64_t>(cfg.n));
    if (!pr.prime)
      throw refusal_error("experiment: n=" + std::to_string(cfg.n) +
                          " is composite (witness " + std::to_string(pr.witness) + ")");
  }
}

ExperimentResult run_bounds(const ExperimentConfig& cfg) {
  BoundParams q;
  q.n = cfg.n;
  q.p = cfg.p;
  q.delta = cfg.delta;
  q.alpha_slack = cfg.alpha_slack;
  const double k = compute_k(q);
  const SumBound x1 = x1_log_bound(q);
  const SumBound x2 = x2_log_bound(q);
  const SumBound x3 = x3_log_bound(q);
  const long long ea = expected_alpha_gnp(cfg.n, cfg.p);

  std::ostringstream csv;
  csv << "# schema=1\n" << csv_header(Mode::kBounds) << "\n";
  csv << "k," << fmt("%.17g", k) << ",\n";
  csv << "x1," << fmt("%.17g", x1.log_sum) << "," << (x1.empty_range ? "empty" : "") << "\n";
  csv << "x2," << fmt("%.17g", x2.log_sum) << "," << (x2.empty_range ? "empty" : "") << "\n";
  csv << "x3," << fmt("%.17g", x3.log_sum) << "," << (x3.empty_range ? "empty" : "") << "\n";
  csv << "expected_alpha," << ea << ",\n";

  json summary;
  summary["schema"] = 1;
  summary["mode"] = "bounds";
  summary["n"] = cfg.n;
  summary["p"] = cfg.p;
  summary["delta"] = cfg.delta;
  summary["alpha_slack"] = cfg.alpha_slack;
  summary["k"] = k;
  summary["x1_log_sum"] = x1.log_sum == kNegInf ? json("-inf") : json(x1.log_sum);
  summary["x1_empty_range"] = x1.empty_range;
  summary["x2_log_sum"] = x2.log_sum == kNegInf ? json("-inf") : json(x2.log_sum);
  summary["x2_empty_range"] = x2.empty_range;
  summary["x3_log_sum"] = x3.log_sum == kNegInf ? json("-inf") : json(x3.log_sum);
  summary["x3_empty_range"] = x3.empty_range;
  summary["expected_alpha"] = ea;
  return {{}, csv.str(), summary.dump(2)};
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw usage_error("empty entry in integer list");
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(cur, &pos);
    } catch (const std::exception&) {
      throw usage_error("bad integer '" + cur + "' in list");
    }
    if (pos != cur.size()) throw usage_error("bad integer '" + cur + "' in list");
    out.push_back(v);
    cur.clear();
  };
  if (text.empty()) return out;
  for (char c : text) {
    if (c == ',') flush();
    else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
  }
  flush();
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const Mode mode = parse_mode(cfg.mode);
  validate_config(cfg, mode);
  if (mode == Mode::kBounds) {
    ExperimentResult res = run_bounds(cfg);
    if (!cfg.out.empty()) {
      std::ofstream f(cfg.out);
      if (!f) throw std::runtime_error("experiment: cannot write " + cfg.out);
      f << res.csv;
    }
    return res;
  }

  const int n = static_cast<int>(cfg.n);
  const int trials = cfg.trials;
  std::uint64_t budget = cfg.node_budget;
  if (budget == 0 && cfg.time_budget_ms > 0)
    budget = static_cast<std::uint64_t>(cfg.time_budget_ms) * kBudgetNodesPerMs;

  const double ratio_denom = std::log(static_cast<double>(n)) / -std::log1p(-cfg.p);
  long long expected = 0;
  if (mode == Mode::kAlpha) expected = expected_alpha_gnp(cfg.n, cfg.p);

  std::vector<TrialRecord> recs(trials);
  std::vector<std::string> lines(trials);
  // fingerprint-mode extras keyed by trial for the summary
  std::vector<int> stop_kind(trials, -1);
  std::vector<char> obs2_ok(trials, 1);

  std::exception_ptr first_error = nullptr;
  bool abort = false;

  auto one_trial = [&](int i) {
    std::uint64_t seed = cfg.fixed_set.empty()
                             ? rng::split(cfg.master_seed, static_cast<std::uint64_t>(i))
                             : 0;
    TrialRecord rec;
    rec.trial = i;
    rec.seed = seed;
    std::ostringstream line;

    if (mode == Mode::kAlpha) {
      ZnSet S = cfg.fixed_set.empty() ? sample_p_random(n, cfg.p, seed)
                                      : ZnSet(n, cfg.fixed_set);
      MisResult r = budget ? independence_number_nodes(S, budget)
                           : independence_number(S);
      if (!is_independent(r.witness, S))
        throw std::logic_error("experiment: witness failed re-verification");
      rec.set_size = S.size();
      rec.alpha = r.alpha;
      rec.witness = r.witness.elements();
      rec.nodes = r.node_count;
      rec.micros = cfg.timing == "none" ? 0 : r.elapsed.count();
      rec.expected_alpha = expected;
      rec.ratio = r.alpha / ratio_denom;
      rec.budget_flagged = r.lower_bound_only;
      line << rec.trial << ',' << rec.seed << ',' << rec.set_size << ',' << rec.alpha
           << ',' << rec.nodes << ',' << rec.micros << ',' << fmt("%.6f", rec.ratio);
    } else if (mode == Mode::kDimension) {
      ZnSet A = cfg.fixed_set.empty() ? sample_subset(n, cfg.sample_size, seed)
                                      : ZnSet(n, cfg.fixed_set);
      Observation2Result obs = check_observation2(A);
      rec.set_size = A.size();
      rec.alpha = obs.dim;
      rec.ratio = obs.ok ? 1.0 : 0.0;
      obs2_ok[i] = obs.ok ? 1 : 0;
      line << rec.trial << ',' << rec.seed << ',' << rec.set_size << ',' << obs.dim
           << ',' << obs.sigma.str() << ',' << (obs.ok ? 1 : 0);
    } else {
      ZnSet A = cfg.fixed_set.empty() ? sample_subset(n, cfg.sample_size, seed)
                                      : ZnSet(n, cfg.fixed_set);
      FingerprintReport rep = fingerprint_pipeline(A, cfg.a_slack);
      rec.set_size = A.size();
      rec.alpha = rep.F.size();
      rec.ratio = rep.ratio;
      stop_kind[i] = static_cast<int>(rep.phase2.stop);
      line << rec.trial << ',' << rec.seed << ',' << rec.set_size << ','
           << rep.X.size() << ',' << rep.d << ',' << rep.F.size() << ','
           << rep.achieved << ',' << fmt("%.6f", rep.target) << ','
           << fmt("%.6f", rep.ratio);
    }
    recs[i] = std::move(rec);
    lines[i] = line.str();
  };

#ifdef _OPENMP
  int nt = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (int i = 0; i < trials; ++i) {
    bool skip;
#pragma omp critical(cayleyfp_experiment_err)
    skip = abort;
    if (skip) continue;
    try {
      one_trial(i);
    } catch (...) {
#pragma omp critical(cayleyfp_experiment_err)
      {
        if (!first_error) first_error = std::current_exception();
        abort = true;
      }
    }
  }
#else
  for (int i = 0; i < trials && !abort; ++i) {
    try {
      one_trial(i);
    } catch (...) {
      first_error = std::current_exception();
      abort = true;
    }
  }
#endif
  if (first_error) std::rethrow_exception(first_error);

  std::ostringstream csv;
  csv << "# schema=1\n" << csv_header(mode) << "\n";
  for (int i = 0; i < trials; ++i) csv << lines[i] << "\n";

  json summary;
  summary["schema"] = 1;
  summary["mode"] = cfg.mode;
  summary["n"] = cfg.n;
  summary["trials"] = trials;
  summary["master_seed"] = cfg.master_seed;
  summary["timing"] = cfg.timing;
  if (mode == Mode::kAlpha) {
    summary["p"] = cfg.p;
    summary["node_budget"] = budget;
    int lo = recs[0].alpha, hi = recs[0].alpha, flagged = 0;
    double asum = 0.0, rsum = 0.0;
    for (const auto& r : recs) {
      lo = std::min(lo, r.alpha);
      hi = std::max(hi, r.alpha);
      asum += r.alpha;
      rsum += r.ratio;
      flagged += r.budget_flagged ? 1 : 0;
    }
    summary["alpha_mean"] = asum / trials;
    summary["alpha_min"] = lo;
    summary["alpha_max"] = hi;
    summary["ratio_mean"] = rsum / trials;
    summary["expected_alpha"] = expected;
    summary["budget_flagged"] = flagged;
  } else if (mode == Mode::kDimension) {
    int lo = recs[0].alpha, hi = recs[0].alpha;
    double dsum = 0.0;
    bool all_ok = true;
    for (int i = 0; i < trials; ++i) {
      lo = std::min(lo, recs[i].alpha);
      hi = std::max(hi, recs[i].alpha);
      dsum += recs[i].alpha;
      all_ok = all_ok && obs2_ok[i];
    }
    summary["dim_mean"] = dsum / trials;
    summary["dim_min"] = lo;
    summary["dim_max"] = hi;
    summary["obs2_all_ok"] = all_ok;
  } else {
    double rsum = 0.0, fsum = 0.0;
    int met = 0, stalled = 0, capped = 0;
    for (int i = 0; i < trials; ++i) {
      rsum += recs[i].ratio;
      fsum += recs[i].alpha;
      if (stop_kind[i] == 0) ++met;
      else if (stop_kind[i] == 1) ++stalled;
      else if (stop_kind[i] == 2) ++capped;
    }
    summary["a"] = cfg.a_slack;
    summary["sample_size"] = cfg.sample_size;
    summary["ratio_mean"] = rsum / trials;
    summary["f_size_mean"] = fsum / trials;
    summary["stop_target_met"] = met;
    summary["stop_stalled"] = stalled;
    summary["stop_cap_reached"] = capped;
  }

  ExperimentResult res{std::move(recs), csv.str(), summary.dump(2)};
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("experiment: cannot write " + cfg.out);
    f << res.csv;
  }
  return res;
}

std::vector<std::pair<std::string, std::string>> read_config_pairs(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw usage_error("cannot open config file " + path);
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw usage_error("config line " + std::to_string(lineno) + ": expected key=value");
    pairs.push_back({trim(t.substr(0, eq)), trim(t.substr(eq + 1))});
  }
  return pairs;
}

void apply_config_kv(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  auto to_ll = [&](const std::string& v) {
    try {
      size_t pos = 0;
      long long r = std::stoll(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw usage_error("config: bad integer for " + key + ": '" + v + "'");
    }
  };
  auto to_u64 = [&](const std::string& v) {
    try {
      size_t pos = 0;
      std::uint64_t r = std::stoull(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw usage_error("config: bad integer for " + key + ": '" + v + "'");
    }
  };
  auto to_d = [&](const std::string& v) {
    try {
      size_t pos = 0;
      double r = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument(v);
      return r;
    } catch (const std::exception&) {
      throw usage_error("config: bad number for " + key + ": '" + v + "'");
    }
  };

  if (key == "n") cfg.n = to_ll(value);
  else if (key == "p") cfg.p = to_d(value);
  else if (key == "trials") cfg.trials = static_cast<int>(to_ll(value));
  else if (key == "master_seed" || key == "seed") cfg.master_seed = to_u64(value);
  else if (key == "node_budget") cfg.node_budget = to_u64(value);
  else if (key == "time_budget_ms") cfg.time_budget_ms = to_ll(value);
  else if (key == "out") cfg.out = value;
  else if (key == "mode") cfg.mode = value;
  else if (key == "threads") cfg.threads = static_cast<int>(to_ll(value));
  else if (key == "timing") cfg.timing = value;
  else if (key == "fixed_set") cfg.fixed_set = parse_int_list(value);
  else if (key == "sample_size") cfg.sample_size = static_cast<int>(to_ll(value));
  else if (key == "a" || key == "a_slack") cfg.a_slack = to_d(value);
  else if (key == "delta") cfg.delta = to_d(value);
  else if (key == "alpha_slack") cfg.alpha_slack = to_d(value);
  else throw usage_error("config: unknown key '" + key + "'");
}

}  // namespace cayleyfp
