// Command-line front end. Exit codes: 0 success, 1 domain error (refused
// computation or invalid parameter), 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cayleyfp/bounds.hpp"
#include "cayleyfp/cayley.hpp"
#include "cayleyfp/errors.hpp"
#include "cayleyfp/experiment.hpp"
#include "cayleyfp/fingerprint.hpp"
#include "cayleyfp/freiman.hpp"
#include "cayleyfp/gap.hpp"
#include "cayleyfp/znset.hpp"

namespace {

using namespace cayleyfp;

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void print_sum_single(const SumBound& b, bool table) {
  std::cout << "log_sum=" << g15(b.log_sum) << "\n";
  std::cout << "empty_range=" << (b.empty_range ? 1 : 0) << "\n";
  if (table)
    for (const auto& row : b.table)
      std::cout << "index=" << g15(row.index) << " log_term=" << g15(row.log_term) << "\n";
  for (const auto& note : b.notes) std::cout << "# " << note << "\n";
}

int run_app(CLI::App& app, int argc, char** argv);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive-combinatorics toolkit for Z_n: sumsets, Cayley sum "
               "graph independence, Freiman dimension, fingerprints, "
               "progressions, first-moment bounds"};
  app.require_subcommand(1);
  try {
    return run_app(app, argc, argv);
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const refusal_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

int run_app(CLI::App& app, int argc, char** argv) {
  // --- sample ---------------------------------------------------------
  int sa_n = 0;
  double sa_p = 0.5;
  std::uint64_t sa_seed = 0;
  auto* cmd_sample = app.add_subcommand("sample", "draw a p-random subset of Z_n");
  cmd_sample->add_option("--n", sa_n, "modulus")->required();
  cmd_sample->add_option("--p", sa_p, "inclusion probability")->required();
  cmd_sample->add_option("--seed", sa_seed, "stream seed");

  // --- alpha ----------------------------------------------------------
  int al_n = 0;
  std::string al_set;
  double al_p = 0.5;
  std::uint64_t al_seed = 0, al_nodes = 0;
  long long al_ms = 0;
  bool al_brute = false;
  auto* cmd_alpha =
      app.add_subcommand("alpha", "independence number of the Cayley sum graph of S");
  cmd_alpha->add_option("--n", al_n, "modulus")->required();
  auto* al_set_opt = cmd_alpha->add_option("--set", al_set, "connection set, comma-separated");
  auto* al_p_opt = cmd_alpha->add_option("--p", al_p, "sample S instead of --set");
  cmd_alpha->add_option("--seed", al_seed, "sampling seed");
  cmd_alpha->add_option("--budget-nodes", al_nodes, "search node cap");
  cmd_alpha->add_option("--budget-ms", al_ms,
                        "time budget, converted to a deterministic node cap");
  cmd_alpha->add_flag("--brute", al_brute, "bitmask oracle (n <= 32)");

  // --- independent ----------------------------------------------------
  int in_n = 0;
  std::string in_set, in_cand;
  auto* cmd_indep = app.add_subcommand("independent", "test a vertex set for independence");
  cmd_indep->add_option("--n", in_n, "modulus")->required();
  cmd_indep->add_option("--set", in_set, "connection set")->required();
  cmd_indep->add_option("--candidate", in_cand, "vertex set")->required();

  // --- dimension ------------------------------------------------------
  int di_n = 0, di_box = 4;
  std::string di_set;
  bool di_oracle = false, di_obs2 = false;
  double di_eps = 0.0, di_beta = 0.0;
  auto* cmd_dim = app.add_subcommand("dimension", "Freiman dimension of a set");
  cmd_dim->add_option("--n", di_n, "modulus")->required();
  cmd_dim->add_option("--set", di_set, "the set A")->required();
  cmd_dim->add_flag("--oracle", di_oracle, "exhaustive embedding search (|A| <= 6)");
  cmd_dim->add_option("--box", di_box, "oracle coordinate box");
  cmd_dim->add_flag("--obs2", di_obs2, "also check dim < 2 sigma");
  auto* di_eps_opt = cmd_dim->add_option("--robust-eps", di_eps, "robustness epsilon");
  auto* di_beta_opt = cmd_dim->add_option("--robust-beta", di_beta, "robustness beta");

  // --- fingerprint ----------------------------------------------------
  int fp_n = 0, fp_c = 1;
  std::string fp_set;
  double fp_a = 0.2, fp_xi = 1.0, fp_cprime = 0.0, fp_eps = 0.0;
  int fp_cap = 0;
  auto* cmd_fp =
      app.add_subcommand("fingerprint", "run the fingerprint pipeline, print JSON");
  cmd_fp->add_option("--n", fp_n, "modulus")->required();
  cmd_fp->add_option("--set", fp_set, "the set A")->required();
  cmd_fp->add_option("--a", fp_a, "slack parameter a")->required();
  cmd_fp->add_option("--C", fp_c, "phase-one budget coefficient");
  cmd_fp->add_option("--xi", fp_xi, "small-doubling hypothesis coefficient");
  auto* fp_cap_opt = cmd_fp->add_option("--cap", fp_cap, "phase-two absolute cap");
  auto* fp_cp_opt = cmd_fp->add_option("--cprime", fp_cprime, "padding coefficient");
  auto* fp_eps_opt = cmd_fp->add_option("--eps", fp_eps, "robustness epsilon override");

  // --- gap --------------------------------------------------------------
  std::string ga_spec, ga_contains;
  bool ga_elements = false, ga_size = false, ga_normalize = false;
  long long ga_count_n = 0;
  int ga_count_d = 1;
  double ga_count_budget = 0.0;
  auto* cmd_gap = app.add_subcommand("gap", "generalized progression utilities");
  auto* ga_spec_opt = cmd_gap->add_option("--spec", ga_spec, "progression 'n;v0;v1,..;N1,..'");
  cmd_gap->add_flag("--elements", ga_elements, "enumerate covered residues");
  cmd_gap->add_flag("--size", ga_size, "formal size");
  cmd_gap->add_flag("--normalize", ga_normalize, "round radii up to powers of two");
  auto* ga_cont_opt = cmd_gap->add_option("--contains", ga_contains, "residues to test");
  auto* ga_cn_opt = cmd_gap->add_option("--count-n", ga_count_n, "count proxy: modulus");
  cmd_gap->add_option("--count-d", ga_count_d, "count proxy: dimension");
  cmd_gap->add_option("--count-budget", ga_count_budget, "count proxy: log size budget");

  // --- bounds -----------------------------------------------------------
  BoundParams bq;
  double bo_kcoeff = 0.0;
  std::string bo_what = "all";
  bool bo_table = false;
  auto* cmd_bounds = app.add_subcommand("bounds", "union-bound sums in log space");
  cmd_bounds->add_option("--n", bq.n, "graph order")->required();
  cmd_bounds->add_option("--p", bq.p, "edge probability")->required();
  cmd_bounds->add_option("--delta", bq.delta, "delta");
  cmd_bounds->add_option("--alpha", bq.alpha_slack, "alpha slack");
  cmd_bounds->add_option("--eps", bq.eps_exponent, "epsilon exponent");
  cmd_bounds->add_option("--cf", bq.c_f, "fingerprint coefficient");
  auto* bo_k_opt = cmd_bounds->add_option("--kcoeff", bo_kcoeff, "override the 2+4delta factor");
  cmd_bounds->add_option("--what", bo_what, "k | x1 | x2 | x3 | expected | all");
  cmd_bounds->add_flag("--table", bo_table, "print per-term rows");

  // --- experiment -------------------------------------------------------
  ExperimentConfig ex;
  std::string ex_config, ex_fixed;
  auto* cmd_exp = app.add_subcommand("experiment", "seeded trial driver, CSV + summary");
  cmd_exp->add_option("--config", ex_config, "key=value config file")
      ->check(CLI::ExistingFile);
  auto* ex_n = cmd_exp->add_option("--n", ex.n, "modulus (prime)");
  auto* ex_p = cmd_exp->add_option("--p", ex.p, "density");
  auto* ex_t = cmd_exp->add_option("--trials", ex.trials, "trial count");
  auto* ex_s = cmd_exp->add_option("--seed", ex.master_seed, "master seed");
  auto* ex_th = cmd_exp->add_option("--threads", ex.threads, "worker threads");
  auto* ex_out = cmd_exp->add_option("--out", ex.out, "CSV output path");
  auto* ex_mode = cmd_exp->add_option("--mode", ex.mode, "alpha | dimension | fingerprint | bounds");
  auto* ex_bn = cmd_exp->add_option("--budget-nodes", ex.node_budget, "solver node cap");
  auto* ex_bm = cmd_exp->add_option("--budget-ms", ex.time_budget_ms, "per-trial ms budget");
  auto* ex_tm = cmd_exp->add_option("--timing", ex.timing, "wall | none");
  auto* ex_fs = cmd_exp->add_option("--fixed-set", ex_fixed, "replay this S every trial");
  auto* ex_ss = cmd_exp->add_option("--sample-size", ex.sample_size, "|A| per trial");
  auto* ex_a = cmd_exp->add_option("--a", ex.a_slack, "pipeline slack a");
  auto* ex_d = cmd_exp->add_option("--delta", ex.delta, "bounds delta");
  auto* ex_as = cmd_exp->add_option("--alpha-slack", ex.alpha_slack, "bounds alpha");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  if (app.got_subcommand(cmd_sample)) {
    ZnSet S = sample_p_random(sa_n, sa_p, sa_seed);
    std::cout << "size=" << S.size() << "\n";
    std::cout << "elements=" << join_ints(S.elements()) << "\n";
    return 0;
  }

  if (app.got_subcommand(cmd_alpha)) {
    ZnSet S(1);
    if (al_set_opt->count() > 0)
      S = ZnSet(al_n, parse_int_list(al_set));
    else if (al_p_opt->count() > 0)
      S = sample_p_random(al_n, al_p, al_seed);
    else
      throw usage_error("alpha: need --set or --p");
    if (al_brute) {
      std::cout << "alpha=" << brute_force_alpha(S) << "\n";
      return 0;
    }
    MisResult r;
    if (al_nodes > 0)
      r = independence_number_nodes(S, al_nodes);
    else if (al_ms > 0)
      r = independence_number(S, std::chrono::milliseconds(al_ms));
    else
      r = independence_number(S);
    std::cout << "alpha=" << r.alpha << "\n";
    std::cout << "witness=" << join_ints(r.witness.elements()) << "\n";
    std::cout << "nodes=" << r.node_count << "\n";
    std::cout << "lower_bound_only=" << (r.lower_bound_only ? 1 : 0) << "\n";
    return 0;
  }

  if (app.got_subcommand(cmd_indep)) {
    ZnSet S(in_n, parse_int_list(in_set));
    ZnSet A(in_n, parse_int_list(in_cand));
    std::cout << "independent=" << (is_independent(A, S) ? "true" : "false") << "\n";
    return 0;
  }

  if (app.got_subcommand(cmd_dim)) {
    ZnSet A(di_n, parse_int_list(di_set));
    if (di_oracle)
      std::cout << "dim=" << freiman_dimension_oracle(A, di_box) << "\n";
    else
      std::cout << "dim=" << freiman_dimension(A) << "\n";
    if (di_obs2) {
      Observation2Result obs = check_observation2(A);
      std::cout << "sigma=" << obs.sigma.str() << "\n";
      std::cout << "k_bound=" << obs.k_bound.str() << "\n";
      std::cout << "obs2_ok=" << (obs.ok ? "true" : "false") << "\n";
    }
    if (di_eps_opt->count() > 0 || di_beta_opt->count() > 0) {
      if (di_eps_opt->count() == 0 || di_beta_opt->count() == 0)
        throw usage_error("dimension: --robust-eps and --robust-beta go together");
      bool r = is_freiman_robust(A, {di_eps, di_beta});
      std::cout << "robust=" << (r ? "true" : "false") << "\n";
    }
    return 0;
  }

  if (app.got_subcommand(cmd_fp)) {
    ZnSet A(fp_n, parse_int_list(fp_set));
    PipelineParams params;
    params.C = fp_c;
    params.xi = fp_xi;
    if (fp_cap_opt->count() > 0) params.abs_cap = fp_cap;
    if (fp_cp_opt->count() > 0) params.Cprime = fp_cprime;
    if (fp_eps_opt->count() > 0) params.eps_override = fp_eps;
    std::cout << to_json(fingerprint_pipeline(A, fp_a, params)) << "\n";
    return 0;
  }

  if (app.got_subcommand(cmd_gap)) {
    if (ga_cn_opt->count() > 0) {
      std::cout << "log_count=" << g15(log_count_gaps(ga_count_n, ga_count_d, ga_count_budget))
                << "\n";
      return 0;
    }
    if (ga_spec_opt->count() == 0)
      throw usage_error("gap: need --spec (or --count-n for the count proxy)");
    Gap P = gap_parse(ga_spec);
    bool any = false;
    if (ga_size || (!ga_elements && !ga_normalize && ga_cont_opt->count() == 0)) {
      std::cout << "size=" << gap_size(P).str() << "\n";
      any = true;
    }
    if (ga_elements) {
      ZnSet E = gap_elements(P);
      std::cout << "count=" << E.size() << "\n";
      std::cout << "elements=" << join_ints(E.elements()) << "\n";
      any = true;
    }
    if (ga_normalize) {
      std::cout << "normalized=" << gap_to_string(normalize_pow2(P)) << "\n";
      any = true;
    }
    if (ga_cont_opt->count() > 0) {
      ZnSet A(P.n, parse_int_list(ga_contains));
      std::cout << "contains=" << (gap_contains(P, A) ? "true" : "false") << "\n";
      any = true;
    }
    (void)any;
    return 0;
  }

  if (app.got_subcommand(cmd_bounds)) {
    if (bo_k_opt->count() > 0) bq.k_coefficient = bo_kcoeff;
    if (bo_what == "k") {
      std::cout << "k=" << g15(compute_k(bq)) << "\n";
    } else if (bo_what == "expected") {
      std::cout << "expected_alpha=" << expected_alpha_gnp(bq.n, bq.p) << "\n";
    } else if (bo_what == "x1") {
      print_sum_single(x1_log_bound(bq), bo_table);
    } else if (bo_what == "x2") {
      print_sum_single(x2_log_bound(bq), bo_table);
    } else if (bo_what == "x3") {
      print_sum_single(x3_log_bound(bq), bo_table);
    } else if (bo_what == "all") {
      std::cout << "k=" << g15(compute_k(bq)) << "\n";
      SumBound b1 = x1_log_bound(bq), b2 = x2_log_bound(bq), b3 = x3_log_bound(bq);
      std::cout << "x1_log_sum=" << g15(b1.log_sum) << "\n";
      std::cout << "x1_empty_range=" << (b1.empty_range ? 1 : 0) << "\n";
      std::cout << "x2_log_sum=" << g15(b2.log_sum) << "\n";
      std::cout << "x2_empty_range=" << (b2.empty_range ? 1 : 0) << "\n";
      std::cout << "x3_log_sum=" << g15(b3.log_sum) << "\n";
      std::cout << "x3_empty_range=" << (b3.empty_range ? 1 : 0) << "\n";
      std::cout << "expected_alpha=" << expected_alpha_gnp(bq.n, bq.p) << "\n";
    } else {
      throw usage_error("bounds: unknown --what '" + bo_what + "'");
    }
    return 0;
  }

  // experiment
  if (const char* env = std::getenv("CAYLEYFP_SEED");
      env && ex_s->count() == 0) {
    // env seeds the default; config and flags still take precedence
    try {
      ex.master_seed = std::stoull(env);
    } catch (const std::exception&) {
      throw usage_error("CAYLEYFP_SEED is not an integer");
    }
  }
  if (!ex_config.empty()) {
    ExperimentConfig file_cfg = ex;
    for (const auto& [k, v] : read_config_pairs(ex_config)) apply_config_kv(file_cfg, k, v);
    // flags win over config: re-apply any explicitly set flag values
    if (ex_n->count() == 0) ex.n = file_cfg.n;
    if (ex_p->count() == 0) ex.p = file_cfg.p;
    if (ex_t->count() == 0) ex.trials = file_cfg.trials;
    if (ex_s->count() == 0) ex.master_seed = file_cfg.master_seed;
    if (ex_th->count() == 0) ex.threads = file_cfg.threads;
    if (ex_out->count() == 0) ex.out = file_cfg.out;
    if (ex_mode->count() == 0) ex.mode = file_cfg.mode;
    if (ex_bn->count() == 0) ex.node_budget = file_cfg.node_budget;
    if (ex_bm->count() == 0) ex.time_budget_ms = file_cfg.time_budget_ms;
    if (ex_tm->count() == 0) ex.timing = file_cfg.timing;
    if (ex_fs->count() == 0) ex.fixed_set = file_cfg.fixed_set;
    if (ex_ss->count() == 0) ex.sample_size = file_cfg.sample_size;
    if (ex_a->count() == 0) ex.a_slack = file_cfg.a_slack;
    if (ex_d->count() == 0) ex.delta = file_cfg.delta;
    if (ex_as->count() == 0) ex.alpha_slack = file_cfg.alpha_slack;
  }
  if (ex_fs->count() > 0) ex.fixed_set = parse_int_list(ex_fixed);

  ExperimentResult res = run_experiment(ex);
  if (ex.out.empty()) {
    std::cout << res.csv;
    std::cerr << res.summary_json << "\n";
  } else {
    std::cout << res.summary_json << "\n";
  }
  return 0;
}

}  // namespace
