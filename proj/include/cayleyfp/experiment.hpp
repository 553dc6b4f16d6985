#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cayleyfp {

struct ExperimentConfig {
  long long n = 1009;
  double p = 0.5;
  int trials = 10;
  std::uint64_t master_seed = 0;
  std::uint64_t node_budget = 0;  // solver node cap per trial; 0 = exact
  long long time_budget_ms = 0;   // alternative budget, converted to nodes
  std::string out;                // CSV destination; empty = caller's choice
  std::string mode = "alpha";     // alpha | dimension | fingerprint | bounds
  int threads = 0;                // OpenMP worker count; 0 = library default
  std::string timing = "wall";    // wall | none (none zeroes the micros column)
  std::vector<int> fixed_set;     // replay a fixed S instead of sampling
  int sample_size = 12;           // |A| for dimension / fingerprint trials
  double a_slack = 0.2;           // pipeline parameter a (fingerprint mode)
  double delta = 0.1;             // bounds mode
  double alpha_slack = 0.05;      // bounds mode
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  int set_size = 0;
  int alpha = 0;  // primary integer outcome (alpha / dim / |F|)
  std::vector<int> witness;
  std::uint64_t nodes = 0;
  long long micros = 0;
  long long expected_alpha = 0;
  double ratio = 0.0;
  bool budget_flagged = false;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  std::string csv;           // full CSV including "# schema=1" and header
  std::string summary_json;  // pretty-printed run summary
};

// Runs cfg.trials seeded trials (OpenMP-parallel, output byte-identical for
// any thread count), assembles the CSV in trial order, and summarizes.
// Refuses composite n for the set-sampling modes, naming a compositeness
// witness in the message.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Flat key=value lines; '#' comments and blank lines ignored.
std::vector<std::pair<std::string, std::string>> read_config_pairs(const std::string& path);

// Applies one key=value to cfg; throws usage_error for unknown keys or
// unparsable values.
void apply_config_kv(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// "0,5,12" -> {0,5,12}; empty string -> {}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace cayleyfp
