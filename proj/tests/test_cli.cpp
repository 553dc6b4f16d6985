#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// runs through /bin/sh; stderr is dropped unless the caller redirects it
RunResult run(const std::string& args, const std::string& redirect = "2>/dev/null") {
  RunResult r;
  std::string cmd = "'" + g_binary + "' " + args + " " + redirect;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string first_line(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

double value_after(const std::string& s, const std::string& key) {
  size_t pos = s.find(key);
  REQUIRE(pos != std::string::npos);
  return std::stod(s.substr(pos + key.size()));
}

std::string tmp_path(const std::string& stem) {
  return "/tmp/cayleyfp_cli_" + stem + "_" + std::to_string(::getpid());
}

}  // namespace

TEST_CASE("help and usage exit codes") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("alpha --help").exit_code == 0);
  CHECK(run("").exit_code == 2);                        // missing subcommand
  CHECK(run("alpha --set 0").exit_code == 2);           // missing --n
  CHECK(run("alpha --n 5 --set 0 --bogus 1").exit_code == 2);
  CHECK(run("alpha --n 5").exit_code == 2);             // need --set or --p
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("experiment --config /nonexistent.conf").exit_code == 2);
}

TEST_CASE("alpha subcommand") {
  RunResult r = run("alpha --n 5 --set 0");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "alpha=3");
  CHECK(r.out.find("witness=") != std::string::npos);
  CHECK(r.out.find("nodes=") != std::string::npos);
  CHECK(r.out.find("lower_bound_only=0") != std::string::npos);

  RunResult brute = run("alpha --n 5 --set 0 --brute");
  CHECK(brute.exit_code == 0);
  CHECK(first_line(brute.out) == "alpha=3");

  CHECK(run("alpha --n 33 --set 1 --brute").exit_code == 1);
  CHECK(run("alpha --n 5 --set 7").exit_code == 1);  // element out of range

  // a millisecond budget is an alias for a node budget
  std::string base = "alpha --n 211 --p 0.5 --seed 3 ";
  RunResult via_ms = run(base + "--budget-ms 2");
  RunResult via_nodes = run(base + "--budget-nodes 6000");
  CHECK(via_ms.exit_code == 0);
  CHECK(via_ms.out == via_nodes.out);
  CHECK(value_after(via_ms.out, "alpha=") >= 1);
}

TEST_CASE("independent subcommand") {
  RunResult yes = run("independent --n 5 --set 0 --candidate 0,1,2");
  CHECK(yes.exit_code == 0);
  CHECK(first_line(yes.out) == "independent=true");
  RunResult no = run("independent --n 5 --set 0 --candidate 1,2,3");
  CHECK(no.exit_code == 0);
  CHECK(first_line(no.out) == "independent=false");
}

TEST_CASE("sample subcommand is deterministic") {
  RunResult a = run("sample --n 101 --p 0.3 --seed 42");
  RunResult b = run("sample --n 101 --p 0.3 --seed 42");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(first_line(a.out).substr(0, 5) == "size=");
  CHECK(run("sample --n 101 --p 1.5 --seed 1").exit_code == 1);
}

TEST_CASE("dimension subcommand") {
  RunResult r = run("dimension --n 101 --set 0,1,3");
  CHECK(r.exit_code == 0);
  CHECK(first_line(r.out) == "dim=2");

  RunResult obs = run("dimension --n 101 --set 0,1,3 --obs2");
  CHECK(obs.out.find("sigma=2") != std::string::npos);
  CHECK(obs.out.find("k_bound=4") != std::string::npos);
  CHECK(obs.out.find("obs2_ok=true") != std::string::npos);

  RunResult oracle = run("dimension --n 101 --set 0,1,3 --oracle");
  CHECK(first_line(oracle.out) == "dim=2");

  RunResult robust = run("dimension --n 101 --set 0,1,2,3 --robust-eps 0.3 --robust-beta 0.5");
  CHECK(robust.exit_code == 0);
  CHECK(robust.out.find("robust=true") != std::string::npos);
  CHECK(run("dimension --n 101 --set 0,1,2,3 --robust-eps 0.3").exit_code == 2);
  CHECK(run("dimension --n 101 --set 0,1,2,3,4,5,6 --oracle").exit_code == 1);
}

TEST_CASE("fingerprint subcommand prints json") {
  RunResult r = run("fingerprint --n 101 --set 0,1,2,3,4,5,6,7,8,9 --a 0.2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["n"] == 101);
  CHECK(j["d"] == 1);
  CHECK(j["K"] == "19/10");
  CHECK(j["F"].is_array());
  CHECK(run("fingerprint --n 101 --set 0,1 --a 2.0").exit_code == 1);
}

TEST_CASE("gap subcommand") {
  RunResult size = run("gap --spec '100;0;2;3'");
  CHECK(size.exit_code == 0);
  CHECK(first_line(size.out) == "size=7");

  RunResult el = run("gap --spec '100;0;2;3' --elements");
  CHECK(first_line(el.out) == "count=7");
  CHECK(el.out.find("elements=0,2,4,6,94,96,98") != std::string::npos);

  RunResult norm = run("gap --spec '1009;3;5,11;3,5' --normalize");
  CHECK(norm.out.find("normalized=1009;3;5,11;4,8") != std::string::npos);

  RunResult cont = run("gap --spec '100;0;2;3' --contains 0,94");
  CHECK(cont.out.find("contains=true") != std::string::npos);
  RunResult cont2 = run("gap --spec '100;0;2;3' --contains 1");
  CHECK(cont2.out.find("contains=false") != std::string::npos);

  RunResult count = run("gap --count-n 1009 --count-d 1 --count-budget 1.0");
  CHECK(count.exit_code == 0);
  CHECK(value_after(count.out, "log_count=") ==
        doctest::Approx(2.0 * std::log(1009.0)));

  CHECK(run("gap --elements").exit_code == 2);       // no --spec
  CHECK(run("gap --spec 'x;y;z'").exit_code == 1);   // malformed spec
}

TEST_CASE("bounds subcommand") {
  RunResult x3 = run("bounds --n 1009 --p 0.5 --delta 0.1 --what x3");
  CHECK(x3.exit_code == 0);
  CHECK(first_line(x3.out).substr(0, 8) == "log_sum=");
  CHECK(value_after(x3.out, "log_sum=") ==
        doctest::Approx(2.5347173492903545).epsilon(1e-12));
  CHECK(x3.out.find("empty_range=0") != std::string::npos);
  CHECK(x3.out.find("# ") != std::string::npos);  // notes are echoed

  RunResult table = run("bounds --n 1009 --p 0.5 --what x3 --table");
  CHECK(table.out.find("index=1 ") != std::string::npos);
  CHECK(table.out.find("log_term=") != std::string::npos);

  RunResult k = run("bounds --n 1009 --p 0.5 --what k");
  CHECK(value_after(k.out, "k=") == doctest::Approx(23.948905101855253).epsilon(1e-12));

  RunResult all = run("bounds --n 1009 --p 0.5 --what all");
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("x1_log_sum=") != std::string::npos);
  CHECK(all.out.find("x2_empty_range=1") != std::string::npos);
  CHECK(all.out.find("x3_empty_range=0") != std::string::npos);
  CHECK(all.out.find("expected_alpha=15") != std::string::npos);

  CHECK(run("bounds --n 1009 --p 0.5 --what x9").exit_code == 2);
  CHECK(run("bounds --n 1009 --p 1.5 --what k").exit_code == 1);
}

TEST_CASE("experiment subcommand") {
  std::string base = "experiment --n 101 --trials 3 --timing none --seed 5";
  RunResult csv = run(base);
  CHECK(csv.exit_code == 0);
  CHECK(first_line(csv.out) == "# schema=1");
  CHECK(csv.out.find("trial,seed,set_size,alpha,nodes,micros,ratio") != std::string::npos);

  // summary goes to stderr when the CSV uses stdout
  RunResult summary = run(base, "2>&1 1>/dev/null");
  auto j = nlohmann::json::parse(summary.out);
  CHECK(j["mode"] == "alpha");
  CHECK(j["trials"] == 3);

  // CAYLEYFP_SEED seeds the default; an explicit flag wins
  RunResult env_run = run(base);  // --seed 5 present, env ignored
  std::string env_cmd = "CAYLEYFP_SEED=5 '" + g_binary +
                        "' experiment --n 101 --trials 3 --timing none 2>/dev/null";
  RunResult env_default;
  {
    FILE* p = popen(env_cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) env_default.out.append(buf, got);
    env_default.exit_code = WEXITSTATUS(pclose(p));
  }
  CHECK(env_default.exit_code == 0);
  CHECK(env_default.out == env_run.out);

  // flags override config values; config fills the rest
  std::string conf = tmp_path("conf") + ".conf";
  {
    std::ofstream f(conf);
    f << "n = 101\ntrials = 2\ntiming = none\nseed = 5\n";
  }
  RunResult from_config = run("experiment --config " + conf + " --trials 3");
  CHECK(from_config.out == csv.out);
  std::remove(conf.c_str());

  // --out moves the CSV into a file and the summary onto stdout
  std::string out_csv = tmp_path("out") + ".csv";
  RunResult with_out = run(base + " --out " + out_csv);
  CHECK(with_out.exit_code == 0);
  auto j2 = nlohmann::json::parse(with_out.out);
  CHECK(j2["mode"] == "alpha");
  std::ifstream f(out_csv);
  std::string file_csv((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  CHECK(file_csv == csv.out);
  std::remove(out_csv.c_str());

  CHECK(run("experiment --n 9 --trials 1").exit_code == 1);  // composite n
}

int main(int argc, char** argv) {
  std::vector<char*> doctest_args;
  for (int i = 0; i < argc; ++i) {
    if (i > 0 && argv[i][0] != '-' && g_binary.empty()) {
      g_binary = argv[i];
      continue;
    }
    doctest_args.push_back(argv[i]);
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli-binary> [doctest args]\n");
    return 1;
  }
  doctest::Context ctx(static_cast<int>(doctest_args.size()), doctest_args.data());
  return ctx.run();
}
