// Drives the mqmc binary as a subprocess. The harness passes its path
// in MEDIANQMC_CLI and the direction-number file in
// MEDIANQMC_SOBOL_TABLE.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

std::string cli_path() {
  const char* env = std::getenv("MEDIANQMC_CLI");
  REQUIRE_MESSAGE(env != nullptr, "MEDIANQMC_CLI must point at the mqmc binary");
  return env;
}

std::string quoted(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  out += "'";
  return out;
}

RunResult run_cli(const std::vector<std::string>& args, const std::string& env = "") {
  std::string cmd = env.empty() ? "" : env + " ";
  cmd += quoted(cli_path());
  for (const auto& a : args) cmd += " " + quoted(a);
  cmd += " 2>&1";

  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::filesystem::path scratch(const std::string& stem) {
  return std::filesystem::temp_directory_path() / (stem + ".csv");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

double value_after_equals(const std::string& line) {
  const auto pos = line.find('=');
  REQUIRE(pos != std::string::npos);
  return std::strtod(line.c_str() + pos + 1, nullptr);
}

std::vector<std::string> sobol_args() {
  if (const char* env = std::getenv("MEDIANQMC_SOBOL_TABLE")) {
    return {"--sobol-table", env};
  }
  return {};
}

void append(std::vector<std::string>& args, const std::vector<std::string>& extra) {
  args.insert(args.end(), extra.begin(), extra.end());
}

}  // namespace

TEST_CASE("wce subcommand prints the closed-form value") {
  const auto res = run_cli({"wce", "--rule", "2;1", "--alpha", "1", "--weights", "one"});
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(res.output);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].rfind("wce=", 0) == 0);
  const double v = value_after_equals(lines[0]);
  CHECK(v == doctest::Approx(std::sqrt(M_PI * M_PI / 12.0)).epsilon(1e-15));
}

TEST_CASE("cbc subcommand prints the constructed rule") {
  const auto one = run_cli({"cbc", "--n", "8", "--s", "1", "--alpha", "2", "--weights", "one"});
  CHECK(one.exit_code == 0);
  auto lines = lines_of(one.output);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "rule=8;1");
  CHECK(lines[1].rfind("wce=", 0) == 0);

  const auto two = run_cli({"cbc", "--n", "8", "--s", "2", "--alpha", "2", "--weights", "one"});
  CHECK(two.exit_code == 0);
  lines = lines_of(two.output);
  CHECK(lines[0] == "rule=8;1,3");
}

TEST_CASE("bound subcommand is monotone in eta for both kinds") {
  const auto k50 = run_cli({"bound", "korobov", "--n", "1021", "--s", "5",
                            "--alpha", "2", "--eta", "0.5"});
  const auto k25 = run_cli({"bound", "korobov", "--n", "1021", "--s", "5",
                            "--alpha", "2", "--eta", "0.25"});
  CHECK(k50.exit_code == 0);
  CHECK(k25.exit_code == 0);
  const double b50 = value_after_equals(lines_of(k50.output)[0]);
  const double b25 = value_after_equals(lines_of(k25.output)[0]);
  CHECK(b25 > b50);
  CHECK(b50 > 0.0);

  const auto s50 = run_cli({"bound", "sobolev", "--m", "10", "--s", "3",
                            "--alpha", "2", "--eta", "0.5"});
  const auto s25 = run_cli({"bound", "sobolev", "--m", "10", "--s", "3",
                            "--alpha", "2", "--eta", "0.25"});
  CHECK(s50.exit_code == 0);
  CHECK(value_after_equals(lines_of(s25.output)[0]) >
        value_after_equals(lines_of(s50.output)[0]));
}

TEST_CASE("prob subcommand: schema line, header, constant q=0.5 column") {
  const auto out = scratch("mqmc_cli_prob");
  const auto res = run_cli({"prob", "--r", "1,3,5", "--q", "0.5,0.75",
                            "--out", out.string()});
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 2 + 6);
  CHECK(lines[0] == "# median-qmc v1");
  CHECK(lines[1] == "r,q,p_plus,log10_p_plus");
  for (int i = 0; i < 3; ++i) {
    const auto& row = lines[2 + 2 * i];
    const auto comma = row.find(',');
    const double p = std::strtod(row.c_str() + row.find(',', comma + 1) + 1, nullptr);
    CHECK(p == doctest::Approx(0.5).epsilon(1e-13));
  }
  std::filesystem::remove(out);
}

TEST_CASE("same seed gives byte-identical files, different seed differs") {
  const auto o1 = scratch("mqmc_cli_h1");
  const auto o2 = scratch("mqmc_cli_h2");
  const auto o3 = scratch("mqmc_cli_h3");
  const std::vector<std::string> base{"hist-wce", "--n", "17", "--s", "4",
                                      "--samples", "16", "--r", "3"};
  auto a1 = base;
  append(a1, {"--seed", "7", "--out", o1.string()});
  auto a2 = base;
  append(a2, {"--seed", "7", "--out", o2.string()});
  auto a3 = base;
  append(a3, {"--seed", "8", "--out", o3.string()});
  CHECK(run_cli(a1).exit_code == 0);
  CHECK(run_cli(a2).exit_code == 0);
  CHECK(run_cli(a3).exit_code == 0);
  CHECK(slurp(o1) == slurp(o2));
  CHECK(slurp(o1) != slurp(o3));
  CHECK_FALSE(std::filesystem::exists(o1.string() + ".tmp"));
  std::filesystem::remove(o1);
  std::filesystem::remove(o2);
  std::filesystem::remove(o3);
}

TEST_CASE("outputs are byte-identical across thread counts 1 and 8") {
  const auto o1 = scratch("mqmc_cli_t1");
  const auto o8 = scratch("mqmc_cli_t8");
  std::vector<std::string> args{"converge-hopl", "--preset", "np2",
                                "--m-range", "3:5", "--r", "3", "--seed", "9",
                                "--interlace", "2"};
  append(args, sobol_args());
  auto a1 = args;
  append(a1, {"--out", o1.string()});
  auto a8 = args;
  append(a8, {"--out", o8.string()});
  CHECK(run_cli(a1, "MEDIANQMC_THREADS=1").exit_code == 0);
  CHECK(run_cli(a8, "MEDIANQMC_THREADS=8").exit_code == 0);
  CHECK(slurp(o1) == slurp(o8));

  const auto lines = lines_of(slurp(o1));
  CHECK(lines[1] == "row,m,n_points,err_hopl_single,err_hopl_rep5,err_sobol_o2");
  std::filesystem::remove(o1);
  std::filesystem::remove(o8);
}

TEST_CASE("converge-lattice subcommand writes the documented schema") {
  const auto out = scratch("mqmc_cli_cl");
  std::vector<std::string> args{"converge-lattice", "--preset", "per-b2-dec",
                                "--s", "3", "--n", "17,31", "--r", "3",
                                "--seed", "5"};
  append(args, sobol_args());
  append(args, {"--out", out.string()});
  const auto res = run_cli(args);
  CHECK(res.exit_code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 2 + 2 + 1);
  CHECK(lines[0] == "# median-qmc v1");
  CHECK(lines[1] == "row,n,err_median_single,err_median_rep5,err_cbc,n_sobol,err_sobol");
  CHECK(lines[4].rfind("slope,", 0) == 0);

  // Baselines drop out on request; the columns stay.
  auto off = args;
  off.insert(off.begin() + 1, "--no-cbc");
  off.insert(off.begin() + 2, "--no-sobol");
  const auto res2 = run_cli(off);
  CHECK(res2.exit_code == 0);
  const auto lines2 = lines_of(slurp(out));
  CHECK(lines2[2].find("nan") != std::string::npos);
  std::filesystem::remove(out);
}

TEST_CASE("errors: nonzero exit and a one-line diagnostic") {
  const auto missing_seed = run_cli({"hist-wce", "--out", "/tmp/x.csv"});
  CHECK(missing_seed.exit_code != 0);
  CHECK_FALSE(missing_seed.output.empty());

  const auto unknown_sub = run_cli({"no-such-subcommand"});
  CHECK(unknown_sub.exit_code != 0);

  const auto bad_kind = run_cli({"bound", "nonsense", "--s", "2"});
  CHECK(bad_kind.exit_code != 0);
  CHECK(bad_kind.output.find("error:") != std::string::npos);
  CHECK(lines_of(bad_kind.output).size() == 1);

  const auto bad_preset = run_cli({"converge-lattice", "--preset", "no-such-preset",
                                   "--seed", "1", "--out", "/tmp/x.csv"});
  CHECK(bad_preset.exit_code != 0);

  const auto bad_rule = run_cli({"wce", "--rule", "garbage"});
  CHECK(bad_rule.exit_code != 0);
  CHECK(bad_rule.output.find("error:") != std::string::npos);

  const auto help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("hist-wce") != std::string::npos);
}
