// Experiment driver: every subcommand is seeded explicitly and writes
// CSV through an atomic rename, so identical invocations give
// byte-identical files. MEDIANQMC_THREADS caps the worker pool.

#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "medianqmc/csvio.hpp"
#include "medianqmc/experiments.hpp"
#include "medianqmc/gfpoly.hpp"
#include "medianqmc/korobov.hpp"
#include "medianqmc/lattice.hpp"
#include "medianqmc/parallel.hpp"
#include "medianqmc/polylattice.hpp"
#include "medianqmc/weights.hpp"

#ifndef MEDIANQMC_DEFAULT_SOBOL_TABLE
#define MEDIANQMC_DEFAULT_SOBOL_TABLE "data/new-joe-kuo-6.100"
#endif

namespace {

using namespace mqmc;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t to_u64(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(tok, &pos);
    if (pos != tok.size() || tok.empty()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
  }
}

int to_int(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoi(tok, &pos);
    if (pos != tok.size() || tok.empty()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
  }
}

double to_double(const std::string& tok, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stod(tok, &pos);
    if (pos != tok.size() || tok.empty()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument(std::string(what) + ": bad number '" + tok + "'");
  }
}

// "one", "1/j^K", or an explicit comma-separated gamma list.
ProductWeights parse_weights(const std::string& text, int dims) {
  if (text == "one") return unit_weights(dims);
  if (text.rfind("1/j^", 0) == 0) {
    const int k = to_int(text.substr(4), "--weights");
    if (k < 0) throw std::invalid_argument("--weights: negative exponent");
    return polynomial_decay_weights(dims, k);
  }
  ProductWeights w;
  for (const auto& tok : split(text, ',')) {
    w.gammas.push_back(to_double(tok, "--weights"));
  }
  w.validate(dims);
  return w;
}

// "lo:hi" or a single value.
std::pair<int, int> parse_range(const std::string& text, const char* what) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) {
    const int v = to_int(parts[0], what);
    return {v, v};
  }
  if (parts.size() != 2) {
    throw std::invalid_argument(std::string(what) + ": expected lo:hi");
  }
  return {to_int(parts[0], what), to_int(parts[1], what)};
}

void print_value(const char* name, double v) {
  std::cout << name << "=" << format_csv_double(v) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"median quasi-Monte Carlo experiment driver"};
  app.require_subcommand(1);

  // ---- hist-wce ----------------------------------------------------
  struct {
    std::uint64_t n = 251;
    int s = 50;
    double alpha = 2.0;
    std::string weights = "1/j^3";
    int samples = 10000;
    int r = 11;
    std::uint64_t seed = 0;
    std::string out;
  } hw;
  auto* hist = app.add_subcommand(
      "hist-wce", "Sample log2 worst-case errors of random lattice rules");
  hist->add_option("--n", hw.n, "number of lattice points");
  hist->add_option("--s", hw.s, "dimension");
  hist->add_option("--alpha", hw.alpha, "smoothness");
  hist->add_option("--weights", hw.weights, "one | 1/j^K | gamma csv");
  hist->add_option("--samples", hw.samples, "sample count");
  hist->add_option("--r", hw.r, "rules per median (odd)");
  hist->add_option("--seed", hw.seed, "master seed")->required();
  hist->add_option("--out", hw.out, "output CSV path")->required();
  hist->callback([&] {
    HistWceParams params;
    params.n_points = hw.n;
    params.s = hw.s;
    params.alpha = hw.alpha;
    params.weights = parse_weights(hw.weights, hw.s);
    params.samples = hw.samples;
    params.r = hw.r;
    params.seed = hw.seed;
    write_hist_wce_csv(run_hist_wce(params), hw.out);
  });

  // ---- converge-lattice --------------------------------------------
  struct {
    std::string preset = "per-b2-dec";
    int s = 0;
    std::string n_list;
    int r = 11;
    std::uint64_t seed = 0;
    bool with_cbc = true;
    bool with_sobol = true;
    std::string sobol_table = MEDIANQMC_DEFAULT_SOBOL_TABLE;
    std::string out;
  } cl;
  auto* conv = app.add_subcommand(
      "converge-lattice", "Median lattice rule error versus N, with baselines");
  conv->add_option("--preset", cl.preset, "integrand preset");
  conv->add_option("--s", cl.s, "dimension (0 = preset default)");
  conv->add_option("--n", cl.n_list, "comma list of N (default: primes near 2^7..2^13)");
  conv->add_option("--r", cl.r, "rules per median (odd)");
  conv->add_option("--seed", cl.seed, "master seed")->required();
  conv->add_flag("--with-cbc,!--no-cbc", cl.with_cbc, "include the CBC baseline");
  conv->add_flag("--with-sobol,!--no-sobol", cl.with_sobol, "include the Sobol baseline");
  conv->add_option("--sobol-table", cl.sobol_table, "direction-number file");
  conv->add_option("--out", cl.out, "output CSV path")->required();
  conv->callback([&] {
    ConvergeLatticeParams params;
    params.preset = cl.preset;
    params.s = cl.s;
    if (!cl.n_list.empty()) {
      for (const auto& tok : split(cl.n_list, ',')) {
        params.n_list.push_back(to_u64(tok, "--n"));
      }
    }
    params.r = cl.r;
    params.seed = cl.seed;
    params.with_cbc = cl.with_cbc;
    params.with_sobol = cl.with_sobol;
    params.sobol_table_path = cl.sobol_table;
    write_converge_lattice_csv(run_converge_lattice(params), cl.out);
  });

  // ---- converge-hopl -----------------------------------------------
  struct {
    std::string preset = "np1";
    int s = 0;
    std::string m_range = "6:14";
    int r = 11;
    std::uint64_t seed = 0;
    std::string interlace = "2,3";
    std::string sobol_table = MEDIANQMC_DEFAULT_SOBOL_TABLE;
    std::string out;
  } ch;
  auto* hopl = app.add_subcommand(
      "converge-hopl", "Median high-order polynomial lattice error versus m");
  hopl->add_option("--preset", ch.preset, "integrand preset");
  hopl->add_option("--s", ch.s, "dimension (0 = preset default)");
  hopl->add_option("--m-range", ch.m_range, "lo:hi range of m (N = 2^m)");
  hopl->add_option("--r", ch.r, "rules per median (odd)");
  hopl->add_option("--seed", ch.seed, "master seed")->required();
  hopl->add_option("--interlace", ch.interlace, "comma list of Sobol interlacing orders");
  hopl->add_option("--sobol-table", ch.sobol_table, "direction-number file");
  hopl->add_option("--out", ch.out, "output CSV path")->required();
  hopl->callback([&] {
    ConvergeHoplParams params;
    params.preset = ch.preset;
    params.s = ch.s;
    const auto range = parse_range(ch.m_range, "--m-range");
    params.m_lo = range.first;
    params.m_hi = range.second;
    params.r = ch.r;
    params.seed = ch.seed;
    params.interlace_orders.clear();
    if (!ch.interlace.empty()) {
      for (const auto& tok : split(ch.interlace, ',')) {
        params.interlace_orders.push_back(to_int(tok, "--interlace"));
      }
    }
    params.sobol_table_path = ch.sobol_table;
    write_converge_hopl_csv(run_converge_hopl(params), ch.out);
  });

  // ---- prob ----------------------------------------------------------
  struct {
    std::string r_list;
    std::string q_list = "0.5,0.6,0.7,0.75,0.8,0.9";
    std::string out;
  } pr;
  auto* prob = app.add_subcommand(
      "prob", "Median failure probability p_plus(r, q) table");
  prob->add_option("--r", pr.r_list, "comma list of odd r (default: 1,3,...,49)");
  prob->add_option("--q", pr.q_list, "comma list of quantile levels");
  prob->add_option("--out", pr.out, "output CSV path")->required();
  prob->callback([&] {
    std::vector<int> rs;
    if (pr.r_list.empty()) {
      for (int r = 1; r <= 49; r += 2) rs.push_back(r);
    } else {
      for (const auto& tok : split(pr.r_list, ',')) rs.push_back(to_int(tok, "--r"));
    }
    std::vector<double> qs;
    for (const auto& tok : split(pr.q_list, ',')) qs.push_back(to_double(tok, "--q"));
    write_prob_csv(run_prob(rs, qs), pr.out);
  });

  // ---- cbc ------------------------------------------------------------
  struct {
    std::uint64_t n = 0;
    int s = 0;
    int alpha = 2;
    std::string weights = "1/j^3";
  } cb;
  auto* cbc = app.add_subcommand("cbc", "Component-by-component construction");
  cbc->add_option("--n", cb.n, "number of lattice points")->required();
  cbc->add_option("--s", cb.s, "dimension")->required();
  cbc->add_option("--alpha", cb.alpha, "smoothness (integer)");
  cbc->add_option("--weights", cb.weights, "one | 1/j^K | gamma csv");
  cbc->callback([&] {
    const auto weights = parse_weights(cb.weights, cb.s);
    const auto rule = cbc_construct(cb.n, cb.s, cb.alpha, weights);
    std::cout << "rule=" << format_rule(rule) << "\n";
    print_value("wce", wce_closed_form(rule, {static_cast<double>(cb.alpha), weights}));
  });

  // ---- wce ------------------------------------------------------------
  struct {
    std::string rule;
    double alpha = 2.0;
    std::string weights = "1/j^3";
  } wc;
  auto* wce = app.add_subcommand("wce", "Closed-form worst-case error of a lattice rule");
  wce->add_option("--rule", wc.rule, "rule as N;z_1,...,z_s")->required();
  wce->add_option("--alpha", wc.alpha, "smoothness");
  wce->add_option("--weights", wc.weights, "one | 1/j^K | gamma csv");
  wce->callback([&] {
    const auto rule = parse_rule(wc.rule);
    const auto weights = parse_weights(wc.weights, rule.dims());
    print_value("wce", wce_closed_form(rule, {wc.alpha, weights}));
  });

  // ---- bound ----------------------------------------------------------
  struct {
    std::string kind;
    std::uint64_t n = 0;
    int base = 2;
    int m = 0;
    int precision = 52;
    int s = 0;
    double alpha = 2.0;
    std::string weights = "1/j^3";
    double eta = 0.5;
  } bd;
  auto* bound = app.add_subcommand("bound", "Theorem error bound for a random rule");
  bound->add_option("kind", bd.kind, "korobov | sobolev")->required();
  bound->add_option("--n", bd.n, "lattice size (korobov)");
  bound->add_option("--base", bd.base, "digit base (sobolev)");
  bound->add_option("--m", bd.m, "points 2^m (sobolev)");
  bound->add_option("--precision", bd.precision, "digits n (sobolev)");
  bound->add_option("--s", bd.s, "dimension")->required();
  bound->add_option("--alpha", bd.alpha, "smoothness");
  bound->add_option("--weights", bd.weights, "one | 1/j^K | gamma csv");
  bound->add_option("--eta", bd.eta, "failure probability share in (0, 1]");
  bound->callback([&] {
    const auto weights = parse_weights(bd.weights, bd.s);
    if (bd.kind == "korobov") {
      print_value("bound",
                  error_bound_korobov(bd.n, bd.s, {bd.alpha, weights}, bd.eta));
    } else if (bd.kind == "sobolev") {
      const int alpha = static_cast<int>(bd.alpha);
      if (static_cast<double>(alpha) != bd.alpha) {
        throw std::invalid_argument("bound sobolev: alpha must be an integer");
      }
      print_value("bound", error_bound_sobolev(bd.base, bd.m, bd.precision, bd.s,
                                               alpha, weights, bd.eta));
    } else {
      throw std::invalid_argument("bound: kind must be korobov or sobolev");
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
