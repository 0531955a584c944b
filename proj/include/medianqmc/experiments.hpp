#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "medianqmc/weights.hpp"

namespace mqmc {

// Library-side quantile and slope used for the CSV summary rows.
// quantile: sorted[ceil(q*n) - 1]; slope: least squares with intercept.
double sample_quantile(std::vector<double> values, double q);
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys);

// Largest prime <= 2^k for k = 7..13, the default lattice size grid.
std::vector<std::uint64_t> default_prime_grid();

// ---- worst-case-error histogram --------------------------------------

struct HistWceParams {
  std::uint64_t n_points = 251;
  int s = 50;
  double alpha = 2.0;
  ProductWeights weights;  // gamma_j = 1/j^3 unless overridden
  int samples = 10000;
  int r = 11;
  std::uint64_t seed = 0;
};

struct HistWceSummary {
  double q75 = 0.0;
  double q90 = 0.0;
  double max = 0.0;
};

struct HistWceResult {
  HistWceParams params;
  std::vector<double> log2_single;  // one random rule per sample
  std::vector<double> log2_median;  // median of r rules per sample
  HistWceSummary single_summary;
  HistWceSummary median_summary;
};

// Draws `samples` independent single rules and, from a second seed
// stream, `samples` medians of r rules; records log2 of the closed-form
// worst-case error of each.
HistWceResult run_hist_wce(const HistWceParams& params);
void write_hist_wce_csv(const HistWceResult& result, const std::string& path);

// ---- lattice convergence ---------------------------------------------

struct ConvergeLatticeParams {
  std::string preset = "per-b2-dec";
  int s = 0;  // 0 = preset default
  std::vector<std::uint64_t> n_list;  // empty = default_prime_grid()
  int r = 11;
  std::uint64_t seed = 0;
  bool with_cbc = true;
  bool with_sobol = true;
  std::string sobol_table_path;  // needed when with_sobol
};

struct ConvergeLatticeRow {
  std::uint64_t n = 0;
  double err_single = 0.0;  // replicate 0
  double err_rep5 = 0.0;    // median error over 5 replicate seeds
  double err_cbc = 0.0;     // NaN when disabled
  std::uint64_t n_sobol = 0;
  double err_sobol = 0.0;   // NaN when disabled
};

struct ConvergeLatticeResult {
  ConvergeLatticeParams params;
  double exact_integral = 0.0;
  std::vector<ConvergeLatticeRow> rows;
  double slope_single = 0.0;  // fitted log2 err vs log2 N
  double slope_rep5 = 0.0;
  double slope_cbc = 0.0;
  double slope_sobol = 0.0;
};

// Median lattice rule absolute error per N (one seeded realization and
// the median over 5 replicate seeds), with optional CBC-constructed
// rule (alpha=2, gamma_j=1/j^3) and plain Sobol' baselines.
ConvergeLatticeResult run_converge_lattice(const ConvergeLatticeParams& params);
void write_converge_lattice_csv(const ConvergeLatticeResult& result,
                                const std::string& path);

// ---- high-order polynomial lattice convergence -------------------------

struct ConvergeHoplParams {
  std::string preset = "np1";
  int s = 0;  // 0 = preset default
  int m_lo = 6;
  int m_hi = 14;
  int r = 11;
  std::uint64_t seed = 0;
  std::vector<int> interlace_orders = {2, 3};
  std::string sobol_table_path;  // needed when interlace_orders nonempty
};

struct ConvergeHoplRow {
  int m = 0;
  std::uint64_t n_points = 0;
  double err_single = 0.0;
  double err_rep5 = 0.0;
  std::vector<double> err_sobol;  // one per interlace order
};

struct ConvergeHoplResult {
  ConvergeHoplParams params;
  double exact_integral = 0.0;
  std::vector<ConvergeHoplRow> rows;
  double slope_single = 0.0;
  double slope_rep5 = 0.0;
  std::vector<double> slope_sobol;  // one per interlace order
};

// Median high-order polynomial lattice rule (b=2, n=52, modulus
// x^52+x^3+1) per m, against interlaced Sobol' baselines.
ConvergeHoplResult run_converge_hopl(const ConvergeHoplParams& params);
void write_converge_hopl_csv(const ConvergeHoplResult& result, const std::string& path);

// ---- quantile failure probability ---------------------------------------

struct ProbRow {
  int r = 0;
  double q = 0.0;
  double p = 0.0;
  double log10_p = 0.0;
};

// Rows ordered r-major then q.
std::vector<ProbRow> run_prob(const std::vector<int>& r_values,
                              const std::vector<double>& q_values);
void write_prob_csv(const std::vector<ProbRow>& rows, const std::string& path);

}  // namespace mqmc
