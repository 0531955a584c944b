#include "medianqmc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "medianqmc/csvio.hpp"
#include "medianqmc/korobov.hpp"
#include "medianqmc/lattice.hpp"
#include "medianqmc/median.hpp"
#include "medianqmc/numtheory.hpp"
#include "medianqmc/polylattice.hpp"
#include "medianqmc/rng.hpp"
#include "medianqmc/sobol.hpp"
#include "medianqmc/testfns.hpp"

namespace mqmc {

double sample_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("sample_quantile: empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw std::invalid_argument("sample_quantile: bad q");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::size_t idx =
      static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (idx == 0) idx = 1;
  if (idx > n) idx = n;
  return values[idx - 1];
}

double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("ls_slope: need two or more paired points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("ls_slope: degenerate abscissae");
  return sxy / sxx;
}

std::vector<std::uint64_t> default_prime_grid() {
  std::vector<std::uint64_t> grid;
  for (int k = 7; k <= 13; ++k) {
    std::uint64_t n = (1ULL << k) - 1;
    while (!is_prime(n)) --n;
    grid.push_back(n);
  }
  return grid;
}

// ---- worst-case-error histogram --------------------------------------

HistWceResult run_hist_wce(const HistWceParams& params) {
  if (params.samples < 1) throw std::invalid_argument("hist-wce: samples must be >= 1");
  if (params.r < 1 || params.r % 2 == 0) {
    throw std::invalid_argument("hist-wce: r must be odd >= 1");
  }
  KorobovParams kp{params.alpha, params.weights};
  kp.weights.validate(params.s);

  HistWceResult result;
  result.params = params;
  result.log2_single.assign(static_cast<std::size_t>(params.samples), 0.0);
  result.log2_median.assign(static_cast<std::size_t>(params.samples), 0.0);

  // Stream 0 feeds the single draws, stream 1 the median groups; each
  // sample index derives its own seed, so scheduling cannot matter.
  const std::uint64_t single_stream = derive_seed(params.seed, 0);
  const std::uint64_t median_stream = derive_seed(params.seed, 1);

#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < params.samples; ++i) {
    {
      Rng rng{derive_seed(single_stream, static_cast<std::uint64_t>(i))};
      const auto rule = sample_generating_vector(params.n_points, params.s, rng);
      result.log2_single[static_cast<std::size_t>(i)] =
          std::log2(wce_closed_form(rule, kp));
    }
    {
      const std::uint64_t group = derive_seed(median_stream, static_cast<std::uint64_t>(i));
      std::vector<double> wces(static_cast<std::size_t>(params.r));
      for (int l = 0; l < params.r; ++l) {
        Rng rng{derive_seed(group, static_cast<std::uint64_t>(l))};
        const auto rule = sample_generating_vector(params.n_points, params.s, rng);
        wces[static_cast<std::size_t>(l)] = wce_closed_form(rule, kp);
      }
      result.log2_median[static_cast<std::size_t>(i)] = std::log2(median_of(wces));
    }
  }

  const auto summarize = [](const std::vector<double>& v) {
    HistWceSummary s;
    s.q75 = sample_quantile(v, 0.75);
    s.q90 = sample_quantile(v, 0.90);
    s.max = *std::max_element(v.begin(), v.end());
    return s;
  };
  result.single_summary = summarize(result.log2_single);
  result.median_summary = summarize(result.log2_median);
  return result;
}

void write_hist_wce_csv(const HistWceResult& result, const std::string& path) {
  CsvWriter w(path);
  w.raw_line("row,index,log2_wce_single,log2_wce_median");
  for (std::size_t i = 0; i < result.log2_single.size(); ++i) {
    w.cell("sample")
        .cell(static_cast<std::uint64_t>(i))
        .cell(result.log2_single[i])
        .cell(result.log2_median[i]);
    w.end_row();
  }
  const auto summary_row = [&](const char* name, double a, double b) {
    w.cell(name).cell(std::uint64_t{0}).cell(a).cell(b);
    w.end_row();
  };
  summary_row("q75", result.single_summary.q75, result.median_summary.q75);
  summary_row("q90", result.single_summary.q90, result.median_summary.q90);
  summary_row("max", result.single_summary.max, result.median_summary.max);
  w.commit();
}

// ---- lattice convergence ---------------------------------------------

namespace {

constexpr int kReplicates = 5;

int round_log2(std::uint64_t n) {
  int best = 1;
  double bestdiff = 1e300;
  for (int k = 1; k <= 32; ++k) {
    const double diff = std::abs(std::log2(static_cast<double>(n)) - k);
    if (diff < bestdiff) {
      bestdiff = diff;
      best = k;
    }
  }
  return best;
}

}  // namespace

ConvergeLatticeResult run_converge_lattice(const ConvergeLatticeParams& params) {
  const TestFunction f = make_preset(params.preset, params.s);
  ConvergeLatticeResult result;
  result.params = params;
  result.exact_integral = f.exact_integral;

  std::vector<std::uint64_t> grid = params.n_list;
  if (grid.empty()) grid = default_prime_grid();

  DirectionTable table;
  if (params.with_sobol) {
    table = load_direction_table_file(params.sobol_table_path);
  }
  // Fixed CBC criterion regardless of preset, a deliberately imperfect
  // heuristic for the increasing-weight integrands.
  const ProductWeights cbc_weights = polynomial_decay_weights(f.dims, 3);

  for (std::size_t in = 0; in < grid.size(); ++in) {
    ConvergeLatticeRow row;
    row.n = grid[in];

    std::vector<double> errs(kReplicates, 0.0);
    for (int rep = 0; rep < kReplicates; ++rep) {
      MedianConfig cfg;
      cfg.r = params.r;
      cfg.master_seed = derive_seed(derive_seed(params.seed, in), rep);
      const auto est = median_lattice_estimate(f.eval, row.n, f.dims, cfg);
      errs[static_cast<std::size_t>(rep)] = std::abs(est.estimate - f.exact_integral);
    }
    row.err_single = errs[0];
    row.err_rep5 = median_of(errs);

    if (params.with_cbc) {
      const auto rule = cbc_construct(row.n, f.dims, 2, cbc_weights);
      row.err_cbc =
          std::abs(qmc_estimate(f.eval, LatticePointSet{rule}) - f.exact_integral);
    } else {
      row.err_cbc = std::nan("");
    }

    if (params.with_sobol) {
      const int m = round_log2(row.n);
      row.n_sobol = 1ULL << m;
      const auto pts = sobol_points(m, f.dims, table);
      row.err_sobol = std::abs(qmc_estimate(f.eval, pts) - f.exact_integral);
    } else {
      row.n_sobol = 0;
      row.err_sobol = std::nan("");
    }
    result.rows.push_back(std::move(row));
  }

  // log2-log2 fits; zero errors (constant integrands) clamp to the
  // tiniest normal so the logs stay finite.
  const auto log2_safe = [](double v) {
    return std::log2(std::max(v, 1e-300));
  };
  std::vector<double> xs, y1, y5, yc, ysb, xsb;
  for (const auto& row : result.rows) {
    xs.push_back(std::log2(static_cast<double>(row.n)));
    y1.push_back(log2_safe(row.err_single));
    y5.push_back(log2_safe(row.err_rep5));
    if (params.with_cbc) yc.push_back(log2_safe(row.err_cbc));
    if (params.with_sobol) {
      xsb.push_back(std::log2(static_cast<double>(row.n_sobol)));
      ysb.push_back(log2_safe(row.err_sobol));
    }
  }
  result.slope_single = ls_slope(xs, y1);
  result.slope_rep5 = ls_slope(xs, y5);
  result.slope_cbc = params.with_cbc ? ls_slope(xs, yc) : std::nan("");
  result.slope_sobol = params.with_sobol ? ls_slope(xsb, ysb) : std::nan("");
  return result;
}

void write_converge_lattice_csv(const ConvergeLatticeResult& result,
                                const std::string& path) {
  CsvWriter w(path);
  w.raw_line("row,n,err_median_single,err_median_rep5,err_cbc,n_sobol,err_sobol");
  for (const auto& row : result.rows) {
    w.cell("n").cell(row.n).cell(row.err_single).cell(row.err_rep5);
    w.cell(row.err_cbc).cell(row.n_sobol).cell(row.err_sobol);
    w.end_row();
  }
  w.cell("slope").cell(std::uint64_t{0}).cell(result.slope_single).cell(result.slope_rep5);
  w.cell(result.slope_cbc).cell(std::uint64_t{0}).cell(result.slope_sobol);
  w.end_row();
  w.commit();
}

// ---- high-order polynomial lattice convergence -------------------------

ConvergeHoplResult run_converge_hopl(const ConvergeHoplParams& params) {
  if (params.m_lo < 1 || params.m_hi < params.m_lo || params.m_hi > 20) {
    throw std::invalid_argument("converge-hopl: need 1 <= m_lo <= m_hi <= 20");
  }
  const TestFunction f = make_preset(params.preset, params.s);
  ConvergeHoplResult result;
  result.params = params;
  result.exact_integral = f.exact_integral;

  // Fixed precision and modulus: n = 52, p = x^52 + x^3 + 1.
  std::vector<int> pc(53, 0);
  pc[0] = 1;
  pc[3] = 1;
  pc[52] = 1;
  const PolyGF modulus = make_poly(2, pc);
  constexpr int kPrecision = 52;

  DirectionTable table;
  if (!params.interlace_orders.empty()) {
    table = load_direction_table_file(params.sobol_table_path);
  }

  for (int m = params.m_lo; m <= params.m_hi; ++m) {
    ConvergeHoplRow row;
    row.m = m;
    row.n_points = 1ULL << m;

    std::vector<double> errs(kReplicates, 0.0);
    for (int rep = 0; rep < kReplicates; ++rep) {
      MedianConfig cfg;
      cfg.r = params.r;
      cfg.master_seed =
          derive_seed(derive_seed(params.seed, static_cast<std::uint64_t>(m)), rep);
      const auto est = median_hopl_estimate(f.eval, 2, m, kPrecision, modulus, f.dims, cfg);
      errs[static_cast<std::size_t>(rep)] = std::abs(est.estimate - f.exact_integral);
    }
    row.err_single = errs[0];
    row.err_rep5 = median_of(errs);

    for (int d : params.interlace_orders) {
      const auto raw = sobol_points(m, d * f.dims, table);
      const auto pts = interlace(raw, d);
      row.err_sobol.push_back(
          std::abs(qmc_estimate(f.eval, pts) - f.exact_integral));
    }
    result.rows.push_back(std::move(row));
  }

  const auto log2_safe = [](double v) { return std::log2(std::max(v, 1e-300)); };
  std::vector<double> xs, y1, y5;
  for (const auto& row : result.rows) {
    xs.push_back(static_cast<double>(row.m));
    y1.push_back(log2_safe(row.err_single));
    y5.push_back(log2_safe(row.err_rep5));
  }
  result.slope_single = ls_slope(xs, y1);
  result.slope_rep5 = ls_slope(xs, y5);
  for (std::size_t di = 0; di < params.interlace_orders.size(); ++di) {
    std::vector<double> ys;
    for (const auto& row : result.rows) ys.push_back(log2_safe(row.err_sobol[di]));
    result.slope_sobol.push_back(ls_slope(xs, ys));
  }
  return result;
}

void write_converge_hopl_csv(const ConvergeHoplResult& result, const std::string& path) {
  CsvWriter w(path);
  std::string header = "row,m,n_points,err_hopl_single,err_hopl_rep5";
  for (int d : result.params.interlace_orders) {
    header += ",err_sobol_o" + std::to_string(d);
  }
  w.raw_line(header);
  for (const auto& row : result.rows) {
    w.cell("m").cell(row.m).cell(row.n_points).cell(row.err_single).cell(row.err_rep5);
    for (double e : row.err_sobol) w.cell(e);
    w.end_row();
  }
  w.cell("slope").cell(0).cell(std::uint64_t{0}).cell(result.slope_single)
      .cell(result.slope_rep5);
  for (double sl : result.slope_sobol) w.cell(sl);
  w.end_row();
  w.commit();
}

// ---- quantile failure probability ---------------------------------------

std::vector<ProbRow> run_prob(const std::vector<int>& r_values,
                              const std::vector<double>& q_values) {
  std::vector<ProbRow> rows;
  for (int r : r_values) {
    for (double q : q_values) {
      ProbRow row;
      row.r = r;
      row.q = q;
      row.p = p_plus(r, q);
      row.log10_p = std::log10(row.p);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_prob_csv(const std::vector<ProbRow>& rows, const std::string& path) {
  CsvWriter w(path);
  w.raw_line("r,q,p_plus,log10_p_plus");
  for (const auto& row : rows) {
    w.cell(row.r).cell(row.q).cell(row.p).cell(row.log10_p);
    w.end_row();
  }
  w.commit();
}

}  // namespace mqmc
