#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "medianqmc/gfpoly.hpp"
#include "medianqmc/lattice.hpp"
#include "medianqmc/parallel.hpp"
#include "medianqmc/polylattice.hpp"
#include "medianqmc/rng.hpp"

namespace mqmc {

using Integrand = std::function<double(const std::vector<double>&)>;

// Handling of even-length input to median_of. Rejection is the default;
// the mean of the two middle order statistics is opt-in.
enum class EvenPolicy { kReject, kMeanOfMiddle };

struct MedianConfig {
  int r = 11;  // count of independently drawn rules, odd
  std::uint64_t master_seed = 0;
};

// Middle order statistic of an odd-length vector. Throws
// std::invalid_argument on empty or (under kReject) even-length input
// and on non-finite entries.
double median_of(std::vector<double> values, EvenPolicy policy = EvenPolicy::kReject);

// (1/N) sum_h f(x_h) with compensated summation; throws std::domain_error
// when f returns a non-finite value. PointSet needs count(), dims(), and
// coord(h, j).
template <typename PointSet>
double qmc_estimate(const Integrand& f, const PointSet& points) {
  const std::uint64_t count = points.count();
  if (count == 0) throw std::invalid_argument("qmc_estimate: empty point set");
  const int s = points.dims();
  bool bad = false;
  const double total = block_sum(count, [&](std::uint64_t h) {
    std::vector<double> x(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) x[static_cast<std::size_t>(j)] = points.coord(h, j);
    const double v = f(x);
    if (!std::isfinite(v)) {
#pragma omp atomic write
      bad = true;
      return 0.0;
    }
    return v;
  });
  if (bad) throw std::domain_error("qmc_estimate: integrand returned a non-finite value");
  return total / static_cast<double>(count);
}

struct MedianLatticeResult {
  double estimate = 0.0;
  std::vector<double> estimates;    // one per rule, in draw order
  std::vector<LatticeRule> rules;   // the sampled rules, for audit
};

struct MedianHoplResult {
  double estimate = 0.0;
  std::vector<double> estimates;
  std::vector<HoplRule> rules;
};

// Median over r plain lattice rules with generating vectors drawn
// independently; the seed of draw l is derived from (master_seed, l), so
// the result is independent of evaluation order.
MedianLatticeResult median_lattice_estimate(const Integrand& f, std::uint64_t n_points,
                                            int s, const MedianConfig& config);

// Median over r high-order polynomial lattice rules sharing (b, m, n, p)
// with independently drawn generating vectors.
MedianHoplResult median_hopl_estimate(const Integrand& f, int base, int m, int n,
                                      const PolyGF& modulus, int s,
                                      const MedianConfig& config);

// Probability that at least (r+1)/2 of r independent trials each land
// above their q-quantile: sum_{i=(r+1)/2}^r C(r,i) (1-q)^i q^(r-i).
// By symmetry the same bound covers the left tail at 1-q.
double p_plus(int r, double q);

}  // namespace mqmc
