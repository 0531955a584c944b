#include "medianqmc/median.hpp"

#include <algorithm>
#include <exception>

#include "medianqmc/numtheory.hpp"

namespace mqmc {

double median_of(std::vector<double> values, EvenPolicy policy) {
  if (values.empty()) throw std::invalid_argument("median_of: empty input");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("median_of: non-finite entry");
  }
  const std::size_t n = values.size();
  if (n % 2 == 0 && policy == EvenPolicy::kReject) {
    throw std::invalid_argument("median_of: even length (enable kMeanOfMiddle to allow)");
  }
  if (n % 2 == 1) {
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    return values[mid];
  }
  std::sort(values.begin(), values.end());
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

void check_config(const MedianConfig& config) {
  if (config.r < 1 || config.r % 2 == 0) {
    throw std::invalid_argument("median estimate: r must be an odd integer >= 1");
  }
}

// Runs estimate(l) for l = 0..r-1 in parallel, keeping the first thrown
// exception (lowest l) so failures are deterministic too.
template <class Fn>
std::vector<double> run_draws(int r, Fn&& estimate) {
  std::vector<double> out(static_cast<std::size_t>(r), 0.0);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(r));
#pragma omp parallel for schedule(dynamic, 1)
  for (int l = 0; l < r; ++l) {
    try {
      out[static_cast<std::size_t>(l)] = estimate(l);
    } catch (...) {
      errors[static_cast<std::size_t>(l)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

MedianLatticeResult median_lattice_estimate(const Integrand& f, std::uint64_t n_points,
                                            int s, const MedianConfig& config) {
  check_config(config);
  MedianLatticeResult result;
  result.rules.resize(static_cast<std::size_t>(config.r));
  for (int l = 0; l < config.r; ++l) {
    Rng rng{derive_seed(config.master_seed, static_cast<std::uint64_t>(l))};
    result.rules[static_cast<std::size_t>(l)] = sample_generating_vector(n_points, s, rng);
  }
  result.estimates = run_draws(config.r, [&](int l) {
    return qmc_estimate(f, LatticePointSet{result.rules[static_cast<std::size_t>(l)]});
  });
  result.estimate = median_of(result.estimates);
  return result;
}

MedianHoplResult median_hopl_estimate(const Integrand& f, int base, int m, int n,
                                      const PolyGF& modulus, int s,
                                      const MedianConfig& config) {
  check_config(config);
  MedianHoplResult result;
  result.rules.resize(static_cast<std::size_t>(config.r));
  for (int l = 0; l < config.r; ++l) {
    Rng rng{derive_seed(config.master_seed, static_cast<std::uint64_t>(l))};
    HoplRule rule;
    rule.base = base;
    rule.m = m;
    rule.n = n;
    rule.modulus = modulus;
    rule.q = sample_generating_vector_poly(n, s, base, rng);
    validate(rule);
    result.rules[static_cast<std::size_t>(l)] = std::move(rule);
  }
  result.estimates = run_draws(config.r, [&](int l) {
    return qmc_estimate(f, HoplPointSet{result.rules[static_cast<std::size_t>(l)]});
  });
  result.estimate = median_of(result.estimates);
  return result;
}

double p_plus(int r, double q) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("p_plus: r must be odd >= 1");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("p_plus: q must be in (0, 1)");
  const double lp = std::log1p(-q);  // log(1 - q)
  const double lq = std::log(q);
  double sum = 0.0;
  for (int i = (r + 1) / 2; i <= r; ++i) {
    const double bin = static_cast<double>(binomial(r, i));
    const double direct =
        bin * std::pow(1.0 - q, static_cast<double>(i)) * std::pow(q, static_cast<double>(r - i));
    if (direct > 0.0 && std::isfinite(direct)) {
      sum += direct;
    } else {
      sum += std::exp(std::log(bin) + static_cast<double>(i) * lp +
                      static_cast<double>(r - i) * lq);
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace mqmc
