#include "medianqmc/korobov.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "medianqmc/numtheory.hpp"
#include "medianqmc/parallel.hpp"

namespace mqmc {

namespace {

void check_params(const KorobovParams& params, int dims) {
  if (!(params.alpha > 0.5)) {
    throw std::invalid_argument("KorobovParams: alpha must exceed 1/2");
  }
  params.weights.validate(dims);
}

int integer_alpha(double alpha) {
  const double r = std::floor(alpha);
  if (r != alpha || alpha < 1.0 || alpha > 6.0) {
    throw std::invalid_argument("wce_closed_form: integer alpha in [1, 6] required");
  }
  return static_cast<int>(r);
}

double finish_radicand(double rad) {
  if (rad < 0.0) {
    if (rad <= -1e-10) {
      throw std::domain_error("wce_closed_form: radicand " + std::to_string(rad) +
                              " below the -1e-10 cancellation floor");
    }
    rad = 0.0;
  }
  return std::sqrt(rad);
}

}  // namespace

double r_decay(const KorobovParams& params, std::span<const std::int64_t> k) {
  check_params(params, static_cast<int>(k.size()));
  double r = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] == 0) continue;
    const double g = params.weights.gammas[j];
    const double a = std::abs(static_cast<double>(k[j]));
    r *= g * std::pow(a, -params.alpha);
  }
  return r;
}

std::vector<double> korobov_kernel_table(int alpha, std::uint64_t N) {
  if (alpha < 1 || alpha > 6) {
    throw std::invalid_argument("korobov_kernel_table: alpha must be in [1, 6]");
  }
  if (N < 1) throw std::invalid_argument("korobov_kernel_table: N must be >= 1");
  double fact = 1.0;
  for (int i = 2; i <= 2 * alpha; ++i) fact *= i;
  const double sign = (alpha % 2 == 1) ? 1.0 : -1.0;
  const double c = sign * std::pow(2.0 * std::numbers::pi, 2.0 * alpha) / fact;
  std::vector<double> tab(static_cast<std::size_t>(N));
  for (std::uint64_t t = 0; t < N; ++t) {
    tab[static_cast<std::size_t>(t)] =
        c * bernoulli_poly(2 * alpha, static_cast<double>(t) / static_cast<double>(N));
  }
  return tab;
}

double wce_closed_form(const LatticeRule& rule, const KorobovParams& params) {
  validate(rule);
  check_params(params, rule.dims());
  const int alpha = integer_alpha(params.alpha);
  const std::uint64_t N = rule.n_points;
  const int s = rule.dims();
  const std::vector<double> btab = korobov_kernel_table(alpha, N);
  std::vector<double> gamma2(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    const double g = params.weights.gammas[static_cast<std::size_t>(j)];
    gamma2[static_cast<std::size_t>(j)] = g * g;
  }

  // Per-point kernel products, filled in fixed 4096-point blocks so the
  // values (and the block sum below) are thread-count independent.
  std::vector<double> prod(static_cast<std::size_t>(N), 1.0);
  const std::uint64_t nblocks = (N + kSumBlock - 1) / kSumBlock;
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(nblocks); ++bi) {
    const std::uint64_t lo = static_cast<std::uint64_t>(bi) * kSumBlock;
    const std::uint64_t hi = std::min(N, lo + kSumBlock);
    for (int j = 0; j < s; ++j) {
      const std::uint64_t zj = rule.z[static_cast<std::size_t>(j)];
      const double g2 = gamma2[static_cast<std::size_t>(j)];
      std::uint64_t idx = lo * zj % N;
      for (std::uint64_t n = lo; n < hi; ++n) {
        prod[static_cast<std::size_t>(n)] *= 1.0 + g2 * btab[static_cast<std::size_t>(idx)];
        idx += zj;
        if (idx >= N) idx -= N;
      }
    }
  }
  const double rad =
      block_sum(N, [&](std::uint64_t n) { return prod[static_cast<std::size_t>(n)] - 1.0; }) /
      static_cast<double>(N);
  return finish_radicand(rad);
}

namespace ref {

double wce_closed_form_serial(const LatticeRule& rule, const KorobovParams& params) {
  validate(rule);
  check_params(params, rule.dims());
  const int alpha = integer_alpha(params.alpha);
  const std::uint64_t N = rule.n_points;
  const int s = rule.dims();
  const std::vector<double> btab = korobov_kernel_table(alpha, N);
  detail::Kahan acc;
  for (std::uint64_t n = 0; n < N; ++n) {
    double p = 1.0;
    for (int j = 0; j < s; ++j) {
      const double g = params.weights.gammas[static_cast<std::size_t>(j)];
      p *= 1.0 + g * g *
                     btab[static_cast<std::size_t>(
                         n * rule.z[static_cast<std::size_t>(j)] % N)];
    }
    acc.add(p - 1.0);
  }
  return finish_radicand(acc.sum / static_cast<double>(N));
}

}  // namespace ref

namespace {

// Multiplicative inverse mod N for gcd(a, N) = 1, by the extended
// Euclidean algorithm.
std::uint64_t inv_mod_u64(std::uint64_t a, std::uint64_t N) {
  std::int64_t t = 0, newt = 1;
  std::int64_t r = static_cast<std::int64_t>(N), newr = static_cast<std::int64_t>(a % N);
  while (newr != 0) {
    const std::int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (t < 0) t += static_cast<std::int64_t>(N);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

SpectralWce wce_spectral_oracle(const LatticeRule& rule, const KorobovParams& params,
                                std::int64_t K) {
  validate(rule);
  check_params(params, rule.dims());
  const int s = rule.dims();
  if (s > 3) throw std::invalid_argument("wce_spectral_oracle: supports s <= 3");
  if (K < 1) throw std::invalid_argument("wce_spectral_oracle: K must be >= 1");
  if (rule.n_points > (1ULL << 31)) {
    throw std::invalid_argument("wce_spectral_oracle: N too large for the oracle");
  }
  const auto N = static_cast<std::int64_t>(rule.n_points);
  const double alpha = params.alpha;
  const auto& g = params.weights.gammas;

  // Squared per-coordinate decay, r_j(k)^2.
  const auto rdec = [&](int j, std::int64_t k) {
    if (k == 0) return 1.0;
    return g[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)] *
           std::pow(std::abs(static_cast<double>(k)), -2.0 * alpha);
  };

  detail::Kahan acc;
  if (s == 1) {
    for (std::int64_t t = 1; t * N <= K; ++t) {
      acc.add(2.0 * rdec(0, t * N));
    }
  } else if (s == 2) {
    const auto zinv = static_cast<std::int64_t>(
        inv_mod_u64(rule.z[1], rule.n_points));
    for (std::int64_t k1 = -K; k1 <= K; ++k1) {
      // k2 = -k1 z1 / z2 (mod N)
      const std::int64_t c =
          ((-k1 % N + N) % N * (static_cast<std::int64_t>(rule.z[0]) % N) % N * zinv) % N;
      const std::int64_t start = c - (K + c) / N * N;  // smallest >= -K in c + NZ
      for (std::int64_t k2 = start; k2 <= K; k2 += N) {
        if (k1 == 0 && k2 == 0) continue;
        acc.add(rdec(0, k1) * rdec(1, k2));
      }
    }
  } else {
    const auto zinv = static_cast<std::int64_t>(
        inv_mod_u64(rule.z[2], rule.n_points));
    for (std::int64_t k1 = -K; k1 <= K; ++k1) {
      for (std::int64_t k2 = -K; k2 <= K; ++k2) {
        const std::int64_t w =
            ((k1 * static_cast<std::int64_t>(rule.z[0]) +
              k2 * static_cast<std::int64_t>(rule.z[1])) % N + N) % N;
        const std::int64_t c = (N - w) % N * zinv % N;
        const std::int64_t start = c - (K + c) / N * N;
        const double r12 = rdec(0, k1) * rdec(1, k2);
        for (std::int64_t k3 = start; k3 <= K; k3 += N) {
          if (k1 == 0 && k2 == 0 && k3 == 0) continue;
          acc.add(r12 * rdec(2, k3));
        }
      }
    }
  }
  const double partial = acc.sum;

  // Tail: a vector escapes the cube only through some coordinate j, so
  // sum_{|k|_inf > K} r(k) <= sum_j [2 gamma_j^2 K^(1-2a)/(2a-1)]
  //                               * prod_{i != j} (1 + 2 gamma_i^2 zeta(2a)).
  const double z2a = riemann_zeta(2.0 * alpha);
  double tailsq = 0.0;
  for (int j = 0; j < s; ++j) {
    double term = 2.0 * g[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)] *
                  std::pow(static_cast<double>(K), 1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0);
    for (int i = 0; i < s; ++i) {
      if (i == j) continue;
      term *= 1.0 + 2.0 * g[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)] * z2a;
    }
    tailsq += term;
  }

  SpectralWce out;
  out.value = std::sqrt(partial);
  out.tail_bound = std::sqrt(partial + tailsq) - out.value;
  return out;
}

double median_failure_probability(int r, double eta) {
  if (r < 1 || r % 2 == 0) {
    throw std::invalid_argument("median_failure_probability: r must be odd and >= 1");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("median_failure_probability: eta must be in [0, 1]");
  }
  if (r > 63) throw std::invalid_argument("median_failure_probability: r too large");
  const auto half = static_cast<unsigned>((r + 1) / 2);
  const double p = static_cast<double>(binomial(static_cast<unsigned>(r), half)) *
                   std::pow(eta, static_cast<double>(half));
  return std::min(p, 1.0);
}

double error_bound_korobov_at(std::uint64_t N, int s, const KorobovParams& params,
                              double eta, double lambda) {
  if (N < 2) throw std::invalid_argument("error_bound_korobov: N must be >= 2");
  if (s < 1) throw std::invalid_argument("error_bound_korobov: s must be >= 1");
  check_params(params, s);
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("error_bound_korobov: eta must be in (0, 1]");
  }
  const double alpha = params.alpha;
  if (!(lambda > 1.0 / (2.0 * alpha) && lambda <= 1.0)) {
    throw std::invalid_argument("error_bound_korobov: lambda must be in (1/(2 alpha), 1]");
  }
  const double z = riemann_zeta(2.0 * alpha * lambda);
  double prod = 1.0;
  for (int j = 0; j < s; ++j) {
    const double gj = params.weights.gammas[static_cast<std::size_t>(j)];
    prod *= 1.0 + 2.0 * z * std::pow(gj * gj, lambda);
  }
  const double totient = static_cast<double>(euler_totient(N));
  return std::pow((prod - 1.0) / (eta * totient), 0.5 / lambda);
}

double error_bound_korobov(std::uint64_t N, int s, const KorobovParams& params, double eta) {
  const double alpha = params.alpha;
  const double lo = 1.0 / (2.0 * alpha) + 1e-4;
  const double hi = 1.0 - 1e-4;
  if (lo >= hi) {
    // Degenerate window (alpha barely above 1/2): fall back to the top.
    return error_bound_korobov_at(N, s, params, eta, hi);
  }
  const auto logf = [&](double lam) {
    return std::log(error_bound_korobov_at(N, s, params, eta, lam));
  };
  // 64-point prescan picks the basin, golden-section refines it.
  constexpr int kGrid = 64;
  int besti = 0;
  double bestv = logf(lo);
  for (int i = 1; i < kGrid; ++i) {
    const double lam = lo + (hi - lo) * static_cast<double>(i) / (kGrid - 1);
    const double v = logf(lam);
    if (v < bestv) {
      bestv = v;
      besti = i;
    }
  }
  const double step = (hi - lo) / (kGrid - 1);
  double a = std::max(lo, lo + step * (besti - 1));
  double b = std::min(hi, lo + step * (besti + 1));
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = logf(c);
  double fd = logf(d);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = logf(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = logf(d);
    }
  }
  return std::exp(std::min(bestv, std::min(fc, fd)));
}

}  // namespace mqmc
