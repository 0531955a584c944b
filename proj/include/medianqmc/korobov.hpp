#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "medianqmc/lattice.hpp"
#include "medianqmc/weights.hpp"

namespace mqmc {

// Korobov space parameters: smoothness alpha > 1/2 and product weights.
struct KorobovParams {
  double alpha = 2.0;
  ProductWeights weights;
};

// Fourier decay profile r(k) = prod_{j : k_j != 0} gamma_j |k_j|^(-alpha),
// with r(0) = 1. The squared worst-case error is the sum of r(k)^2 over
// the nonzero dual lattice.
double r_decay(const KorobovParams& params, std::span<const std::int64_t> k);

// Table of c_alpha * B_{2 alpha}(t / N) for t = 0..N-1 with
// c_alpha = (-1)^(alpha+1) (2 pi)^(2 alpha) / (2 alpha)!. Shared by the
// closed-form error and the CBC construction. Integer alpha in [1, 6].
std::vector<double> korobov_kernel_table(int alpha, std::uint64_t N);

// Worst-case error in the weighted Korobov space for integer alpha,
//   S^2 = -1 + (1/N) sum_n prod_j (1 + gamma_j^2 c_alpha B_{2a}(x_nj)),
// with compensated summation. A tiny negative radicand (above -1e-10)
// clamps to zero; anything more negative throws.
double wce_closed_form(const LatticeRule& rule, const KorobovParams& params);

namespace ref {
// Plain serial evaluation of the same closed form.
double wce_closed_form_serial(const LatticeRule& rule, const KorobovParams& params);
}  // namespace ref

// Truncated dual-lattice sum sum_{0 < |k|_inf <= K, k.z = 0 mod N} r(k)^2
// plus an analytic bound on the discarded tail. Supports s <= 3 by
// solving the congruence for the last coordinate. sqrt of the partial
// sum approximates the worst-case error from below.
struct SpectralWce {
  double value = 0.0;       // sqrt(truncated dual sum)
  double tail_bound = 0.0;  // bound on the sqrt correction from |k| > K
};
SpectralWce wce_spectral_oracle(const LatticeRule& rule, const KorobovParams& params,
                                std::int64_t K);

// Failure bound for the median of r independent rules: with eta the
// per-rule probability of a bad rule, the median is bad only if at
// least (r+1)/2 rules are bad, so the probability is at most
// C(r, (r+1)/2) eta^((r+1)/2). Requires odd r >= 1.
double median_failure_probability(int r, double eta);

// Error bound for a fixed lambda in (1/(2 alpha), 1):
//   [ (1/(eta phi(N))) (prod_j (1 + gamma_j^(2 lambda) 2 zeta(2 alpha lambda)) - 1) ]^(1/(2 lambda))
double error_bound_korobov_at(std::uint64_t N, int s, const KorobovParams& params,
                              double eta, double lambda);

// Infimum of the above over lambda, located by a 64-point grid prescan
// followed by golden-section refinement on log(bound).
double error_bound_korobov(std::uint64_t N, int s, const KorobovParams& params, double eta);

}  // namespace mqmc
