#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace mqmc {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  return std::gcd(a, b);
}

// Euler's totient by trial-division factorization. totient(1) = 1;
// throws on n = 0.
std::uint64_t euler_totient(std::uint64_t n);

// Deterministic Miller-Rabin over the first twelve prime witnesses,
// which decides primality for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

// Coefficients of the Bernoulli polynomial B_d(x) as exact int64
// fractions {num, den}, highest power first. Supported degrees: even d
// in {2, ..., 12}; throws otherwise.
const std::vector<std::pair<std::int64_t, std::int64_t>>& bernoulli_poly_coeffs(int degree);

// B_d(x) evaluated by Horner on the exact coefficients.
double bernoulli_poly(int degree, double x);

// zeta(t) by 1e4 direct terms plus an Euler-Maclaurin tail. Requires
// t >= 1.0002 (relative error stays below 1e-12 down to that edge; the
// Korobov bound's lambda grid evaluates at 1 + 2e-4).
double riemann_zeta(double t);

// Exact binomial coefficient, n <= 64 (the largest value, C(64,32), fits
// in 61 bits). Throws on k > n or n > 64.
std::uint64_t binomial(unsigned n, unsigned k);

}  // namespace mqmc
