#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "medianqmc/rng.hpp"
#include "medianqmc/weights.hpp"

namespace mqmc {

// Rank-1 lattice rule with N points: point n has coordinates
// frac(n z_j / N). Components z_j lie in [1, N-1] with gcd(z_j, N) = 1.
struct LatticeRule {
  std::uint64_t n_points = 0;
  std::vector<std::uint64_t> z;

  int dims() const noexcept { return static_cast<int>(z.size()); }
};

// Throws std::invalid_argument if the rule violates its invariants
// (N >= 1, N <= 2^32 so products fit in uint64, components in range and
// coprime to N).
void validate(const LatticeRule& rule);

// Uniform draw of z from U_N^s, U_N = {z in [1, N-1] : gcd(z, N) = 1},
// by per-component rejection.
LatticeRule sample_generating_vector(std::uint64_t N, int s, Rng& rng);

// Lazy point access: nothing is precomputed, coordinates are exact
// rationals numerator(n, j) / N evaluated on demand.
class LatticePointSet {
 public:
  explicit LatticePointSet(LatticeRule rule);

  std::uint64_t count() const noexcept { return rule_.n_points; }
  int dims() const noexcept { return rule_.dims(); }
  const LatticeRule& rule() const noexcept { return rule_; }

  std::uint64_t numerator(std::uint64_t n, int j) const noexcept {
    return n * rule_.z[static_cast<std::size_t>(j)] % rule_.n_points;
  }
  // One correctly rounded division; both operands are exact.
  double coord(std::uint64_t n, int j) const noexcept {
    return static_cast<double>(numerator(n, j)) /
           static_cast<double>(rule_.n_points);
  }

 private:
  LatticeRule rule_;
};

// Whether k lies in the dual lattice: k . z = 0 (mod N).
bool is_dual(std::span<const std::int64_t> k, const LatticeRule& rule);

// (1/N) sum_n exp(2 pi i k . x_n), accumulated point by point. Equals 1
// on dual vectors and vanishes otherwise (up to rounding).
std::complex<double> character_sum(std::span<const std::int64_t> k, const LatticeRule& rule);

// Baker's transform phi(x) = 1 - |2x - 1|, applied coordinate-wise to
// make a periodic rule usable on non-periodic integrands.
inline double tent_transform(double x) noexcept { return 1.0 - std::abs(2.0 * x - 1.0); }

// Component-by-component construction minimizing the Korobov-space
// worst-case error: z_1 = 1, then each z_j is the merit-minimizing
// candidate in U_N (smallest candidate on ties).
LatticeRule cbc_construct(std::uint64_t N, int s, int alpha, const ProductWeights& weights);

namespace ref {
// Serial reference for the OpenMP candidate sweep inside cbc_construct.
LatticeRule cbc_construct_serial(std::uint64_t N, int s, int alpha,
                                 const ProductWeights& weights);
}  // namespace ref

// Text form "N;z_1,...,z_s".
std::string format_rule(const LatticeRule& rule);
LatticeRule parse_rule(const std::string& text);

}  // namespace mqmc
