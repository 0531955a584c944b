#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "medianqmc/gfpoly.hpp"
#include "medianqmc/rng.hpp"
#include "medianqmc/weights.hpp"

namespace mqmc {

// Rank-1 polynomial lattice rule of high order: b^m points with n output
// digits in base b, generated modulo an irreducible p of degree n. The
// interlacing order is implicit, floor(n / m).
struct HoplRule {
  int base = 2;
  int m = 0;  // log_b of the point count
  int n = 0;  // digit precision, deg(p)
  PolyGF modulus;           // irreducible, degree n
  std::vector<PolyGF> q;    // generating vector, each nonzero with deg < n
};

// Throws std::invalid_argument on violated invariants: 1 <= m <= n,
// deg(p) = n, p irreducible, every q_j nonzero with deg(q_j) < n, and
// b^n small enough that numerators stay exact in uint64/double (<= 2^52).
void validate(const HoplRule& rule);

inline int interlacing_order(const HoplRule& rule) noexcept { return rule.n / rule.m; }

// Uniform draw of s generating components from the nonzero polynomials
// of degree < n (integers [1, b^n - 1] mapped through int_to_poly).
std::vector<PolyGF> sample_generating_vector_poly(int n, int s, int base, Rng& rng);

// Lazy point access. Point h (0 <= h < b^m) has coordinate j equal to
// the first n Laurent digits of h(x) q_j(x) / p(x), read as a base-b
// fraction: numerator(h, j) / b^n.
class HoplPointSet {
 public:
  explicit HoplPointSet(HoplRule rule);

  std::uint64_t count() const noexcept { return npoints_; }
  int dims() const noexcept { return static_cast<int>(rule_.q.size()); }
  const HoplRule& rule() const noexcept { return rule_; }
  std::uint64_t denominator() const noexcept { return denom_; }

  std::uint64_t numerator(std::uint64_t h, int j) const;
  double coord(std::uint64_t h, int j) const {
    return static_cast<double>(numerator(h, j)) / static_cast<double>(denom_);
  }

 private:
  HoplRule rule_;
  std::uint64_t npoints_ = 0;
  std::uint64_t denom_ = 0;
  // Base-2 fast path: bit-packed modulus and components.
  bool packed_ = false;
  std::uint64_t pbits_ = 0;
  std::vector<std::uint64_t> qbits_;
};

namespace ref {
// Generic-arithmetic coordinate numerator, kept as the reference for the
// bit-packed base-2 path.
std::uint64_t hopl_numerator_generic(const HoplRule& rule, std::uint64_t h, int j);
}  // namespace ref

// Dual net membership: with k_j < b^n identified with polynomials via
// truncation tr_n, k is dual iff deg(sum_j tr_n(k_j) q_j mod p) < n - m.
bool is_dual_net(std::span<const std::uint64_t> k, const HoplRule& rule);

// b-adic Walsh function wal_k evaluated at a point given by its digit
// numerator: exp(2 pi i / b * sum_i kappa_{i-1} xi_i) over the first
// ndigits digits.
std::complex<double> walsh(std::uint64_t k, std::uint64_t numerator, int ndigits, int base);

// (1/b^m) sum_h prod_j wal_{k_j}(x_{h,j}); 1 exactly on the dual net,
// vanishing otherwise. Test oracle; digits of k_j past the n stored
// point digits pair with zeros and drop out.
std::complex<double> walsh_character_sum(std::span<const std::uint64_t> k,
                                         const HoplRule& rule);

// Dick weight mu_alpha(k): sum of the alpha largest digit positions of k
// (positions counted from 1 at the least significant power). Throws on
// k = 0.
std::uint64_t mu_alpha(std::uint64_t k, int alpha, int base);

// Walsh decay constant C_alpha for smoothness alpha >= 2 in base b.
double c_alpha(int alpha, int base);

// A_{alpha, lambda} appearing in the Sobolev-space bound; requires
// lambda > 1/alpha.
double a_alpha_lambda(int alpha, double lambda, int base);

// Error bound for a fixed lambda in (1/alpha, 1]:
//   [ 2 / (eta (b^min(m, lambda n) - 1)) *
//     (prod_j (1 + gamma_j^lambda C_alpha^lambda A_{alpha,lambda}) - 1) ]^(1/lambda)
double error_bound_sobolev_at(int base, int m, int n, int s, int alpha,
                              const ProductWeights& weights, double eta, double lambda);

// Infimum over lambda by grid prescan plus golden-section refinement.
double error_bound_sobolev(int base, int m, int n, int s, int alpha,
                           const ProductWeights& weights, double eta);

// Text form "b;m;n;p=<poly>;q=<poly>,...", polynomials as in
// poly_to_string.
std::string format_hopl_rule(const HoplRule& rule);
HoplRule parse_hopl_rule(const std::string& text);

}  // namespace mqmc
