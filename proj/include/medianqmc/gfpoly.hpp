#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace mqmc {

// Dense polynomial over the prime field F_b, b in {2, ..., 7}.
// coeffs[i] is the coefficient of x^i; the invariant is no trailing
// zeros, so the zero polynomial has an empty coefficient vector and
// degree() == -1.
struct PolyGF {
  int base = 2;
  std::vector<std::uint8_t> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const noexcept { return coeffs.empty(); }
  bool operator==(const PolyGF&) const = default;
};

// Builds a polynomial from low-order-first coefficients, validating the
// base and reducing coefficients mod b.
PolyGF make_poly(int base, const std::vector<int>& coeffs_low_first);

PolyGF poly_add(const PolyGF& f, const PolyGF& g);
PolyGF poly_sub(const PolyGF& f, const PolyGF& g);
PolyGF poly_mul(const PolyGF& f, const PolyGF& g);

// Quotient and remainder with deg(remainder) < deg(divisor); throws on a
// zero divisor.
std::pair<PolyGF, PolyGF> poly_divmod(const PolyGF& f, const PolyGF& g);
PolyGF poly_mod(const PolyGF& f, const PolyGF& g);
PolyGF poly_mulmod(const PolyGF& f, const PolyGF& g, const PolyGF& p);
PolyGF poly_gcd(PolyGF f, PolyGF g);

// Irreducibility over F_b by the Frobenius gcd test: p is irreducible
// iff gcd(x^(b^i) - x, p) is constant for all 1 <= i <= deg(p)/2.
// Requires deg(p) >= 1.
bool is_irreducible(const PolyGF& p);

// Base-b digits of k as coefficients: k = sum d_i b^i maps to
// sum d_i x^i.
PolyGF int_to_poly(std::uint64_t k, int base);

// Same, then truncation tr_n: coefficients of x^n and above dropped.
PolyGF int_to_poly_trunc(std::uint64_t k, int base, int n);

std::uint64_t poly_to_int(const PolyGF& f);

// First n digits xi_1, ..., xi_n of the Laurent expansion of
// h(x) q(x) / p(x) = sum_{i >= w} xi_i x^(-i), returned MSD-first
// (xi_1 multiplies b^-1). Requires a nonzero p.
std::vector<std::uint8_t> laurent_digits(const PolyGF& h, const PolyGF& q,
                                         const PolyGF& p, int n);

// Text form "x^3+x+1", "2x^2+1", "0"; parse accepts the same grammar.
std::string poly_to_string(const PolyGF& f);
PolyGF poly_parse(const std::string& text, int base);

// Bit-packed base-2 fast path used in the point-generation hot loops.
// A polynomial over F_2 of degree < 64 is a uint64 with bit i holding
// the coefficient of x^i.
namespace gf2 {

// Carry-less product.
unsigned __int128 mul(std::uint64_t f, std::uint64_t g) noexcept;

// g mod p, where deg(p) = pdeg (bit pdeg of p is set) and deg(g) < 2*pdeg.
std::uint64_t mod(unsigned __int128 g, std::uint64_t p, int pdeg) noexcept;

// First n Laurent digits of g / p with deg(g) < pdeg, packed MSD-first:
// bit (n-1) of the result is xi_1. Requires n <= 63.
std::uint64_t laurent_numerator(std::uint64_t g, std::uint64_t p, int pdeg,
                                int n) noexcept;

}  // namespace gf2

}  // namespace mqmc
