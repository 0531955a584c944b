#include "medianqmc/gfpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <stdexcept>

namespace mqmc {

namespace {

void check_base(int base) {
  if (base < 2 || base > 7 || (base != 2 && base != 3 && base != 5 && base != 7)) {
    throw std::invalid_argument("PolyGF: base must be a prime in {2, 3, 5, 7}");
  }
}

void check_same_base(const PolyGF& f, const PolyGF& g) {
  if (f.base != g.base) throw std::invalid_argument("PolyGF: mixed bases");
}

void strip(PolyGF& f) {
  while (!f.coeffs.empty() && f.coeffs.back() == 0) f.coeffs.pop_back();
}

// Multiplicative inverse in F_b, b prime and tiny.
int inv_mod(int a, int b) {
  for (int x = 1; x < b; ++x) {
    if (a * x % b == 1) return x;
  }
  throw std::invalid_argument("PolyGF: no inverse for 0");
}

PolyGF scalar_mul(const PolyGF& f, int c) {
  PolyGF r{f.base, {}};
  if (c % f.base == 0) return r;
  r.coeffs.resize(f.coeffs.size());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    r.coeffs[i] = static_cast<std::uint8_t>(f.coeffs[i] * c % f.base);
  }
  strip(r);
  return r;
}

// x as a polynomial.
PolyGF x_poly(int base) { return PolyGF{base, {0, 1}}; }

}  // namespace

PolyGF make_poly(int base, const std::vector<int>& coeffs_low_first) {
  check_base(base);
  PolyGF f{base, {}};
  f.coeffs.reserve(coeffs_low_first.size());
  for (int c : coeffs_low_first) {
    const int r = ((c % base) + base) % base;
    f.coeffs.push_back(static_cast<std::uint8_t>(r));
  }
  strip(f);
  return f;
}

PolyGF poly_add(const PolyGF& f, const PolyGF& g) {
  check_same_base(f, g);
  PolyGF r{f.base, {}};
  r.coeffs.resize(std::max(f.coeffs.size(), g.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    int v = 0;
    if (i < f.coeffs.size()) v += f.coeffs[i];
    if (i < g.coeffs.size()) v += g.coeffs[i];
    r.coeffs[i] = static_cast<std::uint8_t>(v % f.base);
  }
  strip(r);
  return r;
}

PolyGF poly_sub(const PolyGF& f, const PolyGF& g) {
  check_same_base(f, g);
  PolyGF r{f.base, {}};
  r.coeffs.resize(std::max(f.coeffs.size(), g.coeffs.size()), 0);
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    int v = f.base;
    if (i < f.coeffs.size()) v += f.coeffs[i];
    if (i < g.coeffs.size()) v -= g.coeffs[i];
    r.coeffs[i] = static_cast<std::uint8_t>(v % f.base);
  }
  strip(r);
  return r;
}

PolyGF poly_mul(const PolyGF& f, const PolyGF& g) {
  check_same_base(f, g);
  PolyGF r{f.base, {}};
  if (f.is_zero() || g.is_zero()) return r;
  std::vector<int> acc(f.coeffs.size() + g.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < g.coeffs.size(); ++j) {
      acc[i + j] = (acc[i + j] + f.coeffs[i] * g.coeffs[j]) % f.base;
    }
  }
  r.coeffs.assign(acc.begin(), acc.end());
  strip(r);
  return r;
}

std::pair<PolyGF, PolyGF> poly_divmod(const PolyGF& f, const PolyGF& g) {
  check_same_base(f, g);
  if (g.is_zero()) throw std::invalid_argument("poly_divmod: division by zero");
  PolyGF quot{f.base, {}};
  PolyGF rem = f;
  const int dg = g.degree();
  if (f.degree() >= dg) {
    quot.coeffs.assign(static_cast<std::size_t>(f.degree() - dg) + 1, 0);
    const int lead_inv = inv_mod(g.coeffs.back(), g.base);
    while (rem.degree() >= dg) {
      const int shift = rem.degree() - dg;
      const int c = rem.coeffs.back() * lead_inv % f.base;
      quot.coeffs[static_cast<std::size_t>(shift)] = static_cast<std::uint8_t>(c);
      // rem -= c * x^shift * g
      for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
        int v = rem.coeffs[i + shift] + f.base * 7 - c * g.coeffs[i];
        rem.coeffs[i + shift] = static_cast<std::uint8_t>(v % f.base);
      }
      strip(rem);
    }
  }
  strip(quot);
  return {quot, rem};
}

PolyGF poly_mod(const PolyGF& f, const PolyGF& g) { return poly_divmod(f, g).second; }

PolyGF poly_mulmod(const PolyGF& f, const PolyGF& g, const PolyGF& p) {
  return poly_mod(poly_mul(f, g), p);
}

PolyGF poly_gcd(PolyGF f, PolyGF g) {
  while (!g.is_zero()) {
    PolyGF r = poly_mod(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  // Normalize to a monic representative.
  if (!f.is_zero() && f.coeffs.back() != 1) {
    f = scalar_mul(f, inv_mod(f.coeffs.back(), f.base));
  }
  return f;
}

bool is_irreducible(const PolyGF& p) {
  const int d = p.degree();
  if (d < 1) throw std::invalid_argument("is_irreducible: degree must be >= 1");
  if (d == 1) return true;
  const PolyGF x = x_poly(p.base);
  // t holds x^(b^i) mod p; one Frobenius step raises to the b-th power.
  PolyGF t = x;
  for (int i = 1; i <= d / 2; ++i) {
    PolyGF tb = t;
    for (int k = 1; k < p.base; ++k) tb = poly_mulmod(tb, t, p);
    t = std::move(tb);
    const PolyGF g = poly_gcd(poly_sub(t, x), p);
    if (g.degree() >= 1 || g.is_zero()) return false;
  }
  return true;
}

PolyGF int_to_poly(std::uint64_t k, int base) {
  check_base(base);
  PolyGF f{base, {}};
  while (k > 0) {
    f.coeffs.push_back(static_cast<std::uint8_t>(k % static_cast<std::uint64_t>(base)));
    k /= static_cast<std::uint64_t>(base);
  }
  return f;
}

PolyGF int_to_poly_trunc(std::uint64_t k, int base, int n) {
  PolyGF f = int_to_poly(k, base);
  if (n < 0) throw std::invalid_argument("int_to_poly_trunc: n must be >= 0");
  if (f.degree() >= n) {
    f.coeffs.resize(static_cast<std::size_t>(n));
    while (!f.coeffs.empty() && f.coeffs.back() == 0) f.coeffs.pop_back();
  }
  return f;
}

std::uint64_t poly_to_int(const PolyGF& f) {
  std::uint64_t v = 0;
  for (std::size_t i = f.coeffs.size(); i-- > 0;) {
    v = v * static_cast<std::uint64_t>(f.base) + f.coeffs[i];
  }
  return v;
}

std::vector<std::uint8_t> laurent_digits(const PolyGF& h, const PolyGF& q,
                                         const PolyGF& p, int n) {
  check_same_base(h, q);
  check_same_base(h, p);
  if (p.is_zero()) throw std::invalid_argument("laurent_digits: zero denominator");
  if (n < 0) throw std::invalid_argument("laurent_digits: n must be >= 0");
  const int dp = p.degree();
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(n), 0);
  // The polynomial part of h q / p contributes nothing to negative
  // powers, so start from the remainder.
  PolyGF rem = poly_mod(poly_mul(h, q), p);
  if (rem.is_zero() || dp == 0) return digits;
  const int lead_inv = inv_mod(p.coeffs.back(), p.base);
  for (int i = 0; i < n; ++i) {
    // rem *= x
    rem.coeffs.insert(rem.coeffs.begin(), 0);
    if (rem.degree() == dp) {
      const int d = rem.coeffs.back() * lead_inv % p.base;
      if (d != 0) rem = poly_sub(rem, scalar_mul(p, d));
      digits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(d);
    }
    if (rem.is_zero()) break;
  }
  return digits;
}

std::string poly_to_string(const PolyGF& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int d = f.degree(); d >= 0; --d) {
    const int c = f.coeffs[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (d == 0) {
      out += static_cast<char>('0' + c);
    } else {
      if (c != 1) out += static_cast<char>('0' + c);
      out += 'x';
      if (d > 1) {
        out += '^';
        out += std::to_string(d);
      }
    }
  }
  return out;
}

PolyGF poly_parse(const std::string& text, int base) {
  check_base(base);
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("poly_parse: empty input");
  if (s == "0") return PolyGF{base, {}};
  std::vector<int> coeffs;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find('+', pos);
    if (end == std::string::npos) end = s.size();
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw std::invalid_argument("poly_parse: empty term");
    std::size_t i = 0;
    int coef = -1;
    if (std::isdigit(static_cast<unsigned char>(term[i]))) {
      coef = 0;
      while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
        coef = coef * 10 + (term[i] - '0');
        if (coef >= base) throw std::invalid_argument("poly_parse: coefficient out of range");
        ++i;
      }
    }
    int deg = 0;
    if (i < term.size()) {
      if (term[i] != 'x') throw std::invalid_argument("poly_parse: expected 'x'");
      ++i;
      deg = 1;
      if (i < term.size()) {
        if (term[i] != '^') throw std::invalid_argument("poly_parse: expected '^'");
        ++i;
        if (i >= term.size() || !std::isdigit(static_cast<unsigned char>(term[i]))) {
          throw std::invalid_argument("poly_parse: missing exponent");
        }
        deg = 0;
        while (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
          deg = deg * 10 + (term[i] - '0');
          if (deg > 1000) throw std::invalid_argument("poly_parse: exponent too large");
          ++i;
        }
      }
      if (coef == -1) coef = 1;
    } else {
      if (coef == -1) throw std::invalid_argument("poly_parse: bare term");
    }
    if (i != term.size()) throw std::invalid_argument("poly_parse: trailing garbage in term");
    if (static_cast<std::size_t>(deg) >= coeffs.size()) {
      coeffs.resize(static_cast<std::size_t>(deg) + 1, 0);
    }
    coeffs[static_cast<std::size_t>(deg)] = (coeffs[static_cast<std::size_t>(deg)] + coef) % base;
    pos = end + 1;
  }
  return make_poly(base, coeffs);
}

namespace gf2 {

unsigned __int128 mul(std::uint64_t f, std::uint64_t g) noexcept {
  unsigned __int128 acc = 0;
  const unsigned __int128 gg = g;
  while (f != 0) {
    const int b = std::countr_zero(f);
    acc ^= gg << b;
    f &= f - 1;
  }
  return acc;
}

std::uint64_t mod(unsigned __int128 g, std::uint64_t p, int pdeg) noexcept {
  const unsigned __int128 pp = p;
  for (int bit = 127; bit >= pdeg; --bit) {
    if ((g >> bit) & 1) g ^= pp << (bit - pdeg);
  }
  return static_cast<std::uint64_t>(g);
}

std::uint64_t laurent_numerator(std::uint64_t g, std::uint64_t p, int pdeg,
                                int n) noexcept {
  std::uint64_t rem = g;
  std::uint64_t num = 0;
  for (int i = 0; i < n; ++i) {
    rem <<= 1;
    const std::uint64_t bit = (rem >> pdeg) & 1;
    rem ^= bit * p;
    num = (num << 1) | bit;
  }
  return num;
}

}  // namespace gf2

}  // namespace mqmc
