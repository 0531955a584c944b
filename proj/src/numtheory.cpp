#include "medianqmc/numtheory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mqmc {

std::uint64_t euler_totient(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_totient: n must be positive");
  std::uint64_t result = n;
  std::uint64_t m = n;
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Frac make(std::int64_t n, std::int64_t d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return Frac{n, d};
  }
  Frac operator+(const Frac& o) const {
    return make(num * o.den + o.num * den, den * o.den);
  }
  Frac operator*(const Frac& o) const { return make(num * o.num, den * o.den); }
};

// Bernoulli numbers B_0..B_12 (B_1 = -1/2 convention; odd ones beyond
// B_1 vanish).
const Frac kBernoulliNumber[13] = {
    {1, 1},  {-1, 2}, {1, 6},    {0, 1}, {-1, 30}, {0, 1}, {1, 42},
    {0, 1},  {-1, 30}, {0, 1},   {5, 66}, {0, 1},  {-691, 2730}};

std::uint64_t binom_small(unsigned n, unsigned k) {
  unsigned __int128 r = 1;
  if (k > n - k) k = n - k;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

const std::vector<std::pair<std::int64_t, std::int64_t>>& bernoulli_poly_coeffs(int degree) {
  if (degree < 2 || degree > 12 || degree % 2 != 0) {
    throw std::invalid_argument("bernoulli_poly_coeffs: degree must be even in [2, 12]");
  }
  // B_d(x) = sum_{k=0}^{d} C(d,k) B_k x^{d-k}.
  static const auto* table = [] {
    auto* t = new std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>>(13);
    for (int d = 2; d <= 12; d += 2) {
      auto& coeffs = (*t)[static_cast<std::size_t>(d)];
      coeffs.reserve(static_cast<std::size_t>(d) + 1);
      for (int k = 0; k <= d; ++k) {
        const Frac c = Frac::make(
            static_cast<std::int64_t>(binom_small(static_cast<unsigned>(d),
                                                  static_cast<unsigned>(k))),
            1);
        const Frac v = c * kBernoulliNumber[k];
        coeffs.emplace_back(v.num, v.den);
      }
    }
    return t;
  }();
  return (*table)[static_cast<std::size_t>(degree)];
}

double bernoulli_poly(int degree, double x) {
  const auto& coeffs = bernoulli_poly_coeffs(degree);
  double acc = 0.0;
  for (const auto& [num, den] : coeffs) {
    acc = acc * x + static_cast<double>(num) / static_cast<double>(den);
  }
  return acc;
}

double riemann_zeta(double t) {
  if (!(t >= 1.0002)) {
    throw std::domain_error("riemann_zeta: requires t >= 1.0002, got " + std::to_string(t));
  }
  constexpr int kCutoff = 10000;
  // Direct terms, summed small-to-large.
  double sum = 0.0;
  for (int k = kCutoff - 1; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k), -t);
  }
  // Euler-Maclaurin tail starting at M = kCutoff.
  const double M = static_cast<double>(kCutoff);
  const double mt = std::pow(M, -t);
  double tail = M * mt / (t - 1.0) + 0.5 * mt;
  tail += t * mt / M / 12.0;
  tail -= t * (t + 1.0) * (t + 2.0) * mt / (M * M * M) / 720.0;
  tail += t * (t + 1.0) * (t + 2.0) * (t + 3.0) * (t + 4.0) * mt / (M * M * M * M * M) / 30240.0;
  return sum + tail;
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) throw std::invalid_argument("binomial: k > n");
  if (n > 64) throw std::invalid_argument("binomial: n > 64 overflows uint64");
  return binom_small(n, k);
}

}  // namespace mqmc
