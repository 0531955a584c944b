#pragma once

// Shared oracles for the unit tests. Everything here is implemented
// independently of the library under test: quadrature by composite
// Gauss-Legendre, binomials by the Pascal recurrence, plain least
// squares for slopes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace testutil {

// 16-point Gauss-Legendre rule on [-1, 1].
inline constexpr double kGL16[16][2] = {
    {-0.98940093499164994, 0.027152459411754037},
    {-0.9445750230732326, 0.062253523938647706},
    {-0.86563120238783176, 0.095158511682492591},
    {-0.755404408355003, 0.12462897125553403},
    {-0.61787624440264377, 0.14959598881657676},
    {-0.45801677765722737, 0.16915651939500262},
    {-0.28160355077925892, 0.18260341504492361},
    {-0.095012509837637454, 0.18945061045506859},
    {0.095012509837637454, 0.18945061045506859},
    {0.28160355077925892, 0.18260341504492361},
    {0.45801677765722737, 0.16915651939500262},
    {0.61787624440264377, 0.14959598881657676},
    {0.755404408355003, 0.12462897125553403},
    {0.86563120238783176, 0.095158511682492591},
    {0.9445750230732326, 0.062253523938647706},
    {0.98940093499164994, 0.027152459411754037},
};

inline double gl16(const std::function<double(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double acc = 0.0;
  for (const auto& nw : kGL16) acc += nw[1] * f(mid + half * nw[0]);
  return half * acc;
}

// Composite rule with uniform panels; enough for smooth integrands.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        int panels = 64) {
  double acc = 0.0;
  const double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) acc += gl16(f, a + i * h, a + (i + 1) * h);
  return acc;
}

// Graded rule on [0, 1] for integrands with a singularity in the
// derivatives at 0 (such as x^3 log x): dyadic panels [2^-j-1, 2^-j].
inline double integrate_graded0(const std::function<double(double)>& f) {
  double acc = 0.0;
  for (int j = 59; j >= 0; --j) {
    const double hi = std::ldexp(1.0, -j);
    acc += gl16(f, 0.5 * hi, hi);
  }
  return acc;
}

// Pascal-triangle binomials, exact in uint64 for n <= 64.
inline std::uint64_t pascal_binomial(unsigned n, unsigned k) {
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = i; j >= 1; --j) row[j] += row[j - 1];
  }
  return row[k];
}

// Least-squares slope of y against x (with intercept).
inline double fit_slope(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxy / sxx;
}

// Empirical quantile of an unsorted sample: sorted[ceil(q*n) - 1].
inline double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  std::size_t idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  if (idx == 0) idx = 1;
  if (idx > n) idx = n;
  return v[idx - 1];
}

}  // namespace testutil
