#pragma once

#include <string>
#include <vector>

#include "medianqmc/median.hpp"

namespace mqmc {

// A benchmark integrand bundled with its closed-form integral. The eval
// member is safe for concurrent calls.
struct TestFunction {
  std::string label;
  int dims = 1;
  double exact_integral = 0.0;
  std::string smoothness;
  Integrand eval;
};

// Bump factor (2b+1) C(2b, b) x^b (1-x)^b; vanishes at 0 and 1 and
// integrates to 1 over [0,1]. Requires beta in {1,...,8}.
double g_beta(int beta, double x);

// prod_j [1 + omega_j (g_beta(x_j) - 1)]; integral 1 for any omegas.
TestFunction make_f_per(int beta, std::vector<double> omegas);

// Non-product forms: the mean of 5 products of g_beta over blocks of
// s/5 variables. cyc uses contiguous blocks, mod uses stride-5
// interleaving. Integral 1; requires 5 | s.
TestFunction make_f_per_cyc(int beta, int s);
TestFunction make_f_per_mod(int beta, int s);

// x^3 (1/4 + log x) with the continuity value 0 at x = 0; integral 0.
TestFunction make_f_nonper1();

// x e^(x/4); integral 16 - 12 e^(1/4).
TestFunction make_f_nonper2();

// exp(-sum_j omega_j x_j), integral prod_j (1 - e^(-omega_j)) / omega_j
// with the omega_j = 0 factor equal to 1. flip reverses the coordinate
// order, leaving the integral unchanged.
TestFunction make_f_nonper3(std::vector<double> omegas, bool flip);

// Named presets used by the CLI. s <= 0 selects the preset default
// (50 for the per-* product families, 20 for cyc/mod, the intrinsic
// dimension for np1/np2/np3). Throws on unknown names and on dimension
// requests a preset cannot honor.
TestFunction make_preset(const std::string& name, int s);

std::vector<std::string> preset_names();

}  // namespace mqmc
