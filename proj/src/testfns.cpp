#include "medianqmc/testfns.hpp"

#include <cmath>

#include "medianqmc/numtheory.hpp"

namespace mqmc {

namespace {

double g_scale(int beta) {
  if (beta < 1 || beta > 8) throw std::invalid_argument("g_beta: beta must be in 1..8");
  return static_cast<double>(2 * beta + 1) *
         static_cast<double>(binomial(2 * beta, beta));
}

double bump_pow(int beta, double x) {
  const double t = x * (1.0 - x);
  double p = t;
  for (int i = 1; i < beta; ++i) p *= t;
  return p;
}

}  // namespace

double g_beta(int beta, double x) { return g_scale(beta) * bump_pow(beta, x); }

TestFunction make_f_per(int beta, std::vector<double> omegas) {
  const double scale = g_scale(beta);
  TestFunction f;
  f.label = "f_per(beta=" + std::to_string(beta) + ")";
  f.dims = static_cast<int>(omegas.size());
  f.exact_integral = 1.0;
  f.smoothness = "periodic, Korobov smoothness " + std::to_string(beta);
  f.eval = [beta, scale, omegas = std::move(omegas)](const std::vector<double>& x) {
    double v = 1.0;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
      v *= 1.0 + omegas[j] * (scale * bump_pow(beta, x[j]) - 1.0);
    }
    return v;
  };
  return f;
}

namespace {

// Shared core of the cyc/mod pair: variable index of block member j in
// block l (both zero-based) under the two orderings.
TestFunction make_block_mean(int beta, int s, bool contiguous, const char* label) {
  const double scale = g_scale(beta);
  if (s < 5 || s % 5 != 0) {
    throw std::invalid_argument("block-form integrands need a dimension divisible by 5");
  }
  const int blocklen = s / 5;
  TestFunction f;
  f.label = label;
  f.dims = s;
  f.exact_integral = 1.0;
  f.smoothness = "periodic non-product, Korobov smoothness " + std::to_string(beta);
  f.eval = [beta, scale, blocklen, contiguous](const std::vector<double>& x) {
    double sum = 0.0;
    for (int l = 0; l < 5; ++l) {
      double prod = 1.0;
      for (int j = 0; j < blocklen; ++j) {
        const int idx = contiguous ? j + l * blocklen : l + 5 * j;
        prod *= scale * bump_pow(beta, x[static_cast<std::size_t>(idx)]);
      }
      sum += prod;
    }
    return sum / 5.0;
  };
  return f;
}

}  // namespace

TestFunction make_f_per_cyc(int beta, int s) {
  return make_block_mean(beta, s, true, "f_per_cyc");
}

TestFunction make_f_per_mod(int beta, int s) {
  return make_block_mean(beta, s, false, "f_per_mod");
}

TestFunction make_f_nonper1() {
  TestFunction f;
  f.label = "f_nonper1";
  f.dims = 1;
  f.exact_integral = 0.0;
  f.smoothness = "Sobolev smoothness 3, not 4";
  f.eval = [](const std::vector<double>& x) {
    // x^3 log x -> 0 as x -> 0; the limit value keeps the origin usable.
    if (x[0] == 0.0) return 0.0;
    return x[0] * x[0] * x[0] * (0.25 + std::log(x[0]));
  };
  return f;
}

TestFunction make_f_nonper2() {
  TestFunction f;
  f.label = "f_nonper2";
  f.dims = 1;
  f.exact_integral = 16.0 - 12.0 * std::exp(0.25);
  f.smoothness = "infinitely differentiable";
  f.eval = [](const std::vector<double>& x) { return x[0] * std::exp(0.25 * x[0]); };
  return f;
}

TestFunction make_f_nonper3(std::vector<double> omegas, bool flip) {
  TestFunction f;
  f.label = flip ? "f_nonper3_flip" : "f_nonper3";
  f.dims = static_cast<int>(omegas.size());
  f.exact_integral = 1.0;
  for (double w : omegas) {
    f.exact_integral *= (w == 0.0) ? 1.0 : (1.0 - std::exp(-w)) / w;
  }
  f.smoothness = "infinitely differentiable";
  f.eval = [omegas = std::move(omegas), flip](const std::vector<double>& x) {
    double e = 0.0;
    const std::size_t s = omegas.size();
    for (std::size_t j = 0; j < s; ++j) {
      e += omegas[j] * (flip ? x[s - 1 - j] : x[j]);
    }
    return std::exp(-e);
  };
  return f;
}

namespace {

std::vector<double> power_decay(int s, int expo, bool increasing) {
  std::vector<double> omegas(static_cast<std::size_t>(s));
  for (int j = 1; j <= s; ++j) {
    const int base = increasing ? s - j + 1 : j;
    omegas[static_cast<std::size_t>(j - 1)] =
        1.0 / std::pow(static_cast<double>(base), static_cast<double>(expo));
  }
  return omegas;
}

int pick_dims(int requested, int fallback) { return requested > 0 ? requested : fallback; }

}  // namespace

TestFunction make_preset(const std::string& name, int s) {
  if (name == "per-b2-dec") return make_f_per(2, power_decay(pick_dims(s, 50), 3, false));
  if (name == "per-b2-inc") return make_f_per(2, power_decay(pick_dims(s, 50), 3, true));
  if (name == "per-b5-dec") return make_f_per(5, power_decay(pick_dims(s, 50), 6, false));
  if (name == "per-b5-inc") return make_f_per(5, power_decay(pick_dims(s, 50), 6, true));
  if (name == "per-cyc-b5") return make_f_per_cyc(5, pick_dims(s, 20));
  if (name == "per-mod-b5") return make_f_per_mod(5, pick_dims(s, 20));
  if (name == "np1") {
    if (s > 1) throw std::invalid_argument("preset np1 is one-dimensional");
    return make_f_nonper1();
  }
  if (name == "np2") {
    if (s > 1) throw std::invalid_argument("preset np2 is one-dimensional");
    return make_f_nonper2();
  }
  if (name == "np3" || name == "np3-flip") {
    const int dims = pick_dims(s, 10);
    std::vector<double> omegas(static_cast<std::size_t>(dims));
    for (int j = 1; j <= dims; ++j) {
      const double jd = static_cast<double>(j);
      omegas[static_cast<std::size_t>(j - 1)] = 1.0 / (4.0 * jd * jd * jd * jd);
    }
    return make_f_nonper3(std::move(omegas), name == "np3-flip");
  }
  throw std::invalid_argument("unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"per-b2-dec", "per-b2-inc", "per-b5-dec", "per-b5-inc",
          "per-cyc-b5", "per-mod-b5", "np1",        "np2",
          "np3",        "np3-flip"};
}

}  // namespace mqmc
