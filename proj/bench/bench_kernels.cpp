// Times the OpenMP kernels against their serial reference
// implementations and reports the values produced by both, so a
// regression in either speed or agreement is visible at a glance.
// MEDIANQMC_THREADS caps the parallel side as everywhere else.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "medianqmc/korobov.hpp"
#include "medianqmc/lattice.hpp"
#include "medianqmc/median.hpp"
#include "medianqmc/parallel.hpp"
#include "medianqmc/polylattice.hpp"
#include "medianqmc/rng.hpp"
#include "medianqmc/testfns.hpp"
#include "medianqmc/weights.hpp"

using namespace mqmc;

namespace {

double time_ms(const std::function<double()>& fn, int reps, double* value) {
  *value = fn();  // warmup, and the reported value
  const auto t0 = std::chrono::steady_clock::now();
  double sink = 0.0;
  for (int i = 0; i < reps; ++i) sink += fn();
  const auto t1 = std::chrono::steady_clock::now();
  if (sink == -1.0) std::puts("");  // keep the loop observable
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, const std::function<double()>& parallel,
            const std::function<double()>& serial, int reps) {
  double pv = 0.0, sv = 0.0;
  const double pt = time_ms(parallel, reps, &pv);
  const double st = time_ms(serial, reps, &sv);
  const double rel = std::abs(pv - sv) / std::max(1.0, std::abs(sv));
  std::printf("%-28s parallel %9.3f ms   serial %9.3f ms   speedup %5.2fx   |diff| %.2e\n",
              name, pt, st, st / pt, rel);
}

}  // namespace

int main() {
  apply_thread_cap();
  std::printf("threads: %d\n", max_threads());

  {
    constexpr std::uint64_t n = 1ULL << 23;
    const auto term = [](std::uint64_t i) {
      const double x = static_cast<double>(i) * 1e-6;
      return std::sin(x) / (1.0 + x);
    };
    report(
        "block_sum 2^23 terms", [&] { return block_sum(n, term); },
        [&] { return ref::serial_kahan_sum(n, term); }, 5);
  }

  {
    Rng rng{1};
    const LatticeRule rule = sample_generating_vector(8191, 50, rng);
    const KorobovParams params{2.0, polynomial_decay_weights(50, 3)};
    report(
        "wce_closed_form N=8191 s=50", [&] { return wce_closed_form(rule, params); },
        [&] { return ref::wce_closed_form_serial(rule, params); }, 10);
  }

  {
    const ProductWeights w = polynomial_decay_weights(8, 3);
    report(
        "cbc_construct N=2039 s=8",
        [&] { return static_cast<double>(cbc_construct(2039, 8, 2, w).z.back()); },
        [&] { return static_cast<double>(ref::cbc_construct_serial(2039, 8, 2, w).z.back()); },
        3);
  }

  {
    std::vector<int> pc(53, 0);
    pc[0] = 1;
    pc[3] = 1;
    pc[52] = 1;
    HoplRule rule;
    rule.base = 2;
    rule.m = 12;
    rule.n = 52;
    rule.modulus = make_poly(2, pc);
    Rng rng{2};
    rule.q = sample_generating_vector_poly(52, 4, 2, rng);
    validate(rule);
    const HoplPointSet pts{rule};
    const auto packed = [&] {
      std::uint64_t acc = 0;
      for (std::uint64_t h = 0; h < pts.count(); ++h) {
        for (int j = 0; j < pts.dims(); ++j) acc ^= pts.numerator(h, j);
      }
      return static_cast<double>(acc);
    };
    const auto generic = [&] {
      std::uint64_t acc = 0;
      for (std::uint64_t h = 0; h < pts.count(); ++h) {
        for (int j = 0; j < pts.dims(); ++j) acc ^= ref::hopl_numerator_generic(rule, h, j);
      }
      return static_cast<double>(acc);
    };
    report("hopl numerators 2^12 x 4", packed, generic, 3);
  }

  {
    const TestFunction f = make_preset("per-b2-dec", 50);
    Rng rng{3};
    const LatticePointSet pts{sample_generating_vector(8191, 50, rng)};
    const auto run = [&] { return qmc_estimate(f.eval, pts); };
    // qmc_estimate reduces through block_sum; the serial column repeats
    // the same computation with a plain Kahan pass over the points.
    const auto serial = [&] {
      std::vector<double> x(50);
      return ref::serial_kahan_sum(pts.count(),
                                   [&](std::uint64_t h) {
                                     for (int j = 0; j < 50; ++j) x[static_cast<std::size_t>(j)] = pts.coord(h, j);
                                     return f.eval(x);
                                   }) /
             static_cast<double>(pts.count());
    };
    report("qmc_estimate N=8191 s=50", run, serial, 5);
  }

  return 0;
}
