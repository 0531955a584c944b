#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mqmc {

// Largest number of OpenMP threads the process will use, after applying
// the MEDIANQMC_THREADS cap. Returns 1 in builds without OpenMP.
int max_threads() noexcept;

// Applies MEDIANQMC_THREADS (if set and positive) as the OpenMP thread
// count. Called once at startup by the executables.
void apply_thread_cap() noexcept;

inline constexpr std::uint64_t kSumBlock = 4096;

namespace detail {
struct Kahan {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) noexcept {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};
}  // namespace detail

// Compensated sum of f(0), ..., f(count-1) over fixed 4096-element
// blocks; block partials are combined serially in index order. The block
// boundaries do not depend on the thread count, so the result is
// bit-identical for any number of threads. All reductions that feed
// CSV output go through this.
template <class F>
double block_sum(std::uint64_t count, F&& f) {
  if (count == 0) return 0.0;
  const std::uint64_t nblocks = (count + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t bi = 0; bi < static_cast<std::int64_t>(nblocks); ++bi) {
    const std::uint64_t lo = static_cast<std::uint64_t>(bi) * kSumBlock;
    const std::uint64_t hi = std::min(count, lo + kSumBlock);
    detail::Kahan acc;
    for (std::uint64_t i = lo; i < hi; ++i) acc.add(f(i));
    partial[static_cast<std::size_t>(bi)] = acc.sum;
  }
  detail::Kahan total;
  for (double p : partial) total.add(p);
  return total.sum;
}

namespace ref {

// Serial single-pass Kahan sum, kept as the reference implementation for
// block_sum. Tests compare the two; the benchmark times them.
template <class F>
double serial_kahan_sum(std::uint64_t count, F&& f) {
  detail::Kahan acc;
  for (std::uint64_t i = 0; i < count; ++i) acc.add(f(i));
  return acc.sum;
}

}  // namespace ref

}  // namespace mqmc
