#include "medianqmc/lattice.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "medianqmc/korobov.hpp"
#include "medianqmc/numtheory.hpp"

namespace mqmc {

void validate(const LatticeRule& rule) {
  if (rule.n_points < 2) throw std::invalid_argument("LatticeRule: N must be >= 2");
  if (rule.n_points > (1ULL << 32)) {
    throw std::invalid_argument("LatticeRule: N must be <= 2^32");
  }
  if (rule.z.empty()) throw std::invalid_argument("LatticeRule: empty generating vector");
  for (std::uint64_t zj : rule.z) {
    if (zj < 1 || zj >= rule.n_points) {
      throw std::invalid_argument("LatticeRule: component out of [1, N-1]");
    }
    if (gcd_u64(zj, rule.n_points) != 1) {
      throw std::invalid_argument("LatticeRule: component not coprime to N");
    }
  }
}

LatticeRule sample_generating_vector(std::uint64_t N, int s, Rng& rng) {
  if (N < 2) throw std::invalid_argument("sample_generating_vector: N must be >= 2");
  if (N > (1ULL << 32)) throw std::invalid_argument("sample_generating_vector: N must be <= 2^32");
  if (s < 1) throw std::invalid_argument("sample_generating_vector: s must be >= 1");
  LatticeRule rule;
  rule.n_points = N;
  rule.z.reserve(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    for (;;) {
      const std::uint64_t v = 1 + rng.below(N - 1);
      if (gcd_u64(v, N) == 1) {
        rule.z.push_back(v);
        break;
      }
    }
  }
  return rule;
}

LatticePointSet::LatticePointSet(LatticeRule rule) : rule_(std::move(rule)) {
  validate(rule_);
}

namespace {

// k . z reduced to [0, N).
std::uint64_t dot_mod(std::span<const std::int64_t> k, const LatticeRule& rule) {
  const auto N = static_cast<__int128>(rule.n_points);
  __int128 acc = 0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    acc += static_cast<__int128>(k[j]) * static_cast<__int128>(rule.z[j]);
    acc %= N;
  }
  if (acc < 0) acc += N;
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

bool is_dual(std::span<const std::int64_t> k, const LatticeRule& rule) {
  if (k.size() != rule.z.size()) throw std::invalid_argument("is_dual: dimension mismatch");
  return dot_mod(k, rule) == 0;
}

std::complex<double> character_sum(std::span<const std::int64_t> k, const LatticeRule& rule) {
  if (k.size() != rule.z.size()) {
    throw std::invalid_argument("character_sum: dimension mismatch");
  }
  // k . x_n = n w / N mod 1, so the sum is a geometric series in the
  // unit root step; accumulate it point by point.
  const std::uint64_t w = dot_mod(k, rule);
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(w) /
                       static_cast<double>(rule.n_points);
  const std::complex<double> step = std::polar(1.0, angle);
  std::complex<double> cur{1.0, 0.0};
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t n = 0; n < rule.n_points; ++n) {
    acc += cur;
    cur *= step;
  }
  return acc / static_cast<double>(rule.n_points);
}

namespace {

LatticeRule cbc_impl(std::uint64_t N, int s, int alpha, const ProductWeights& weights,
                     bool parallel) {
  if (N < 2) throw std::invalid_argument("cbc_construct: N must be >= 2");
  if (s < 1) throw std::invalid_argument("cbc_construct: s must be >= 1");
  weights.validate(s);
  const std::vector<double> btab = korobov_kernel_table(alpha, N);

  std::vector<std::uint64_t> candidates;
  candidates.reserve(static_cast<std::size_t>(N));
  for (std::uint64_t z = 1; z < N; ++z) {
    if (gcd_u64(z, N) == 1) candidates.push_back(z);
  }

  LatticeRule rule;
  rule.n_points = N;
  rule.z.push_back(1);

  // Running product over points of the kernel factors of the chosen
  // components; z_1 = 1 indexes btab by n itself.
  std::vector<double> prod(static_cast<std::size_t>(N));
  {
    const double g2 = weights.gammas[0] * weights.gammas[0];
    for (std::uint64_t n = 0; n < N; ++n) {
      prod[static_cast<std::size_t>(n)] = 1.0 + g2 * btab[static_cast<std::size_t>(n)];
    }
  }

  std::vector<double> merit(candidates.size());
  for (int j = 1; j < s; ++j) {
    const double g2 = weights.gammas[static_cast<std::size_t>(j)] *
                      weights.gammas[static_cast<std::size_t>(j)];
    // Each candidate's merit is summed serially in point order, so the
    // values do not depend on the thread count.
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(candidates.size()); ++ci) {
      const std::uint64_t z = candidates[static_cast<std::size_t>(ci)];
      std::uint64_t idx = 0;
      double acc = 0.0;
      for (std::uint64_t n = 0; n < N; ++n) {
        acc += prod[static_cast<std::size_t>(n)] *
               (1.0 + g2 * btab[static_cast<std::size_t>(idx)]);
        idx += z;
        if (idx >= N) idx -= N;
      }
      merit[static_cast<std::size_t>(ci)] = acc;
    }
    // Ties resolve to the smallest candidate: scan in increasing order
    // with a strict comparison.
    std::size_t best = 0;
    for (std::size_t ci = 1; ci < candidates.size(); ++ci) {
      if (merit[ci] < merit[best]) best = ci;
    }
    const std::uint64_t zj = candidates[best];
    rule.z.push_back(zj);
    std::uint64_t idx = 0;
    for (std::uint64_t n = 0; n < N; ++n) {
      prod[static_cast<std::size_t>(n)] *= 1.0 + g2 * btab[static_cast<std::size_t>(idx)];
      idx += zj;
      if (idx >= N) idx -= N;
    }
  }
  return rule;
}

}  // namespace

LatticeRule cbc_construct(std::uint64_t N, int s, int alpha, const ProductWeights& weights) {
  return cbc_impl(N, s, alpha, weights, true);
}

namespace ref {
LatticeRule cbc_construct_serial(std::uint64_t N, int s, int alpha,
                                 const ProductWeights& weights) {
  return cbc_impl(N, s, alpha, weights, false);
}
}  // namespace ref

std::string format_rule(const LatticeRule& rule) {
  std::string out = std::to_string(rule.n_points);
  out += ';';
  for (std::size_t j = 0; j < rule.z.size(); ++j) {
    if (j > 0) out += ',';
    out += std::to_string(rule.z[j]);
  }
  return out;
}

namespace {

std::uint64_t parse_u64(std::string_view text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("parse_rule: bad integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

LatticeRule parse_rule(const std::string& text) {
  const std::size_t semi = text.find(';');
  if (semi == std::string::npos) {
    throw std::invalid_argument("parse_rule: expected 'N;z_1,...,z_s'");
  }
  LatticeRule rule;
  rule.n_points = parse_u64(std::string_view(text).substr(0, semi));
  std::size_t pos = semi + 1;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    rule.z.push_back(parse_u64(std::string_view(text).substr(pos, end - pos)));
    pos = end + 1;
  }
  validate(rule);
  return rule;
}

}  // namespace mqmc
