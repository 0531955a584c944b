#include "medianqmc/polylattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "medianqmc/numtheory.hpp"

namespace mqmc {

namespace {

// b^e with a cap guard; throws if the value would exceed 2^52 (the
// largest power keeping numerators exact in binary64).
std::uint64_t pow_checked(int base, int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) {
    v *= static_cast<std::uint64_t>(base);
    if (v > (1ULL << 52)) {
      throw std::invalid_argument("HoplRule: b^n exceeds the exact-double range 2^52");
    }
  }
  return v;
}

}  // namespace

void validate(const HoplRule& rule) {
  if (rule.base != 2 && rule.base != 3 && rule.base != 5 && rule.base != 7) {
    throw std::invalid_argument("HoplRule: base must be a prime in {2, 3, 5, 7}");
  }
  if (rule.m < 1) throw std::invalid_argument("HoplRule: m must be >= 1");
  if (rule.n < rule.m) throw std::invalid_argument("HoplRule: n must be >= m");
  pow_checked(rule.base, rule.n);
  if (rule.modulus.base != rule.base || rule.modulus.degree() != rule.n) {
    throw std::invalid_argument("HoplRule: modulus degree must equal n");
  }
  if (!is_irreducible(rule.modulus)) {
    throw std::invalid_argument("HoplRule: modulus must be irreducible");
  }
  if (rule.q.empty()) throw std::invalid_argument("HoplRule: empty generating vector");
  for (const PolyGF& qj : rule.q) {
    if (qj.base != rule.base) throw std::invalid_argument("HoplRule: component base mismatch");
    if (qj.is_zero() || qj.degree() >= rule.n) {
      throw std::invalid_argument("HoplRule: components must be nonzero with deg < n");
    }
  }
}

std::vector<PolyGF> sample_generating_vector_poly(int n, int s, int base, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_generating_vector_poly: n must be >= 1");
  if (s < 1) throw std::invalid_argument("sample_generating_vector_poly: s must be >= 1");
  const std::uint64_t bn = pow_checked(base, n);
  std::vector<PolyGF> q;
  q.reserve(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    q.push_back(int_to_poly(1 + rng.below(bn - 1), base));
  }
  return q;
}

HoplPointSet::HoplPointSet(HoplRule rule) : rule_(std::move(rule)) {
  validate(rule_);
  npoints_ = pow_checked(rule_.base, rule_.m);
  denom_ = pow_checked(rule_.base, rule_.n);
  if (rule_.base == 2) {
    packed_ = true;
    pbits_ = poly_to_int(rule_.modulus);
    qbits_.reserve(rule_.q.size());
    for (const PolyGF& qj : rule_.q) qbits_.push_back(poly_to_int(qj));
  }
}

std::uint64_t HoplPointSet::numerator(std::uint64_t h, int j) const {
  if (packed_) {
    const std::uint64_t rem =
        gf2::mod(gf2::mul(h, qbits_[static_cast<std::size_t>(j)]), pbits_, rule_.n);
    return gf2::laurent_numerator(rem, pbits_, rule_.n, rule_.n);
  }
  return ref::hopl_numerator_generic(rule_, h, j);
}

namespace ref {

std::uint64_t hopl_numerator_generic(const HoplRule& rule, std::uint64_t h, int j) {
  const PolyGF hp = int_to_poly(h, rule.base);
  const auto digits =
      laurent_digits(hp, rule.q[static_cast<std::size_t>(j)], rule.modulus, rule.n);
  std::uint64_t num = 0;
  for (std::uint8_t d : digits) {
    num = num * static_cast<std::uint64_t>(rule.base) + d;
  }
  return num;
}

}  // namespace ref

bool is_dual_net(std::span<const std::uint64_t> k, const HoplRule& rule) {
  if (k.size() != rule.q.size()) throw std::invalid_argument("is_dual_net: dimension mismatch");
  PolyGF w{rule.base, {}};
  for (std::size_t j = 0; j < k.size(); ++j) {
    const PolyGF kj = int_to_poly_trunc(k[j], rule.base, rule.n);
    w = poly_add(w, poly_mul(kj, rule.q[j]));
  }
  w = poly_mod(w, rule.modulus);
  return w.degree() < rule.n - rule.m;
}

std::complex<double> walsh(std::uint64_t k, std::uint64_t numerator, int ndigits, int base) {
  // Pair kappa_{i-1} (low digit of k first) with xi_i (high digit of the
  // numerator first).
  int e = 0;
  std::uint64_t kk = k;
  for (int i = 1; i <= ndigits && kk != 0; ++i) {
    const int kappa = static_cast<int>(kk % static_cast<std::uint64_t>(base));
    kk /= static_cast<std::uint64_t>(base);
    // xi_i = digit at power b^(ndigits - i).
    std::uint64_t num = numerator;
    for (int t = 0; t < ndigits - i; ++t) num /= static_cast<std::uint64_t>(base);
    const int xi = static_cast<int>(num % static_cast<std::uint64_t>(base));
    e = (e + kappa * xi) % base;
  }
  if (base == 2) return {e == 0 ? 1.0 : -1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) /
                       static_cast<double>(base);
  return {std::cos(angle), std::sin(angle)};
}

std::complex<double> walsh_character_sum(std::span<const std::uint64_t> k,
                                         const HoplRule& rule) {
  if (k.size() != rule.q.size()) {
    throw std::invalid_argument("walsh_character_sum: dimension mismatch");
  }
  const HoplPointSet pts{rule};
  std::complex<double> acc{0.0, 0.0};
  for (std::uint64_t h = 0; h < pts.count(); ++h) {
    std::complex<double> w{1.0, 0.0};
    for (int j = 0; j < pts.dims(); ++j) {
      w *= walsh(k[static_cast<std::size_t>(j)], pts.numerator(h, j), rule.n, rule.base);
    }
    acc += w;
  }
  return acc / static_cast<double>(pts.count());
}

std::uint64_t mu_alpha(std::uint64_t k, int alpha, int base) {
  if (k == 0) throw std::invalid_argument("mu_alpha: k must be >= 1");
  if (alpha < 1) throw std::invalid_argument("mu_alpha: alpha must be >= 1");
  // Digit positions a_i (1-based) of the nonzero digits, ascending as we
  // strip from the low end; the alpha largest are the last alpha found.
  std::vector<int> positions;
  int pos = 1;
  while (k != 0) {
    if (k % static_cast<std::uint64_t>(base) != 0) positions.push_back(pos);
    k /= static_cast<std::uint64_t>(base);
    ++pos;
  }
  std::uint64_t sum = 0;
  const int take = std::min<int>(alpha, static_cast<int>(positions.size()));
  for (int i = 0; i < take; ++i) {
    sum += static_cast<std::uint64_t>(positions[positions.size() - 1 - static_cast<std::size_t>(i)]);
  }
  return sum;
}

double c_alpha(int alpha, int base) {
  if (alpha < 2) throw std::invalid_argument("c_alpha: alpha must be >= 2");
  if (base < 2) throw std::invalid_argument("c_alpha: base must be >= 2");
  const double b = static_cast<double>(base);
  const double front = std::pow(1.0 + 1.0 / b + 1.0 / (b * (b + 1.0)),
                                static_cast<double>(alpha - 2));
  const double mid = 3.0 + 2.0 / b + (2.0 * b + 1.0) / (b - 1.0);
  const double sinb = 2.0 * std::sin(std::numbers::pi / b);
  double tailmax = 2.0 / std::pow(sinb, static_cast<double>(alpha));
  for (int tau = 1; tau < alpha; ++tau) {
    tailmax = std::max(tailmax, 1.0 / std::pow(sinb, static_cast<double>(tau)));
  }
  return front * mid * tailmax;
}

double a_alpha_lambda(int alpha, double lambda, int base) {
  if (alpha < 2) throw std::invalid_argument("a_alpha_lambda: alpha must be >= 2");
  if (!(lambda > 1.0 / static_cast<double>(alpha) && lambda <= 1.0)) {
    throw std::invalid_argument("a_alpha_lambda: lambda must be in (1/alpha, 1]");
  }
  const double b = static_cast<double>(base);
  double sum = 0.0;
  double prod = 1.0;
  for (int tau = 1; tau <= alpha - 1; ++tau) {
    prod *= (b - 1.0) / (std::pow(b, lambda * tau) - 1.0);
    sum += prod;
  }
  prod *= (b - 1.0) / (std::pow(b, lambda * alpha) - 1.0);
  const double bla = std::pow(b, lambda * static_cast<double>(alpha));
  sum += (bla - 1.0) / (bla - b) * prod;
  return sum;
}

double error_bound_sobolev_at(int base, int m, int n, int s, int alpha,
                              const ProductWeights& weights, double eta, double lambda) {
  if (m < 1 || n < m) throw std::invalid_argument("error_bound_sobolev: need 1 <= m <= n");
  if (s < 1) throw std::invalid_argument("error_bound_sobolev: s must be >= 1");
  if (alpha < 2) throw std::invalid_argument("error_bound_sobolev: alpha must be >= 2");
  weights.validate(s);
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("error_bound_sobolev: eta must be in (0, 1]");
  }
  const double ca = c_alpha(alpha, base);
  const double aal = a_alpha_lambda(alpha, lambda, base);
  double prod = 1.0;
  for (int j = 0; j < s; ++j) {
    const double gj = weights.gammas[static_cast<std::size_t>(j)];
    prod *= 1.0 + std::pow(gj, lambda) * std::pow(ca, lambda) * aal;
  }
  const double expo = std::min(static_cast<double>(m),
                               lambda * static_cast<double>(n));
  const double denom = std::pow(static_cast<double>(base), expo) - 1.0;
  return std::pow(2.0 * (prod - 1.0) / (eta * denom), 1.0 / lambda);
}

double error_bound_sobolev(int base, int m, int n, int s, int alpha,
                           const ProductWeights& weights, double eta) {
  const double lo = 1.0 / static_cast<double>(alpha) + 1e-4;
  const double hi = 1.0 - 1e-4;
  const auto logf = [&](double lam) {
    return std::log(error_bound_sobolev_at(base, m, n, s, alpha, weights, eta, lam));
  };
  constexpr int kGrid = 64;
  int besti = 0;
  double bestv = logf(lo);
  for (int i = 1; i < kGrid; ++i) {
    const double lam = lo + (hi - lo) * static_cast<double>(i) / (kGrid - 1);
    const double v = logf(lam);
    if (v < bestv) {
      bestv = v;
      besti = i;
    }
  }
  const double step = (hi - lo) / (kGrid - 1);
  double a = std::max(lo, lo + step * (besti - 1));
  double b = std::min(hi, lo + step * (besti + 1));
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = logf(c);
  double fd = logf(d);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = logf(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = logf(d);
    }
  }
  return std::exp(std::min(bestv, std::min(fc, fd)));
}

std::string format_hopl_rule(const HoplRule& rule) {
  std::string out = std::to_string(rule.base);
  out += ';';
  out += std::to_string(rule.m);
  out += ';';
  out += std::to_string(rule.n);
  out += ";p=";
  out += poly_to_string(rule.modulus);
  out += ";q=";
  for (std::size_t j = 0; j < rule.q.size(); ++j) {
    if (j > 0) out += ',';
    out += poly_to_string(rule.q[j]);
  }
  return out;
}

HoplRule parse_hopl_rule(const std::string& text) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    fields.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  if (fields.size() != 5) {
    throw std::invalid_argument("parse_hopl_rule: expected 'b;m;n;p=...;q=...'");
  }
  HoplRule rule;
  try {
    rule.base = std::stoi(fields[0]);
    rule.m = std::stoi(fields[1]);
    rule.n = std::stoi(fields[2]);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_hopl_rule: bad integer field");
  }
  if (fields[3].rfind("p=", 0) != 0 || fields[4].rfind("q=", 0) != 0) {
    throw std::invalid_argument("parse_hopl_rule: expected p= and q= fields");
  }
  rule.modulus = poly_parse(fields[3].substr(2), rule.base);
  const std::string qs = fields[4].substr(2);
  pos = 0;
  while (pos <= qs.size()) {
    std::size_t end = qs.find(',', pos);
    if (end == std::string::npos) end = qs.size();
    rule.q.push_back(poly_parse(qs.substr(pos, end - pos), rule.base));
    pos = end + 1;
  }
  validate(rule);
  return rule;
}

}  // namespace mqmc
