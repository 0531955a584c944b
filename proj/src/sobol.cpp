#include "medianqmc/sobol.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mqmc {

namespace {

std::array<std::uint32_t, 32> van_der_corput_directions() {
  std::array<std::uint32_t, 32> v{};
  for (int i = 1; i <= 32; ++i) v[static_cast<std::size_t>(i - 1)] = 1u << (32 - i);
  return v;
}

[[noreturn]] void row_error(int lineno, const std::string& what) {
  throw std::invalid_argument("direction numbers line " + std::to_string(lineno) +
                              ": " + what);
}

}  // namespace

DirectionTable load_direction_numbers(std::istream& in) {
  DirectionTable table;
  table.directions.push_back(van_der_corput_directions());

  std::string line;
  if (!std::getline(in, line)) return table;  // empty stream: dimension 1 only
  int lineno = 1;
  int expected_dim = 2;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream row(line);
    long long dim = 0, degree = 0, a = 0;
    if (!(row >> dim >> degree >> a)) row_error(lineno, "expected 'd s a m_1 ... m_s'");
    if (dim != expected_dim) {
      row_error(lineno, "dimension " + std::to_string(dim) + " out of order (expected " +
                            std::to_string(expected_dim) + ")");
    }
    if (degree < 1 || degree > 31) row_error(lineno, "degree out of range");
    if (a < 0 || (degree >= 1 && (a >> (degree - 1)) != 0)) {
      row_error(lineno, "polynomial code out of range for the degree");
    }

    std::array<std::uint32_t, 32> v{};
    for (int i = 1; i <= degree && i <= 32; ++i) {
      long long mi = 0;
      if (!(row >> mi)) row_error(lineno, "missing initial direction integer");
      if (mi % 2 == 0) row_error(lineno, "initial direction integer must be odd");
      if (mi < 1 || mi >= (1LL << i)) row_error(lineno, "direction integer out of range");
      v[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(mi) << (32 - i);
    }
    long long extra = 0;
    if (row >> extra) row_error(lineno, "trailing fields after the direction integers");

    // Standard recurrence past the initials: v_i = v_{i-s} ^ (v_{i-s} >> s)
    // ^ sum of a-selected recent terms.
    const int s = static_cast<int>(degree);
    for (int i = s + 1; i <= 32; ++i) {
      std::uint32_t vi = v[static_cast<std::size_t>(i - s - 1)] ^
                         (v[static_cast<std::size_t>(i - s - 1)] >> s);
      for (int k = 1; k <= s - 1; ++k) {
        if ((a >> (s - 1 - k)) & 1) vi ^= v[static_cast<std::size_t>(i - k - 1)];
      }
      v[static_cast<std::size_t>(i - 1)] = vi;
    }
    table.directions.push_back(v);
    ++expected_dim;
  }
  return table;
}

DirectionTable load_direction_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open direction-number file: " + path);
  return load_direction_numbers(in);
}

DigitalPointSet sobol_points(int m, int dims, const DirectionTable& table) {
  if (m < 0 || m > 32) throw std::invalid_argument("sobol_points: m must be in [0, 32]");
  if (dims < 1 || dims > table.capacity()) {
    throw std::invalid_argument("sobol_points: table supports " +
                                std::to_string(table.capacity()) + " dimensions, " +
                                std::to_string(dims) + " requested");
  }
  DigitalPointSet out;
  out.m = m;
  out.ndims = dims;
  out.precision = 32;
  const std::uint64_t count = 1ULL << m;
  out.numerators.assign(static_cast<std::size_t>(count) * static_cast<std::size_t>(dims),
                        0);
  for (std::uint64_t h = 0; h < count; ++h) {
    for (int j = 0; j < dims; ++j) {
      std::uint32_t num = 0;
      std::uint64_t bits = h;
      int i = 0;
      while (bits != 0) {
        if (bits & 1) num ^= table.directions[static_cast<std::size_t>(j)]
                                             [static_cast<std::size_t>(i)];
        bits >>= 1;
        ++i;
      }
      out.numerators[static_cast<std::size_t>(h) * static_cast<std::size_t>(dims) +
                     static_cast<std::size_t>(j)] = num;
    }
  }
  return out;
}

DigitalPointSet interlace(const DigitalPointSet& points, int d) {
  if (d < 1) throw std::invalid_argument("interlace: d must be >= 1");
  if (points.ndims % d != 0) {
    throw std::invalid_argument("interlace: dimension count not divisible by d");
  }
  if (points.precision < points.m) {
    throw std::invalid_argument("interlace: input precision below m");
  }
  DigitalPointSet out;
  out.m = points.m;
  out.ndims = points.ndims / d;
  out.precision = std::min(d * points.m, 52);
  out.numerators.assign(
      static_cast<std::size_t>(points.count()) * static_cast<std::size_t>(out.ndims), 0);
  for (std::uint64_t h = 0; h < points.count(); ++h) {
    for (int j = 0; j < out.ndims; ++j) {
      std::uint64_t num = 0;
      for (int a = 1; a <= points.m; ++a) {
        for (int l = 1; l <= d; ++l) {
          const int pos = (a - 1) * d + l;
          if (pos > out.precision) break;
          const std::uint64_t digit =
              (points.numerator(h, j * d + (l - 1)) >> (points.precision - a)) & 1;
          num |= digit << (out.precision - pos);
        }
      }
      out.numerators[static_cast<std::size_t>(h) * static_cast<std::size_t>(out.ndims) +
                     static_cast<std::size_t>(j)] = num;
    }
  }
  return out;
}

}  // namespace mqmc
