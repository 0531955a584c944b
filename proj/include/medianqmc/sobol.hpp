#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace mqmc {

// Direction numbers expanded to 32 output digits per dimension; row 0 is
// the van der Corput dimension, rows 1+ come from the loaded table.
// directions[j][i] carries v_{i+1} for dimension j+1 with the first
// digit in bit 31.
struct DirectionTable {
  std::vector<std::array<std::uint32_t, 32>> directions;

  int capacity() const noexcept { return static_cast<int>(directions.size()); }
};

// Parses the published "new-joe-kuo" text format: a header line, then
// one line per dimension "d s a m_1 ... m_s" with consecutive d from 2.
// Throws std::invalid_argument on malformed rows, duplicate or skipped
// dimensions, even m_i, or m_i >= 2^i. A header-only stream yields a
// table supporting dimension 1 only.
DirectionTable load_direction_numbers(std::istream& in);
DirectionTable load_direction_table_file(const std::string& path);

// 2^m points of dims coordinates held as integer numerators over
// 2^precision. Point 0 is the origin.
struct DigitalPointSet {
  int m = 0;
  int ndims = 0;
  int precision = 32;
  std::vector<std::uint64_t> numerators;  // row-major [point][dim]

  std::uint64_t count() const noexcept { return 1ULL << m; }
  int dims() const noexcept { return ndims; }
  std::uint64_t numerator(std::uint64_t h, int j) const {
    return numerators[static_cast<std::size_t>(h) * static_cast<std::size_t>(ndims) +
                      static_cast<std::size_t>(j)];
  }
  double coord(std::uint64_t h, int j) const {
    return static_cast<double>(numerator(h, j)) /
           static_cast<double>(1ULL << precision);
  }
};

// First 2^m Sobol' points at 32-digit precision. Indices are plain
// binary (not Gray-coded), so point order matches index order. Throws
// when dims exceeds the table capacity or m > 32.
DigitalPointSet sobol_points(int m, int dims, const DirectionTable& table);

// Digit interlacing: collapses groups of d consecutive coordinates into
// one by weaving their leading m digits, digit a of group member l
// landing at output position (a-1)*d + l. Output precision min(d*m, 52)
// keeps coordinates exact in binary64. Throws when the input dimension
// count is not divisible by d or the input precision is below m.
DigitalPointSet interlace(const DigitalPointSet& points, int d);

}  // namespace mqmc
