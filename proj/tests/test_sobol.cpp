#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "medianqmc/sobol.hpp"

using namespace mqmc;

namespace {

const char* kHeader = "d       s       a       m_i\n";

DirectionTable from_text(const std::string& body) {
  std::istringstream in(std::string(kHeader) + body);
  return load_direction_numbers(in);
}

// Bundled table path, injected by the test harness.
std::string bundled_table_path() {
  const char* p = std::getenv("MEDIANQMC_SOBOL_TABLE");
  return p ? p : "data/new-joe-kuo-6.100";
}

}  // namespace

TEST_CASE("load_direction_numbers: header-only and tiny tables") {
  const auto t1 = from_text("");
  CHECK(t1.capacity() == 1);

  std::istringstream empty("");
  CHECK(load_direction_numbers(empty).capacity() == 1);

  // Dimension 2: degree 1, a = 0, m_1 = 1 -> v_1 = 1/2.
  const auto t2 = from_text("2 1 0 1\n");
  CHECK(t2.capacity() == 2);
  CHECK(t2.directions[1][0] == 0x80000000u);
  // Degree-1 recurrence: v_i = v_{i-1} ^ (v_{i-1} >> 1) gives the
  // alternating-bit pattern 11, 111, ... on the top bits.
  CHECK(t2.directions[1][1] == 0xC0000000u);

  // Blank lines are tolerated.
  const auto t3 = from_text("2 1 0 1\n\n3 2 1 1 3\n");
  CHECK(t3.capacity() == 3);
}

TEST_CASE("load_direction_numbers: malformed input is rejected") {
  CHECK_THROWS_AS(from_text("2 1 0\n"), std::invalid_argument);           // missing m_1
  CHECK_THROWS_AS(from_text("2 1 0 2\n"), std::invalid_argument);         // even m_1
  CHECK_THROWS_AS(from_text("3 1 0 1\n"), std::invalid_argument);         // skips dim 2
  CHECK_THROWS_AS(from_text("2 1 0 1\n2 1 0 1\n"), std::invalid_argument);  // duplicate
  CHECK_THROWS_AS(from_text("2 0 0 1\n"), std::invalid_argument);         // degree 0
  CHECK_THROWS_AS(from_text("2 1 1 1\n"), std::invalid_argument);         // a too large
  CHECK_THROWS_AS(from_text("2 2 0 1 5\n"), std::invalid_argument);       // m_2 >= 4
  CHECK_THROWS_AS(from_text("2 1 0 1 9\n"), std::invalid_argument);       // trailing field
  CHECK_THROWS_AS(from_text("x 1 0 1\n"), std::invalid_argument);         // non-numeric
}

TEST_CASE("bundled table loads with 100 dimensions") {
  const auto table = load_direction_table_file(bundled_table_path());
  CHECK(table.capacity() == 100);
  // Every dimension's first direction number is 1/2 (m_1 odd < 2).
  for (int j = 0; j < table.capacity(); ++j) {
    CHECK(table.directions[static_cast<std::size_t>(j)][0] == 0x80000000u);
  }
  CHECK_THROWS_AS(load_direction_table_file("/nonexistent/table.txt"),
                  std::invalid_argument);
}

TEST_CASE("sobol_points: origin, midpoint, van der Corput") {
  const auto table = load_direction_table_file(bundled_table_path());
  const auto pts = sobol_points(4, 10, table);
  CHECK(pts.count() == 16);
  CHECK(pts.dims() == 10);
  CHECK(pts.precision == 32);

  for (int j = 0; j < 10; ++j) {
    CHECK(pts.numerator(0, j) == 0);
    CHECK(pts.coord(1, j) == 0.5);
  }

  // Dimension 1 is the binary radical inverse of the index.
  for (std::uint64_t h = 0; h < 16; ++h) {
    std::uint64_t want = 0;
    for (int i = 0; i < 32; ++i) {
      if ((h >> i) & 1) want |= 1ULL << (31 - i);
    }
    CHECK(pts.numerator(h, 0) == want);
  }

  CHECK_THROWS_AS(sobol_points(4, 101, table), std::invalid_argument);
  CHECK_THROWS_AS(sobol_points(33, 1, table), std::invalid_argument);
  CHECK_THROWS_AS(sobol_points(-1, 1, table), std::invalid_argument);
}

TEST_CASE("one-dimensional projections are (0,m,1)-nets") {
  const auto table = load_direction_table_file(bundled_table_path());
  for (int m = 1; m <= 10; ++m) {
    const auto pts = sobol_points(m, 8, table);
    for (int j = 0; j < 8; ++j) {
      std::set<std::uint64_t> cells;
      for (std::uint64_t h = 0; h < pts.count(); ++h) {
        cells.insert(pts.numerator(h, j) >> (32 - m));
      }
      // Exactly one point in every dyadic interval of length 2^-m.
      CHECK(cells.size() == pts.count());
    }
  }
}

TEST_CASE("dims (1,2) satisfy the elementary-interval property") {
  const auto table = load_direction_table_file(bundled_table_path());
  for (int m = 1; m <= 8; ++m) {
    const auto pts = sobol_points(m, 2, table);
    for (int m1 = 0; m1 <= m; ++m1) {
      const int m2 = m - m1;
      std::map<std::pair<std::uint64_t, std::uint64_t>, int> boxes;
      for (std::uint64_t h = 0; h < pts.count(); ++h) {
        boxes[{pts.numerator(h, 0) >> (32 - m1), pts.numerator(h, 1) >> (32 - m2)}]++;
      }
      CHECK(boxes.size() == pts.count());
      for (const auto& [box, n] : boxes) CHECK(n == 1);
    }
  }
}

TEST_CASE("interlace: worked digit weave") {
  // m=3, two input coordinates with 4 carried digits; output weaves
  // xi_1 eta_1 xi_2 eta_2 xi_3 eta_3 (the fourth digit is beyond m).
  DigitalPointSet in;
  in.m = 3;
  in.ndims = 2;
  in.precision = 4;
  in.numerators = {
      0b1010, 0b0110,  // point 0: xi = 101(0), eta = 011(0)
      0b1111, 0b0001,  // point 1
      0b0000, 0b1000,  // point 2
      0b0011, 0b1100,  // point 3
      0b0100, 0b0010,  // point 4
      0b1001, 0b0101,  // point 5
      0b1110, 0b1011,  // point 6
      0b0111, 0b1101,  // point 7
  };
  const auto out = interlace(in, 2);
  CHECK(out.count() == 8);
  CHECK(out.dims() == 1);
  CHECK(out.precision == 6);
  // xi = 1,0,1 and eta = 0,1,1 weave to 1 0 0 1 1 1.
  CHECK(out.numerator(0, 0) == 0b100111);
  CHECK(out.numerator(1, 0) == 0b101010);  // xi 1,1,1; eta 0,0,0
  CHECK(out.numerator(2, 0) == 0b010000);  // xi 0,0,0; eta 1,0,0
}

TEST_CASE("interlace: d=1 truncates to the leading m digits") {
  const auto table = load_direction_table_file(bundled_table_path());
  const auto pts = sobol_points(5, 3, table);
  const auto same = interlace(pts, 1);
  CHECK(same.count() == pts.count());
  CHECK(same.dims() == 3);
  CHECK(same.precision == 5);
  for (std::uint64_t h = 0; h < pts.count(); ++h) {
    for (int j = 0; j < 3; ++j) {
      CHECK(same.numerator(h, j) == pts.numerator(h, j) >> 27);
    }
  }
}

TEST_CASE("interlace: validation and digit injectivity") {
  const auto table = load_direction_table_file(bundled_table_path());
  const auto pts = sobol_points(4, 6, table);
  CHECK_THROWS_AS(interlace(pts, 4), std::invalid_argument);  // 6 % 4 != 0
  CHECK_THROWS_AS(interlace(pts, 0), std::invalid_argument);

  DigitalPointSet shallow;
  shallow.m = 3;
  shallow.ndims = 2;
  shallow.precision = 2;  // below m
  shallow.numerators.assign(16, 0);
  CHECK_THROWS_AS(interlace(shallow, 2), std::invalid_argument);

  // Flipping one input digit (within the first m) flips exactly one
  // output digit, at position (a-1)d + l; so every output digit is
  // sourced from exactly one input digit.
  std::mt19937_64 gen(0x6b21c94d8e5a3f07ULL);
  DigitalPointSet base;
  base.m = 4;
  base.ndims = 6;
  base.precision = 32;
  base.numerators.assign(16 * 6, 0);
  for (auto& v : base.numerators) v = gen() & 0xFFFFFFFFULL;
  const auto out0 = interlace(base, 3);
  REQUIRE(out0.precision == 12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t h = gen() % 16;
    const int col = static_cast<int>(gen() % 6);
    const int a = 1 + static_cast<int>(gen() % 4);  // digit index within m
    auto mod = base;
    mod.numerators[static_cast<std::size_t>(h) * 6 + static_cast<std::size_t>(col)] ^=
        1ULL << (32 - a);
    const auto out1 = interlace(mod, 3);
    int flipped = 0;
    std::uint64_t delta = 0;
    int where = -1;
    for (std::uint64_t hh = 0; hh < 16; ++hh) {
      for (int j = 0; j < 2; ++j) {
        const std::uint64_t d = out0.numerator(hh, j) ^ out1.numerator(hh, j);
        if (d != 0) {
          ++flipped;
          delta = d;
          where = j;
        }
      }
    }
    CHECK(flipped == 1);
    CHECK(where == col / 3);
    const int l = col % 3 + 1;
    const int pos = (a - 1) * 3 + l;
    CHECK(delta == 1ULL << (12 - pos));
  }

  // Interlacing very deep nets caps the output precision at 52.
  DigitalPointSet deep;
  deep.m = 20;
  deep.ndims = 3;
  deep.precision = 32;
  deep.numerators.assign((1ULL << 20) * 3, 0x55555555ULL);
  const auto capped = interlace(deep, 3);
  CHECK(capped.precision == 52);
  CHECK(capped.count() == deep.count());
}
