#pragma once

// Seeded generators and brute-force oracles shared by the test suites.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "knotcone/cfk.hpp"
#include "knotcone/f2.hpp"
#include "knotcone/knots.hpp"

namespace testsupport {

using knotcone::f2::BitVector;
using knotcone::f2::Matrix;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                            unsigned density_percent = 50) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng() % 100 < density_percent) m.set(r, c);
    }
  }
  return m;
}

// Random matrix of rank at most `r`, built as a product of thin factors.
inline Matrix random_low_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                              std::size_t r) {
  return random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
}

inline std::uint64_t to_mask(const BitVector& v) {
  std::uint64_t m = 0;
  for (std::size_t i : v.ones()) m |= std::uint64_t{1} << i;
  return m;
}

inline BitVector from_mask(std::size_t n, std::uint64_t mask) {
  BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((mask >> i) & 1U) v.set(i);
  }
  return v;
}

// Images of all 2^cols inputs, as bitmasks. Needs cols <= 16, rows <= 64.
inline std::set<std::uint64_t> column_span(const Matrix& m) {
  std::set<std::uint64_t> span;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.cols()); ++x) {
    span.insert(to_mask(m.apply(from_mask(m.cols(), x))));
  }
  return span;
}

inline std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

inline std::size_t brute_rank(const Matrix& m) { return log2_exact(column_span(m).size()); }

inline std::size_t brute_kernel_dim(const Matrix& m) {
  std::size_t count = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.cols()); ++x) {
    if (m.apply(from_mask(m.cols(), x)).none()) ++count;
  }
  return log2_exact(count);
}

// dim H = log2(#cycles / #boundaries), by enumeration.
inline std::size_t brute_homology(const Matrix& d) {
  std::size_t cycles = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << d.cols()); ++x) {
    if (d.apply(from_mask(d.cols(), x)).none()) ++cycles;
  }
  return log2_exact(cycles) - brute_rank(d);
}

inline std::size_t brute_intersection(const Matrix& a, const Matrix& b) {
  const auto sa = column_span(a);
  const auto sb = column_span(b);
  std::size_t common = 0;
  for (auto v : sa) common += sb.count(v);
  return log2_exact(common);
}

inline knotcone::cfk::CfkComplex random_knot(std::uint64_t seed) {
  knotcone::knots::RandomSpec spec;
  spec.seed = seed;
  spec.dots = 1 + static_cast<int>(seed % 3);
  spec.boxes = static_cast<int>((seed / 3) % 4);
  spec.max_side = 2;
  spec.max_offset = 2;
  return knotcone::knots::random_complex(spec);
}

// Random complex with exactly one dot, so b = 1.
inline knotcone::cfk::CfkComplex random_b1_knot(std::uint64_t seed) {
  knotcone::knots::RandomSpec spec;
  spec.seed = seed;
  spec.dots = 1;
  spec.boxes = 1 + static_cast<int>(seed % 3);
  return knotcone::knots::random_complex(spec);
}

inline std::vector<knotcone::cfk::CfkComplex> builtins() {
  std::vector<knotcone::cfk::CfkComplex> out;
  for (const auto& n : knotcone::knots::builtin_names()) out.push_back(knotcone::knots::builtin(n));
  return out;
}

}  // namespace testsupport
