#include "knotcone/f2.hpp"

#include <omp.h>

namespace knotcone::f2 {

namespace {

// Below this many rows the fork/join cost dominates the XOR sweep.
constexpr std::size_t kParallelRows = 512;

}  // namespace

Echelon row_reduce(Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t r = next; r < rows; ++r) {
      if (m.get(r, c)) {
        found = r;
        break;
      }
    }
    if (found == rows) continue;
    if (found != next) std::swap(m.row(found), m.row(next));
    const BitVector pivot_row = m.row(next);
    const auto n = static_cast<std::ptrdiff_t>(rows);
    const auto skip = static_cast<std::ptrdiff_t>(next);
#pragma omp parallel for schedule(static) if (rows >= kParallelRows)
    for (std::ptrdiff_t r = 0; r < n; ++r) {
      if (r != skip && m.get(static_cast<std::size_t>(r), c)) {
        m.row(static_cast<std::size_t>(r)) ^= pivot_row;
      }
    }
    pivots.push_back(c);
    ++next;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Matrix& m) {
  // Eliminating along the shorter side does less work.
  if (m.cols() < m.rows()) return row_reduce(m.transpose()).pivots.size();
  return row_reduce(m).pivots.size();
}

std::vector<BitVector> kernel_basis(const Matrix& m) {
  const Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      if (e.reduced.get(i, f)) v.set(e.pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVector> image_basis(const Matrix& m) {
  Echelon e = row_reduce(m.transpose());
  std::vector<BitVector> basis;
  basis.reserve(e.pivots.size());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) basis.push_back(e.reduced.row(i));
  return basis;
}

std::size_t image_intersection_rank(const Matrix& m1, const Matrix& m2) {
  if (m1.rows() != m2.rows()) {
    throw DimensionError("image intersection needs matrices with a common target space");
  }
  return rank(m1) + rank(m2) - rank(hconcat(m1, m2));
}

bool column_space_contains(const Matrix& outer, const Matrix& inner) {
  return image_intersection_rank(outer, inner) == rank(inner);
}

}  // namespace knotcone::f2
