#include "knotcone/f2.hpp"

// Plain bool-per-entry elimination. Deliberately naive: it shares no code with
// the packed kernels so the two can be cross-checked.

namespace knotcone::f2::reference {

namespace {

using Dense = std::vector<std::vector<bool>>;

Dense to_dense(const Matrix& m) {
  Dense d(m.rows(), std::vector<bool>(m.cols(), false));
  for (auto [r, c] : m.entries()) d[r][c] = true;
  return d;
}

// Reduces in place to RREF and returns the pivot columns.
std::vector<std::size_t> rref(Dense& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < a.size(); ++c) {
    std::size_t r = lead;
    while (r < a.size() && !a[r][c]) ++r;
    if (r == a.size()) continue;
    std::swap(a[r], a[lead]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != lead && a[i][c]) {
        for (std::size_t k = 0; k < cols; ++k) a[i][k] = a[i][k] != a[lead][k];
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Dense a = to_dense(m);
  return rref(a, m.cols()).size();
}

std::vector<BitVector> kernel_basis(const Matrix& m) {
  Dense a = to_dense(m);
  const auto pivots = rref(a, m.cols());
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<BitVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (a[i][f]) v.set(pivots[i]);
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace knotcone::f2::reference
