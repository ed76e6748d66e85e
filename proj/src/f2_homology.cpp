#include "knotcone/f2.hpp"

namespace knotcone::f2 {

bool SpanSolver::insert(const BitVector& v) {
  if (v.size() != ambient_) throw DimensionError("span solver vector length mismatch");
  if (inserted_ >= max_inputs_) throw DimensionError("span solver capacity exceeded");
  Reduction red = reduce(v);
  red.combination.flip(inserted_++);
  const std::size_t pivot = red.residual.first_set();
  if (pivot == BitVector::npos) return false;
  rows_.push_back({std::move(red.residual), std::move(red.combination), pivot});
  return true;
}

SpanSolver::Reduction SpanSolver::reduce(const BitVector& v) const {
  // Row k is already reduced against the pivots of rows 0..k-1, so a single
  // pass in insertion order clears every pivot.
  Reduction out{v, BitVector(max_inputs_)};
  for (const Row& row : rows_) {
    if (out.residual.get(row.pivot)) {
      out.residual ^= row.vec;
      out.combination ^= row.combination;
    }
  }
  return out;
}

Complex::Complex(Matrix differential) : d_(std::move(differential)) {
  if (d_.rows() != d_.cols()) throw DimensionError("differential must be square");
  if (!(d_ * d_).is_zero()) throw InvalidComplexError("differential does not square to zero");
}

std::size_t Complex::homology_dimension() const { return dim() - 2 * rank(d_); }

ChainComplex::ChainComplex(std::vector<std::size_t> dims, std::vector<Matrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  const std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
  if (boundaries_.size() != expected) {
    throw DimensionError("need one boundary matrix per adjacent degree pair");
  }
  for (std::size_t k = 0; k < boundaries_.size(); ++k) {
    if (boundaries_[k].rows() != dims_[k] || boundaries_[k].cols() != dims_[k + 1]) {
      throw DimensionError("boundary matrix shape does not match degree dimensions");
    }
  }
  for (std::size_t k = 0; k + 1 < boundaries_.size(); ++k) {
    if (!(boundaries_[k] * boundaries_[k + 1]).is_zero()) {
      throw InvalidComplexError("consecutive boundaries do not compose to zero");
    }
  }
}

std::vector<std::size_t> ChainComplex::homology_dimensions() const {
  std::vector<std::size_t> ranks(boundaries_.size());
  for (std::size_t k = 0; k < boundaries_.size(); ++k) ranks[k] = rank(boundaries_[k]);
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    const std::size_t out_rank = k > 0 ? ranks[k - 1] : 0;
    const std::size_t in_rank = k < ranks.size() ? ranks[k] : 0;
    out[k] = dims_[k] - out_rank - in_rank;
  }
  return out;
}

Complex ChainComplex::flatten() const {
  std::vector<std::size_t> offset(dims_.size() + 1, 0);
  for (std::size_t k = 0; k < dims_.size(); ++k) offset[k + 1] = offset[k] + dims_[k];
  Matrix d(offset.back(), offset.back());
  for (std::size_t k = 0; k < boundaries_.size(); ++k) {
    d.add_block(offset[k], offset[k + 1], boundaries_[k]);
  }
  return Complex(std::move(d));
}

std::vector<std::size_t> homology_dimensions(const ChainComplex& c) {
  return c.homology_dimensions();
}

Homology::Homology(const Complex& c)
    : ambient_(c.dim()), boundary_rank_(0), solver_(c.dim(), 2 * c.dim() + 1) {
  for (BitVector& b : image_basis(c.differential())) {
    solver_.insert(b);
    ++boundary_rank_;
  }
  for (BitVector& z : kernel_basis(c.differential())) {
    const bool fresh = solver_.insert(z);
    input_is_rep_.push_back(fresh);
    if (fresh) reps_.push_back(std::move(z));
  }
}

bool Homology::is_boundary(const BitVector& cycle) const {
  const auto red = solver_.reduce(cycle);
  if (red.residual.any()) return false;
  for (std::size_t i = boundary_rank_; i < solver_.inserted(); ++i) {
    if (red.combination.get(i)) return false;
  }
  return true;
}

BitVector Homology::coordinates(const BitVector& cycle) const {
  const auto red = solver_.reduce(cycle);
  if (red.residual.any()) throw std::invalid_argument("vector is not a cycle");
  // Map solver input indices back to representative indices.
  BitVector coords(reps_.size());
  std::size_t rep = 0;
  for (std::size_t i = boundary_rank_; i < solver_.inserted(); ++i) {
    if (input_is_rep_[i - boundary_rank_]) {
      if (red.combination.get(i)) coords.flip(rep);
      ++rep;
    }
  }
  return coords;
}

bool is_chain_map(const Complex& source, const Complex& target, const Matrix& f) {
  if (f.rows() != target.dim() || f.cols() != source.dim()) return false;
  return f * source.differential() == target.differential() * f;
}

Matrix induced_map_on_homology(const Complex& source, const Complex& target, const Matrix& f,
                               const Homology& hs, const Homology& ht) {
  if (f.rows() != target.dim() || f.cols() != source.dim()) {
    throw DimensionError("chain map shape does not match complexes");
  }
  if (!is_chain_map(source, target, f)) {
    throw NotAChainMapError("map does not commute with the differentials");
  }
  Matrix out(ht.dim(), hs.dim());
  for (std::size_t i = 0; i < hs.dim(); ++i) {
    const BitVector image = ht.coordinates(f.apply(hs.representatives()[i]));
    for (std::size_t r : image.ones()) out.set(r, i);
  }
  return out;
}

Matrix induced_map_on_homology(const Complex& source, const Complex& target, const Matrix& f) {
  return induced_map_on_homology(source, target, f, Homology(source), Homology(target));
}

}  // namespace knotcone::f2
