#pragma once

// Exact linear algebra over the two-element field.
//
// Vectors and matrix rows are bit-packed into 64-bit words. Matrices are
// dense and row-major; a matrix M acts on column vectors, so column c of M is
// the image of the c-th basis vector. All elimination routines choose pivots
// deterministically (lowest row/column index first), so bases returned here
// are reproducible from run to run.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knotcone::f2 {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAChainMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BitVector {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector from_indices(std::size_t size, std::span<const std::size_t> ones);
  static BitVector from_indices(std::size_t size, std::initializer_list<std::size_t> ones) {
    return from_indices(size, std::span<const std::size_t>(ones.begin(), ones.size()));
  }

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  bool operator==(const BitVector& other) const = default;

  bool any() const;
  bool none() const { return !any(); }
  std::size_t count() const;
  // Index of the lowest set bit, or npos.
  std::size_t first_set() const;
  std::vector<std::size_t> ones() const;

  // Copies bits [offset, offset + len) into a new vector.
  BitVector slice(std::size_t offset, std::size_t len) const;
  // XORs `other` into this vector starting at bit `offset`.
  void xor_at(std::size_t offset, const BitVector& other);

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::string to_string() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  // Throws DimensionError on out-of-range or repeated positions.
  static Matrix from_entries(std::size_t rows, std::size_t cols,
                             std::span<const std::pair<std::size_t, std::size_t>> entries);
  static Matrix from_entries(std::size_t rows, std::size_t cols,
                             std::initializer_list<std::pair<std::size_t, std::size_t>> entries) {
    return from_entries(rows, cols,
                        std::span<const std::pair<std::size_t, std::size_t>>(entries.begin(),
                                                                             entries.size()));
  }
  static Matrix from_columns(std::size_t rows, std::span<const BitVector> columns);
  static Matrix from_rows(std::size_t cols, std::span<const BitVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) { data_[r].set(c, value); }
  void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

  const BitVector& row(std::size_t r) const { return data_[r]; }
  BitVector& row(std::size_t r) { return data_[r]; }
  BitVector column(std::size_t c) const;

  // Writes `block` with its top-left corner at (r0, c0), XOR-ing into existing bits.
  void add_block(std::size_t r0, std::size_t c0, const Matrix& block);

  Matrix transpose() const;
  BitVector apply(const BitVector& x) const;
  bool is_zero() const;
  std::vector<std::pair<std::size_t, std::size_t>> entries() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

Matrix hconcat(const Matrix& a, const Matrix& b);

// Reduced row echelon form. `pivots[i]` is the pivot column of row i; rows
// past pivots.size() are zero. The row loop of each elimination step is
// OpenMP-parallel for large matrices.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};
Echelon row_reduce(Matrix m);

std::size_t rank(const Matrix& m);
std::vector<BitVector> kernel_basis(const Matrix& m);
std::vector<BitVector> image_basis(const Matrix& m);
// dim(col(m1) ∩ col(m2)); throws DimensionError if row counts differ.
std::size_t image_intersection_rank(const Matrix& m1, const Matrix& m2);
// True iff col(inner) ⊆ col(outer).
bool column_space_contains(const Matrix& outer, const Matrix& inner);

// Single-threaded textbook elimination, kept as the reference the parallel
// kernels are tested and benchmarked against.
namespace reference {
std::size_t rank(const Matrix& m);
std::vector<BitVector> kernel_basis(const Matrix& m);
}  // namespace reference

// Incrementally built basis that can express vectors of its span in terms of
// the inserted vectors.
class SpanSolver {
 public:
  SpanSolver(std::size_t ambient, std::size_t max_inputs)
      : ambient_(ambient), max_inputs_(max_inputs) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t inserted() const { return inserted_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true if v was independent of what is already stored. Every call
  // gets the next input index, whether or not v was independent.
  bool insert(const BitVector& v);

  struct Reduction {
    BitVector residual;
    BitVector combination;  // over input indices
  };
  Reduction reduce(const BitVector& v) const;
  bool contains(const BitVector& v) const { return reduce(v).residual.none(); }

 private:
  struct Row {
    BitVector vec;
    BitVector combination;
    std::size_t pivot;
  };
  std::size_t ambient_;
  std::size_t max_inputs_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
};

// Ungraded complex (V, d) with d² = 0.
class Complex {
 public:
  Complex() = default;
  // Throws DimensionError if d is not square, InvalidComplexError if d² ≠ 0.
  explicit Complex(Matrix differential);

  std::size_t dim() const { return d_.rows(); }
  const Matrix& differential() const { return d_; }
  std::size_t homology_dimension() const;

 private:
  Matrix d_;
};

// Graded complex: boundaries[k] maps degree k+1 to degree k.
class ChainComplex {
 public:
  ChainComplex(std::vector<std::size_t> dims, std::vector<Matrix> boundaries);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Matrix>& boundaries() const { return boundaries_; }
  std::vector<std::size_t> homology_dimensions() const;
  // Direct sum of all degrees with the total differential.
  Complex flatten() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Matrix> boundaries_;
};

std::vector<std::size_t> homology_dimensions(const ChainComplex& c);

// Pivot-based basis of H(V, d): representatives are kernel-basis cycles not in
// the span of the boundaries, taken in kernel-basis order.
class Homology {
 public:
  explicit Homology(const Complex& c);

  std::size_t dim() const { return reps_.size(); }
  std::size_t ambient() const { return ambient_; }
  const std::vector<BitVector>& representatives() const { return reps_; }
  bool is_boundary(const BitVector& cycle) const;
  // Coordinates of [cycle]; throws std::invalid_argument if cycle is not a cycle.
  BitVector coordinates(const BitVector& cycle) const;

 private:
  std::size_t ambient_;
  std::size_t boundary_rank_;
  std::vector<BitVector> reps_;
  std::vector<bool> input_is_rep_;
  SpanSolver solver_;
};

// Matrix of f_* in the bases of `hs` and `ht`. Throws NotAChainMapError if f
// does not commute with the differentials.
Matrix induced_map_on_homology(const Complex& source, const Complex& target, const Matrix& f,
                               const Homology& hs, const Homology& ht);
Matrix induced_map_on_homology(const Complex& source, const Complex& target, const Matrix& f);

bool is_chain_map(const Complex& source, const Complex& target, const Matrix& f);

}  // namespace knotcone::f2
