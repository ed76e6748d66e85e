#include "knotcone/f2.hpp"

#include <algorithm>
#include <bit>

namespace knotcone::f2 {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(word_count(size), 0) {}

BitVector BitVector::from_indices(std::size_t size, std::span<const std::size_t> ones) {
  BitVector v(size);
  for (std::size_t i : ones) {
    if (i >= size) throw DimensionError("bit index out of range");
    v.flip(i);
  }
  return v;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= mask;
  } else {
    words_[i >> 6] &= ~mask;
  }
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw DimensionError("bit vector length mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::first_set() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return npos;
}

std::vector<std::size_t> BitVector::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

BitVector BitVector::slice(std::size_t offset, std::size_t len) const {
  if (offset + len > size_) throw DimensionError("slice out of range");
  BitVector out(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (get(offset + i)) out.flip(i);
  }
  return out;
}

void BitVector::xor_at(std::size_t offset, const BitVector& other) {
  if (offset + other.size_ > size_) throw DimensionError("xor_at out of range");
  for (std::size_t i : other.ones()) flip(offset + i);
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i : ones()) s[i] = '1';
  return s;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

Matrix Matrix::from_entries(std::size_t rows, std::size_t cols,
                            std::span<const std::pair<std::size_t, std::size_t>> entries) {
  Matrix m(rows, cols);
  for (auto [r, c] : entries) {
    if (r >= rows || c >= cols) throw DimensionError("matrix entry out of bounds");
    if (m.get(r, c)) throw DimensionError("duplicate matrix entry");
    m.set(r, c);
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, std::span<const BitVector> columns) {
  Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw DimensionError("column length mismatch");
    for (std::size_t r : columns[c].ones()) m.set(r, c);
  }
  return m;
}

Matrix Matrix::from_rows(std::size_t cols, std::span<const BitVector> rows) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("row length mismatch");
    m.data_[r] = rows[r];
  }
  return m;
}

BitVector Matrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.flip(r);
  }
  return v;
}

void Matrix::add_block(std::size_t r0, std::size_t c0, const Matrix& block) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) {
    throw DimensionError("block does not fit");
  }
  for (std::size_t r = 0; r < block.rows_; ++r) data_[r0 + r].xor_at(c0, block.data_[r]);
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c : data_[r].ones()) t.set(c, r);
  }
  return t;
}

BitVector Matrix::apply(const BitVector& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  BitVector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto a = data_[r].words();
    const auto b = x.words();
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.size(); ++w) acc ^= a[w] & b[w];
    if (std::popcount(acc) & 1) y.flip(r);
  }
  return y;
}

bool Matrix::is_zero() const {
  return std::none_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.any(); });
}

std::vector<std::pair<std::size_t, std::size_t>> Matrix::entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c : data_[r].ones()) out.emplace_back(r, c);
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product size mismatch");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k : a.data_[r].ones()) out.data_[r] ^= b.data_[k];
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum size mismatch");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows_; ++r) out.data_[r] ^= b.data_[r];
  return out;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hconcat row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.add_block(0, 0, a);
  out.add_block(0, a.cols(), b);
  return out;
}

}  // namespace knotcone::f2
