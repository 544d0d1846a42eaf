#include "core/fieldmatrix.hpp"

namespace raidlab {

FieldMatrix FieldMatrix::identity(size_t n) {
  FieldMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  FieldMatrix out(rows_, rhs.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      uint8_t v = at(i, k);
      if (v == 0) continue;
      for (size_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) ^= gf::mul(v, rhs.at(k, j));
    }
  return out;
}

size_t FieldMatrix::rank() const {
  FieldMatrix m = *this;
  size_t rank = 0;
  for (size_t col = 0; col < m.cols_ && rank < m.rows_; ++col) {
    size_t pivot = rank;
    while (pivot < m.rows_ && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows_) continue;
    if (pivot != rank)
      for (size_t j = 0; j < m.cols_; ++j)
        std::swap(m.at(pivot, j), m.at(rank, j));
    uint8_t piv_inv = gf::inv(m.at(rank, col));
    for (size_t i = rank + 1; i < m.rows_; ++i) {
      uint8_t f = m.at(i, col);
      if (f == 0) continue;
      uint8_t scale = gf::mul(f, piv_inv);
      for (size_t j = col; j < m.cols_; ++j)
        m.at(i, j) ^= gf::mul(scale, m.at(rank, j));
    }
    ++rank;
  }
  return rank;
}

std::vector<Block> FieldMatrix::solve(const std::vector<Block>& rhs) const {
  if (rows_ != cols_) throw std::invalid_argument("solve: matrix not square");
  if (rhs.size() != rows_) throw std::invalid_argument("solve: rhs size mismatch");
  FieldMatrix m = *this;
  std::vector<Block> b = rhs;
  const size_t n = rows_;
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrixError("solve: singular matrix");
    if (pivot != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(pivot, j), m.at(col, j));
      std::swap(b[pivot], b[col]);
    }
    uint8_t piv_inv = gf::inv(m.at(col, col));
    for (size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      uint8_t f = m.at(i, col);
      if (f == 0) continue;
      uint8_t scale = gf::mul(f, piv_inv);
      for (size_t j = col; j < n; ++j)
        m.at(i, j) ^= gf::mul(scale, m.at(col, j));
      mul_add_into(b[i], b[col], scale);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    uint8_t d = m.at(i, i);
    if (d != 1) {
      uint8_t s = gf::inv(d);
      for (auto& byte : b[i]) byte = gf::mul(s, byte);
    }
  }
  return b;
}

}  // namespace raidlab
