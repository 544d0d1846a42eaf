#ifndef RAIDLAB_FIELDMATRIX_HPP
#define RAIDLAB_FIELDMATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "core/gf256.hpp"

namespace raidlab {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense matrix over GF(2^8).
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static FieldMatrix identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint8_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  uint8_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  FieldMatrix operator*(const FieldMatrix& rhs) const;

  // Rank by Gaussian elimination; exact over the field.
  size_t rank() const;

  // Solves A x = rhs for square nonsingular A where the unknowns and the
  // right-hand side are blocks.  Throws SingularMatrixError otherwise.
  std::vector<Block> solve(const std::vector<Block>& rhs) const;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<uint8_t> a_;
};

}  // namespace raidlab

#endif
