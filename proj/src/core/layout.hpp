#ifndef RAIDLAB_LAYOUT_HPP
#define RAIDLAB_LAYOUT_HPP

#include <cstdint>
#include <stdexcept>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/gf256.hpp"

namespace raidlab {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell& o) const { return row == o.row && col == o.col; }
  bool operator<(const Cell& o) const {
    return row != o.row ? row < o.row : col < o.col;
  }
};

enum class RoleKind : uint8_t {
  Data,
  ParityRow,
  ParityDiagP,
  ParityDiagQ,
  LocalParity,   // tag = parity-group id
  GlobalParity,  // tag = global index
  Spare,
  Unused,
};

struct CellRole {
  RoleKind kind = RoleKind::Data;
  int tag = 0;  // group id / global index where applicable
};

bool is_parity(RoleKind k);

// One linear parity equation: parity = sum over members of coeff*member,
// i.e.  parity + sum coeff_i * member_i = 0 over GF(2^8).
struct ParityGroup {
  Cell parity;
  std::vector<Cell> members;
  std::vector<uint8_t> coeffs;  // same length as members; 1 for plain XOR
};

struct ErasurePattern {
  std::set<Cell> cells;
  std::set<int> columns;

  std::set<Cell> expand(int rows, int cols) const;  // columns -> cells
};

struct UnrecoverableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A rows x cols grid of cells with roles and parity-group membership.
// The common substrate for every code and clustered layout in the library.
class StripeLayout {
 public:
  StripeLayout() = default;
  StripeLayout(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  CellRole& role(int r, int c) { return roles_[idx(r, c)]; }
  const CellRole& role(int r, int c) const { return roles_[idx(r, c)]; }
  const std::vector<ParityGroup>& groups() const { return groups_; }
  std::vector<ParityGroup>& groups() { return groups_; }
  void add_group(ParityGroup g);

  size_t idx(int r, int c) const { return size_t(r) * cols_ + c; }
  bool in_grid(const Cell& cell) const {
    return cell.row >= 0 && cell.row < rows_ && cell.col >= 0 && cell.col < cols_;
  }

  // Structural sanity: groups reference grid cells, coefficient counts
  // match, parities are not data cells.  Throws std::invalid_argument.
  void validate() const;

  // Fills parity cells of `grid` in group order (members of later groups
  // may be parities of earlier ones).  Returns the number of block
  // combine (XOR / scaled-XOR) operations performed.
  size_t encode(std::vector<Block>& grid) const;

  // True iff the erased cells are determined by the surviving parity
  // equations (rank test; no data needed).
  bool recoverable(const ErasurePattern& erased) const;

  struct DecodeResult {
    std::vector<Block> grid;
    std::set<Cell> stuck;  // empty on full recovery
  };

  // Peeling-first decoder with a linear-solve fallback.  `grid` holds the
  // stripe content with erased cells in arbitrary state; their values are
  // reconstructed in place of the returned copy.  Cells that cannot be
  // recovered are reported in `stuck`.
  DecodeResult decode(const std::vector<Block>& grid,
                      const ErasurePattern& erased) const;

  // Checks that every group equation holds for the given grid content.
  bool parity_consistent(const std::vector<Block>& grid) const;

  std::string to_json() const;
  static StripeLayout from_json(const std::string& text);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<CellRole> roles_;
  std::vector<ParityGroup> groups_;
};

// Deterministic pseudo-random stripe content for tests and self-checks.
std::vector<Block> random_grid(int rows, int cols, size_t block_len,
                               uint64_t seed);

std::string role_to_string(const CellRole& role);
CellRole role_from_string(const std::string& s);

}  // namespace raidlab

#endif
