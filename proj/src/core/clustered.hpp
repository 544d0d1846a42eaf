#ifndef RAIDLAB_CLUSTERED_HPP
#define RAIDLAB_CLUSTERED_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/layout.hpp"

namespace raidlab {

enum class StripRole : uint8_t { Data, Parity, Spare, Unused };

// Parity-group placement over n_disks columns; each strip belongs to one
// parity group (PG) of size group_size with exactly one parity strip.
struct ClusteredLayout {
  int n_disks = 0;
  int group_size = 0;
  int rows = 0;
  struct Strip {
    int pg = -1;
    int pos = 0;  // strip index within its parity group
    StripRole role = StripRole::Unused;
  };
  std::vector<Strip> strips;  // row-major

  Strip& at(int row, int disk) { return strips[size_t(row) * n_disks + disk]; }
  const Strip& at(int row, int disk) const {
    return strips[size_t(row) * n_disks + disk];
  }
  int pg_count() const;
  double alpha() const { return double(group_size - 1) / double(n_disks - 1); }

  std::string to_json() const;
  static ClusteredLayout from_json(const std::string& text);
};

// ---------------------------------------------------------------------------
// BIBD

struct BIBDDesign {
  int n = 0;       // disks (points)
  int k = 0;       // block size = PG size G
  int b = 0;       // number of blocks
  int r = 0;       // blocks per disk
  int lambda = 0;  // blocks shared by any disk pair
  std::vector<std::vector<int>> blocks;  // 0-based disk ids
};

struct BIBDReport {
  bool valid = false;
  std::vector<std::string> violations;
};

// The 15-block (n=10, k=4, r=6, lambda=2) segment design; the one garbled
// entry of the published figure is corrected so the design validates.
BIBDDesign bibd_builtin_10_4();

// All C(n, k) blocks; valid for any n > k (lambda = C(n-2, k-2)).
BIBDDesign bibd_complete(int n, int k);

BIBDReport bibd_check(const BIBDDesign& design);

// One segment (r rows) with the first strip of every block as its parity.
ClusteredLayout bibd_layout(const BIBDDesign& design);

// ---------------------------------------------------------------------------
// NRP and shifted placements

// Sequential PG fill permuted per row group with a Durstenfeld shuffle.
// Row groups span lcm(n,G)/n rows so no parity group straddles two
// differently-permuted rows; the group seed is mix(seed, group index).
ClusteredLayout nrp_layout(int n, int G, uint64_t seed, int row_groups = 4);

// The permutation sends the strip initially on disk j to disk perm[j];
// exposed so published examples can be replayed.
std::vector<int> nrp_permute_rows(const std::vector<int>& perm,
                                  const std::vector<int>& row);

// Sequential PG fill where each successive period of lcm(n,G)/n rows is
// rotated one column further; parity is the last strip of each PG.  One
// balance cycle of gcd(n,G) periods places exactly one parity per disk.
ClusteredLayout shifted_layout(int n, int G, int cycles = 1);

// Clustered layout as a plain-XOR stripe layout (one parity group per PG),
// sharing the codes module's JSON schema and recoverability machinery.
StripeLayout to_stripe_layout(const ClusteredLayout& layout);

// Left-symmetric RAID5 expressed as the degenerate clustered layout G = N.
ClusteredLayout raid5_clustered(int n, int rows);

// RAID4-style layout (all parity on disk 0), used as a balance foil.
ClusteredLayout raid4_clustered(int n, int rows);

// ---------------------------------------------------------------------------
// Holland-style layout properties

struct LayoutProperties {
  bool single_failure_ok = false;      // (i) PG strips on distinct disks
  bool parity_balanced = false;        // (ii) spread <= 1
  int parity_spread = 0;
  std::vector<int> parity_counts;
  bool rebuild_balanced = false;       // (iii) equal reads on all survivors
  double rebuild_max_min_ratio = 0.0;  //      worst over single failures
  bool large_write_contiguous = false; // (iv) PG strips contiguous (mod wrap)
  bool max_read_parallelism = false;   // (v) any <=G logical strips distinct
  std::string mapping_note;            // (vi)
};

LayoutProperties layout_properties(const ClusteredLayout& layout);

}  // namespace raidlab

#endif
