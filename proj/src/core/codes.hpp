#ifndef RAIDLAB_CODES_HPP
#define RAIDLAB_CODES_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/layout.hpp"

namespace raidlab {

struct SearchExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// RAID5 (left-symmetric)

// Left-symmetric RAID5: parity of row r sits on disk (n-1-r) mod n and the
// data strips of the row continue on the next disks, so any n-1 consecutive
// data strips land on distinct disks.
StripeLayout layout_raid5(int n_disks, int stripes);

// Disk that holds the stripe-layout's data strip number `i` (0-based).
int raid5_data_disk(int n_disks, long long i);

// ---------------------------------------------------------------------------
// RDP (p prime > 2): (p-1) x (p+1) grid, row parities on column p-1,
// diagonal parities on column p; diagonal p-1 is not stored.

StripeLayout rdp_layout(int p);

struct EncodeResult {
  StripeLayout layout;
  std::vector<Block> grid;
  size_t xor_ops = 0;
};

// `data` holds (p-1) x (p-1) data blocks in row-major order.
EncodeResult rdp_encode(int p, const std::vector<Block>& data);

// Decode wrapper that throws UnrecoverableError when cells stay stuck.
std::vector<Block> decode_strict(const StripeLayout& layout,
                                 const std::vector<Block>& grid,
                                 const ErasurePattern& erased);

// RDP double-erasure decode; rejects more than two erased columns.
std::vector<Block> rdp_decode(const StripeLayout& layout,
                              const std::vector<Block>& grid,
                              const ErasurePattern& erased);

// ---------------------------------------------------------------------------
// X-code (n prime): n x n grid, rows 0..n-3 data, row n-2 P parities
// (slope +1 diagonals), row n-1 Q parities (slope -1 diagonals).

StripeLayout xcode_layout(int n);

EncodeResult xcode_encode(int n, const std::vector<Block>& data);

struct RebuildPlan {
  std::set<Cell> reads;                // distinct surviving cells read
  std::vector<char> choices;           // 'P' or 'Q' per lost data row
  size_t cost = 0;                     // reads.size()
  size_t naive_all_p_cost = 0;
};

// Minimum-read single-column rebuild; optimality established by exhaustive
// search over all 2^(n-2) per-cell P/Q choices.
RebuildPlan xcode_single_rebuild_plan(const StripeLayout& layout, int failed_col);

// ---------------------------------------------------------------------------
// HVPC product code: (k1+1) x (k2+1) grid with row parities H, column
// parities V and the corner parity equal to the XOR of either set.

StripeLayout hvpc_layout(int k1, int k2);

EncodeResult hvpc_encode(int k1, int k2, const std::vector<Block>& data);

// Merges three 2x5-data HVPC stripes into one 6x5-data stripe: horizontal
// parities are copied, the merged vertical parity row is the XOR of the
// three input parity rows (redundancy 18/10 -> 42/30).
EncodeResult hvpc_upcode(const std::vector<EncodeResult>& parts);

// ---------------------------------------------------------------------------
// LRC with per-group XOR local parities and one or two global parities
// using coefficients alpha_i (power 1) and alpha_i^2 (power 2).

struct LrcCode {
  StripeLayout layout;
  int k_per_group = 0;
  int groups = 0;
  int globals = 0;
  std::vector<uint8_t> coeffs;  // one per data cell, group-major
};

// Deterministic scan over field elements; the first assignment passing all
// the determinant conditions (distinct within group, disjoint values and
// pair-sums across groups) wins.  Throws SearchExhaustedError if no
// assignment exists in GF(2^8).
LrcCode lrc_build(int k_per_group, int groups, int globals);

// Azure-LRC(n,k,r) shape: k data cells in k/r groups of r with one local
// parity each plus n-k-k/r global parities.  Coefficients are searched when
// there are at most two globals, otherwise Vandermonde powers are assigned
// (shape is still exact for repair-cost metrics).
LrcCode azure_lrc_layout(int n, int k, int r);

struct PatternCount {
  long long decodable = 0;
  long long total = 0;
};

// Exhaustive enumeration of all C(cells, failures) erasure patterns with a
// rank test per pattern.
PatternCount count_decodable_patterns(const StripeLayout& layout, int failures);

// ---------------------------------------------------------------------------
// Repair-cost metrics (ARC / NRC / DRC / ADRC / ARC2)

struct Fraction {
  long long num = 0;
  long long den = 1;
  double value() const { return double(num) / double(den); }
};

Fraction make_fraction(long long num, long long den);

struct RepairCostReport {
  Fraction arc;    // mean single-block repair cost over all n blocks
  Fraction nrc;    // total repair cost amortized over the k data blocks
  Fraction drc;    // mean repair cost over data blocks (degraded read)
  Fraction adrc;   // alias of drc under the uniform-cost model
  std::optional<Fraction> arc2;  // mean two-block repair cost over C(n,2) pairs
  long long n_blocks = 0;
  long long k_data = 0;
};

RepairCostReport repair_metrics(const StripeLayout& layout);

// ---------------------------------------------------------------------------
// PMDS / SD classification by exhaustive failure enumeration.

enum class PmdsClass { PMDS, SDOnly, Neither };

struct PmdsReport {
  PmdsClass cls = PmdsClass::Neither;
  bool sd = false;
  bool pmds = false;
  long long sd_patterns = 0;     // C(n,m) * C(r(n-m), s)
  long long pmds_patterns = 0;
  std::optional<ErasurePattern> sd_witness;    // first unrecoverable pattern
  std::optional<ErasurePattern> pmds_witness;
};

// m erased blocks per row plus s extra cells (PMDS) / m whole columns plus
// s extra cells (SD).  Grid capped at 6x8.
PmdsReport pmds_sd_check(const StripeLayout& layout, int m, int s);

// Plank/Blaum-style SD code shape: `rows` x `cols` grid, one row parity per
// row in the last column, `s` global parities replacing the last data cells
// of the bottom row.  Global coefficients are chosen by deterministic scan
// so the SD property (1 column + s sectors) holds.
StripeLayout sd_code_build(int rows, int cols, int s);

// ---------------------------------------------------------------------------
// Pure-XOR recoverability (rank test over GF(2)); requires all unit
// coefficients.
bool xor_recoverable(const StripeLayout& layout, const ErasurePattern& erased);

// ---------------------------------------------------------------------------
// Xorbas-style implied local parity: S1 and S2 cover the two halves of the
// data, S3 = S1 + S2 is simultaneously a combination of the four global
// parities, so it need not be stored.

struct XorbasCode {
  std::vector<uint8_t> data_coeffs;    // c_1..c_10
  std::vector<uint8_t> parity_coeffs;  // d_1..d_4 with S3 = sum d_j P_j
  std::vector<std::vector<uint8_t>> rs_rows;  // 4 x 10 global parity matrix
  double overhead_without_implied = 17.0 / 10.0;
  double overhead_with_implied = 16.0 / 10.0;
};

XorbasCode xorbas_build();

// Returns the residual block S1 + S2 + S3; all-zero iff the identity holds.
Block xorbas_residual(const XorbasCode& code,
                      const std::vector<Block>& data_blocks);

// ---------------------------------------------------------------------------
// Hybrid mirrored/parity arrays (pure XOR), used with xor_recoverable.

// LSI RAID of n disks (n even): data disks interleaved with disks holding
// the XOR of their two neighbours on the ring.
StripeLayout lsi_layout(int n);

// SSPiRAL with 4 data and 4 parity disks; each parity is the XOR of three
// of the data disks.
StripeLayout sspiral_layout();

// ---------------------------------------------------------------------------
// Hamming error location: failing parity positions (powers of two) sum to
// the erroneous bit position; empty syndrome means no error.
std::optional<int> hamming_locate(const std::set<int>& syndrome);

}  // namespace raidlab

#endif
