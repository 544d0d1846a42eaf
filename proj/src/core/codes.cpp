#include "core/codes.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>

namespace raidlab {

// ---------------------------------------------------------------------------
// RAID5

StripeLayout layout_raid5(int n_disks, int stripes) {
  if (n_disks < 3) throw std::invalid_argument("raid5 needs at least 3 disks");
  if (stripes < 1) throw std::invalid_argument("raid5 needs at least one stripe");
  StripeLayout layout(stripes, n_disks);
  for (int r = 0; r < stripes; ++r) {
    int pdisk = ((n_disks - 1 - r) % n_disks + n_disks) % n_disks;
    layout.role(r, pdisk) = {RoleKind::ParityRow, r};
    ParityGroup g;
    g.parity = {r, pdisk};
    for (int j = 0; j < n_disks - 1; ++j) {
      int disk = (pdisk + 1 + j) % n_disks;
      layout.role(r, disk) = {RoleKind::Data, r * (n_disks - 1) + j};
      g.members.push_back({r, disk});
    }
    layout.add_group(std::move(g));
  }
  return layout;
}

int raid5_data_disk(int n_disks, long long i) {
  long long row = i / (n_disks - 1);
  int j = int(i % (n_disks - 1));
  int pdisk = int(((n_disks - 1 - row) % n_disks + n_disks) % n_disks);
  return (pdisk + 1 + j) % n_disks;
}

// ---------------------------------------------------------------------------
// RDP

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

StripeLayout rdp_layout(int p) {
  if (!is_prime(p) || p <= 2)
    throw std::invalid_argument("rdp: p must be a prime > 2");
  StripeLayout layout(p - 1, p + 1);
  for (int r = 0; r < p - 1; ++r) {
    for (int c = 0; c < p - 1; ++c) layout.role(r, c) = {RoleKind::Data, 0};
    layout.role(r, p - 1) = {RoleKind::ParityRow, r};
    layout.role(r, p) = {RoleKind::ParityDiagP, r};
  }
  for (int r = 0; r < p - 1; ++r) {
    ParityGroup g;
    g.parity = {r, p - 1};
    for (int c = 0; c < p - 1; ++c) g.members.push_back({r, c});
    layout.add_group(std::move(g));
  }
  // Diagonal d covers cells with (row + col) mod p == d over the data and
  // row-parity columns; diagonal p-1 is not stored.
  for (int d = 0; d < p - 1; ++d) {
    ParityGroup g;
    g.parity = {d, p};
    for (int r = 0; r < p - 1; ++r)
      for (int c = 0; c < p; ++c)
        if ((r + c) % p == d) g.members.push_back({r, c});
    layout.add_group(std::move(g));
  }
  return layout;
}

EncodeResult rdp_encode(int p, const std::vector<Block>& data) {
  StripeLayout layout = rdp_layout(p);
  if (data.size() != size_t(p - 1) * (p - 1))
    throw std::invalid_argument("rdp_encode: data must be (p-1)x(p-1)");
  const size_t block_len = data.empty() ? 0 : data[0].size();
  std::vector<Block> grid(size_t(p - 1) * (p + 1), Block(block_len, 0));
  for (int r = 0; r < p - 1; ++r)
    for (int c = 0; c < p - 1; ++c)
      grid[layout.idx(r, c)] = data[size_t(r) * (p - 1) + c];
  size_t ops = layout.encode(grid);
  return {std::move(layout), std::move(grid), ops};
}

std::vector<Block> decode_strict(const StripeLayout& layout,
                                 const std::vector<Block>& grid,
                                 const ErasurePattern& erased) {
  auto res = layout.decode(grid, erased);
  if (!res.stuck.empty())
    throw UnrecoverableError("erasure pattern exceeds the code's tolerance");
  return std::move(res.grid);
}

std::vector<Block> rdp_decode(const StripeLayout& layout,
                              const std::vector<Block>& grid,
                              const ErasurePattern& erased) {
  std::set<int> cols = erased.columns;
  for (const auto& cell : erased.cells) cols.insert(cell.col);
  if (cols.size() > 2)
    throw UnrecoverableError("rdp tolerates at most two erased columns");
  return decode_strict(layout, grid, erased);
}

// ---------------------------------------------------------------------------
// X-code

StripeLayout xcode_layout(int n) {
  if (!is_prime(n)) throw std::invalid_argument("xcode: n must be prime");
  if (n < 5) throw std::invalid_argument("xcode: n must be at least 5");
  StripeLayout layout(n, n);
  for (int c = 0; c < n; ++c) {
    layout.role(n - 2, c) = {RoleKind::ParityDiagP, c};
    layout.role(n - 1, c) = {RoleKind::ParityDiagQ, c};
  }
  auto mod = [n](int x) { return ((x % n) + n) % n; };
  for (int i = 0; i < n; ++i) {
    ParityGroup p;
    p.parity = {n - 2, i};
    for (int k = 0; k <= n - 3; ++k) p.members.push_back({k, mod(i - k - 2)});
    layout.add_group(std::move(p));
    ParityGroup q;
    q.parity = {n - 1, i};
    for (int k = 0; k <= n - 3; ++k) q.members.push_back({k, mod(i + k + 2)});
    layout.add_group(std::move(q));
  }
  return layout;
}

EncodeResult xcode_encode(int n, const std::vector<Block>& data) {
  StripeLayout layout = xcode_layout(n);
  if (data.size() != size_t(n - 2) * n)
    throw std::invalid_argument("xcode_encode: data must be (n-2)xn");
  const size_t block_len = data.empty() ? 0 : data[0].size();
  std::vector<Block> grid(size_t(n) * n, Block(block_len, 0));
  for (int r = 0; r < n - 2; ++r)
    for (int c = 0; c < n; ++c) grid[layout.idx(r, c)] = data[size_t(r) * n + c];
  size_t ops = layout.encode(grid);
  return {std::move(layout), std::move(grid), ops};
}

RebuildPlan xcode_single_rebuild_plan(const StripeLayout& layout, int failed_col) {
  const int n = layout.cols();
  if (layout.rows() != n) throw std::invalid_argument("not an x-code layout");
  if (failed_col < 0 || failed_col >= n)
    throw std::invalid_argument("failed column out of range");
  if (n > 19) throw std::length_error("rebuild plan search capped at n <= 19");
  auto mod = [n](int x) { return ((x % n) + n) % n; };

  const int ndata = n - 2;
  const size_t words = (size_t(n) * n + 63) / 64;
  auto bit_of = [&](int r, int c) { return size_t(r) * n + c; };
  auto set_bit = [&](std::vector<uint64_t>& bs, int r, int c) {
    size_t b = bit_of(r, c);
    bs[b >> 6] |= (uint64_t(1) << (b & 63));
  };

  // Fixed reads: the failed column's own P and Q cells are recomputed from
  // their full groups.
  std::vector<uint64_t> fixed(words, 0);
  for (int k = 0; k <= n - 3; ++k) {
    set_bit(fixed, k, mod(failed_col - k - 2));  // P group of failed_col
    set_bit(fixed, k, mod(failed_col + k + 2));  // Q group of failed_col
  }

  // Per data row k the P-choice / Q-choice read masks.
  std::vector<std::vector<uint64_t>> pmask(ndata, std::vector<uint64_t>(words, 0));
  std::vector<std::vector<uint64_t>> qmask(ndata, std::vector<uint64_t>(words, 0));
  for (int k = 0; k < ndata; ++k) {
    int ip = mod(failed_col + k + 2);  // P group containing (k, failed_col)
    set_bit(pmask[k], n - 2, ip);
    for (int kk = 0; kk <= n - 3; ++kk)
      if (kk != k) set_bit(pmask[k], kk, mod(ip - kk - 2));
    int iq = mod(failed_col - k - 2);  // Q group containing (k, failed_col)
    set_bit(qmask[k], n - 1, iq);
    for (int kk = 0; kk <= n - 3; ++kk)
      if (kk != k) set_bit(qmask[k], kk, mod(iq + kk + 2));
  }

  auto popcount = [&](const std::vector<uint64_t>& bs) {
    size_t c = 0;
    for (uint64_t w : bs) c += size_t(__builtin_popcountll(w));
    return c;
  };

  std::vector<uint64_t> scratch(words);
  size_t best_cost = SIZE_MAX;
  uint64_t best_mask = 0;
  size_t naive_cost = 0;
  for (uint64_t mask = 0; mask < (uint64_t(1) << ndata); ++mask) {
    scratch = fixed;
    for (int k = 0; k < ndata; ++k) {
      const auto& m = (mask >> k) & 1 ? qmask[k] : pmask[k];
      for (size_t w = 0; w < words; ++w) scratch[w] |= m[w];
    }
    size_t cost = popcount(scratch);
    if (mask == 0) naive_cost = cost;  // all-P
    if (cost < best_cost) {
      best_cost = cost;
      best_mask = mask;
    }
  }

  RebuildPlan plan;
  plan.cost = best_cost;
  plan.naive_all_p_cost = naive_cost;
  scratch = fixed;
  for (int k = 0; k < ndata; ++k) {
    bool q = (best_mask >> k) & 1;
    plan.choices.push_back(q ? 'Q' : 'P');
    const auto& m = q ? qmask[k] : pmask[k];
    for (size_t w = 0; w < words; ++w) scratch[w] |= m[w];
  }
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      size_t b = bit_of(r, c);
      if (scratch[b >> 6] & (uint64_t(1) << (b & 63))) plan.reads.insert({r, c});
    }
  return plan;
}

// ---------------------------------------------------------------------------
// HVPC

StripeLayout hvpc_layout(int k1, int k2) {
  if (k1 < 1 || k2 < 1) throw std::invalid_argument("hvpc: k1,k2 >= 1");
  StripeLayout layout(k1 + 1, k2 + 1);
  for (int r = 0; r < k1; ++r) layout.role(r, k2) = {RoleKind::ParityRow, r};
  for (int c = 0; c < k2; ++c) layout.role(k1, c) = {RoleKind::LocalParity, c};
  layout.role(k1, k2) = {RoleKind::GlobalParity, 0};
  for (int r = 0; r < k1; ++r) {
    ParityGroup g;
    g.parity = {r, k2};
    for (int c = 0; c < k2; ++c) g.members.push_back({r, c});
    layout.add_group(std::move(g));
  }
  for (int c = 0; c < k2; ++c) {
    ParityGroup g;
    g.parity = {k1, c};
    for (int r = 0; r < k1; ++r) g.members.push_back({r, c});
    layout.add_group(std::move(g));
  }
  // The corner equals the XOR of the H parities and of the V parities;
  // both equations are carried so the decoder can peel through either.
  ParityGroup corner_h;
  corner_h.parity = {k1, k2};
  for (int r = 0; r < k1; ++r) corner_h.members.push_back({r, k2});
  layout.add_group(std::move(corner_h));
  ParityGroup corner_v;
  corner_v.parity = {k1, k2};
  for (int c = 0; c < k2; ++c) corner_v.members.push_back({k1, c});
  layout.add_group(std::move(corner_v));
  return layout;
}

EncodeResult hvpc_encode(int k1, int k2, const std::vector<Block>& data) {
  StripeLayout layout = hvpc_layout(k1, k2);
  if (data.size() != size_t(k1) * k2)
    throw std::invalid_argument("hvpc_encode: data must be k1 x k2");
  const size_t block_len = data.empty() ? 0 : data[0].size();
  std::vector<Block> grid(size_t(k1 + 1) * (k2 + 1), Block(block_len, 0));
  for (int r = 0; r < k1; ++r)
    for (int c = 0; c < k2; ++c) grid[layout.idx(r, c)] = data[size_t(r) * k2 + c];
  size_t ops = layout.encode(grid);
  return {std::move(layout), std::move(grid), ops};
}

EncodeResult hvpc_upcode(const std::vector<EncodeResult>& parts) {
  if (parts.size() != 3) throw std::invalid_argument("upcode expects 3 parts");
  for (const auto& p : parts)
    if (p.layout.rows() != 3 || p.layout.cols() != 6)
      throw std::invalid_argument("upcode parts must be 2x5-data HVPC stripes");
  const size_t block_len = parts[0].grid[0].size();
  for (const auto& p : parts)
    for (const auto& b : p.grid)
      if (b.size() != block_len)
        throw std::invalid_argument("upcode parts must share block length");

  StripeLayout layout = hvpc_layout(6, 5);
  std::vector<Block> grid(size_t(7) * 6, Block(block_len, 0));
  size_t ops = 0;
  for (int part = 0; part < 3; ++part) {
    const auto& src = parts[size_t(part)];
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 6; ++c)  // data columns and the H parity copied
        grid[layout.idx(part * 2 + r, c)] = src.grid[src.layout.idx(r, c)];
  }
  for (int c = 0; c < 6; ++c) {  // merged V row (and corner) is the XOR
    Block sum = parts[0].grid[parts[0].layout.idx(2, c)];
    for (int part = 1; part < 3; ++part) {
      xor_into(sum, parts[size_t(part)].grid[parts[size_t(part)].layout.idx(2, c)]);
      ++ops;
    }
    grid[layout.idx(6, c)] = std::move(sum);
  }
  return {std::move(layout), std::move(grid), ops};
}

// ---------------------------------------------------------------------------
// LRC

namespace {

// Determinant conditions from the two-global construction, tracked
// incrementally: values distinct and nonzero within a group; across any
// two groups the value sets, and for two globals also the pair-sum sets,
// must not meet each other or the other group's values.
struct LrcSearch {
  int k_per_group, groups, globals;
  std::vector<std::vector<uint8_t>> values;    // per group
  std::vector<std::set<uint8_t>> pair_sums;    // per group

  bool admissible(int g, uint8_t v) const {
    if (v == 0) return false;
    for (uint8_t w : values[g])
      if (w == v) return false;
    if (globals < 2) return true;
    for (int o = 0; o < groups; ++o) {
      if (o == g) continue;
      for (uint8_t w : values[o])
        if (w == v) return false;
      if (pair_sums[o].count(v)) return false;  // beta = alpha_i + alpha_j
      for (uint8_t w : values[g]) {
        uint8_t s = uint8_t(v ^ w);              // new pair sum in group g
        if (pair_sums[o].count(s)) return false; // sum collision across groups
        for (uint8_t u : values[o])
          if (u == s) return false;              // alpha = beta_s + beta_t
      }
    }
    return true;
  }

  void push(int g, uint8_t v) {
    for (uint8_t w : values[g]) pair_sums[g].insert(uint8_t(v ^ w));
    values[g].push_back(v);
  }

  void pop(int g) {
    uint8_t v = values[g].back();
    values[g].pop_back();
    for (uint8_t w : values[g]) pair_sums[g].erase(uint8_t(v ^ w));
  }

  bool dfs(int cell) {
    if (cell == k_per_group * groups) return true;
    int g = cell / k_per_group;
    for (unsigned v = 1; v < 256; ++v) {
      if (!admissible(g, uint8_t(v))) continue;
      push(g, uint8_t(v));
      if (dfs(cell + 1)) return true;
      pop(g);
    }
    return false;
  }
};

LrcCode assemble_lrc(int k_per_group, int groups, int globals,
                     const std::vector<uint8_t>& coeffs) {
  const int n = k_per_group * groups + groups + globals;
  LrcCode code;
  code.k_per_group = k_per_group;
  code.groups = groups;
  code.globals = globals;
  code.coeffs = coeffs;
  code.layout = StripeLayout(1, n);
  std::vector<Cell> data_cells;
  int col = 0;
  for (int g = 0; g < groups; ++g) {
    for (int i = 0; i < k_per_group; ++i) {
      code.layout.role(0, col) = {RoleKind::Data, g};
      data_cells.push_back({0, col});
      ++col;
    }
    code.layout.role(0, col) = {RoleKind::LocalParity, g};
    ++col;
  }
  std::vector<Cell> global_cells;
  for (int j = 0; j < globals; ++j) {
    code.layout.role(0, col) = {RoleKind::GlobalParity, j};
    global_cells.push_back({0, col});
    ++col;
  }
  for (int g = 0; g < groups; ++g) {
    ParityGroup pg;
    pg.parity = {0, g * (k_per_group + 1) + k_per_group};
    for (int i = 0; i < k_per_group; ++i)
      pg.members.push_back(data_cells[size_t(g) * k_per_group + i]);
    code.layout.add_group(std::move(pg));
  }
  for (int j = 0; j < globals; ++j) {
    ParityGroup pg;
    pg.parity = global_cells[size_t(j)];
    for (size_t t = 0; t < data_cells.size(); ++t) {
      pg.members.push_back(data_cells[t]);
      pg.coeffs.push_back(gf::pow(coeffs[t], unsigned(j + 1)));
    }
    code.layout.add_group(std::move(pg));
  }
  code.layout.validate();
  return code;
}

}  // namespace

LrcCode lrc_build(int k_per_group, int groups, int globals) {
  if (k_per_group < 1 || groups < 1)
    throw std::invalid_argument("lrc: group shape invalid");
  if (globals < 1 || globals > 2)
    throw std::invalid_argument("lrc: globals must be 1 or 2");
  LrcSearch search{k_per_group, groups, globals,
                   std::vector<std::vector<uint8_t>>(size_t(groups)),
                   std::vector<std::set<uint8_t>>(size_t(groups))};
  if (!search.dfs(0))
    throw SearchExhaustedError("lrc: no coefficient assignment in GF(256)");
  std::vector<uint8_t> coeffs;
  for (const auto& vs : search.values)
    coeffs.insert(coeffs.end(), vs.begin(), vs.end());
  return assemble_lrc(k_per_group, groups, globals, coeffs);
}

LrcCode azure_lrc_layout(int n, int k, int r) {
  if (r < 1 || k < 1 || k % r != 0)
    throw std::invalid_argument("azure lrc: r must divide k");
  const int groups = k / r;
  const int globals = n - k - groups;
  if (globals < 0) throw std::invalid_argument("azure lrc: n too small");
  if (globals >= 1 && globals <= 2) return lrc_build(r, groups, globals);
  // With zero or many globals assign Vandermonde powers; exact for the
  // repair-cost metrics which do not evaluate coefficients.
  std::vector<uint8_t> coeffs;
  for (int t = 0; t < k; ++t) coeffs.push_back(gf::exp_table()[t]);
  LrcCode code = assemble_lrc(r, groups, std::max(globals, 0), coeffs);
  return code;
}

PatternCount count_decodable_patterns(const StripeLayout& layout, int failures) {
  std::vector<Cell> cells;
  for (int r = 0; r < layout.rows(); ++r)
    for (int c = 0; c < layout.cols(); ++c) {
      RoleKind k = layout.role(r, c).kind;
      if (k != RoleKind::Spare && k != RoleKind::Unused) cells.push_back({r, c});
    }
  const int n = int(cells.size());
  if (failures < 0 || failures > n)
    throw std::invalid_argument("failure count out of range");
  PatternCount count;
  std::vector<int> comb(static_cast<size_t>(failures));
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    ErasurePattern e;
    for (int idx : comb) e.cells.insert(cells[size_t(idx)]);
    ++count.total;
    if (layout.recoverable(e)) ++count.decodable;
    int i = failures - 1;
    while (i >= 0 && comb[size_t(i)] == n - failures + i) --i;
    if (i < 0) break;
    ++comb[size_t(i)];
    for (int j = i + 1; j < failures; ++j) comb[size_t(j)] = comb[size_t(j - 1)] + 1;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Repair metrics

Fraction make_fraction(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("fraction: zero denominator");
  long long g = std::gcd(num < 0 ? -num : num, den < 0 ? -den : den);
  if (g == 0) g = 1;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num / g, den / g};
}

namespace {

std::vector<Cell> equation_cells(const ParityGroup& g) {
  std::vector<Cell> cells = g.members;
  cells.push_back(g.parity);
  return cells;
}

}  // namespace

RepairCostReport repair_metrics(const StripeLayout& layout) {
  std::vector<Cell> cells;
  for (int r = 0; r < layout.rows(); ++r)
    for (int c = 0; c < layout.cols(); ++c) {
      RoleKind k = layout.role(r, c).kind;
      if (k != RoleKind::Spare && k != RoleKind::Unused) cells.push_back({r, c});
    }

  // Per cell: the read sets of every equation it appears in.
  std::map<Cell, std::vector<std::set<Cell>>> routes;
  for (const auto& g : layout.groups()) {
    auto eq = equation_cells(g);
    for (const auto& cell : eq) {
      std::set<Cell> reads(eq.begin(), eq.end());
      reads.erase(cell);
      routes[cell].push_back(std::move(reads));
    }
  }

  long long total_cost = 0, data_cost = 0, k_data = 0;
  for (const auto& cell : cells) {
    auto it = routes.find(cell);
    if (it == routes.end() || it->second.empty())
      throw std::invalid_argument("repair_metrics: cell has no repair equation");
    size_t cheapest = SIZE_MAX;
    for (const auto& rs : it->second) cheapest = std::min(cheapest, rs.size());
    total_cost += (long long)cheapest;
    if (layout.role(cell.row, cell.col).kind == RoleKind::Data) {
      data_cost += (long long)cheapest;
      ++k_data;
    }
  }
  const long long n = (long long)cells.size();
  RepairCostReport rep;
  rep.n_blocks = n;
  rep.k_data = k_data;
  rep.arc = make_fraction(total_cost, n);
  rep.nrc = make_fraction(total_cost, k_data);
  rep.drc = make_fraction(data_cost, k_data);
  rep.adrc = rep.drc;

  // Two-block cost: cheapest distinct reads to recover both, either
  // sequentially through single equations (the first repaired block may be
  // consumed by the second route without a read) or by solving two
  // equations jointly.
  std::vector<std::map<Cell, uint8_t>> eq_coeffs;
  for (const auto& g : layout.groups()) {
    std::map<Cell, uint8_t> eq;
    eq[g.parity] = uint8_t(eq[g.parity] ^ 1);
    for (size_t i = 0; i < g.members.size(); ++i)
      eq[g.members[i]] = uint8_t(eq[g.members[i]] ^ g.coeffs[i]);
    eq_coeffs.push_back(std::move(eq));
  }
  long long pair_total = 0;
  bool pair_ok = true;
  for (size_t a = 0; a < cells.size() && pair_ok; ++a)
    for (size_t b = a + 1; b < cells.size() && pair_ok; ++b) {
      size_t best = SIZE_MAX;
      const Cell &ca = cells[a], &cb = cells[b];
      auto try_order = [&](const Cell& first, const Cell& second) {
        for (const auto& r1 : routes[first]) {
          if (r1.count(second)) continue;  // still missing
          for (const auto& r2 : routes[second]) {
            std::set<Cell> uni = r1;
            for (const auto& cell : r2)
              if (!(cell == first)) uni.insert(cell);
            best = std::min(best, uni.size());
          }
        }
      };
      try_order(ca, cb);
      try_order(cb, ca);
      for (size_t e1 = 0; e1 < eq_coeffs.size(); ++e1)
        for (size_t e2 = e1 + 1; e2 < eq_coeffs.size(); ++e2) {
          auto coeff = [&](size_t e, const Cell& cell) -> uint8_t {
            auto it = eq_coeffs[e].find(cell);
            return it == eq_coeffs[e].end() ? 0 : it->second;
          };
          uint8_t det = uint8_t(gf::mul(coeff(e1, ca), coeff(e2, cb)) ^
                                gf::mul(coeff(e1, cb), coeff(e2, ca)));
          if (det == 0) continue;
          std::set<Cell> reads;
          for (const auto& [cell, c] : eq_coeffs[e1])
            if (c != 0 && !(cell == ca) && !(cell == cb)) reads.insert(cell);
          for (const auto& [cell, c] : eq_coeffs[e2])
            if (c != 0 && !(cell == ca) && !(cell == cb)) reads.insert(cell);
          best = std::min(best, reads.size());
        }
      if (best == SIZE_MAX) {
        pair_ok = false;
        break;
      }
      pair_total += (long long)best;
    }
  if (pair_ok && n >= 2)
    rep.arc2 = make_fraction(pair_total, n * (n - 1) / 2);
  return rep;
}

// ---------------------------------------------------------------------------
// PMDS / SD

namespace {

template <typename Fn>
bool for_each_combination(int n, int k, Fn&& fn) {
  // fn receives the selected indices; returns false to abort.
  std::vector<int> comb(static_cast<size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  if (k == 0) return fn(comb);
  if (k > n) return true;
  while (true) {
    if (!fn(comb)) return false;
    int i = k - 1;
    while (i >= 0 && comb[size_t(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++comb[size_t(i)];
    for (int j = i + 1; j < k; ++j) comb[size_t(j)] = comb[size_t(j - 1)] + 1;
  }
}

}  // namespace

PmdsReport pmds_sd_check(const StripeLayout& layout, int m, int s) {
  const int rows = layout.rows(), cols = layout.cols();
  if (rows > 6 || cols > 8)
    throw std::length_error("pmds_sd_check: grid capped at 6x8");
  if (m < 0 || m >= cols || s < 0)
    throw std::invalid_argument("pmds_sd_check: bad m/s");

  PmdsReport rep;

  // --- SD: any m whole columns plus any s extra cells.
  rep.sd = true;
  for_each_combination(cols, m, [&](const std::vector<int>& col_sel) {
    std::set<Cell> base;
    std::vector<Cell> rest;
    std::set<int> chosen(col_sel.begin(), col_sel.end());
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (chosen.count(c))
          base.insert({r, c});
        else
          rest.push_back({r, c});
      }
    return for_each_combination(int(rest.size()), s, [&](const std::vector<int>& extra) {
      ErasurePattern e;
      e.cells = base;
      for (int idx : extra) e.cells.insert(rest[size_t(idx)]);
      ++rep.sd_patterns;
      if (!layout.recoverable(e)) {
        rep.sd = false;
        rep.sd_witness = e;
        return false;
      }
      return true;
    });
  });

  // --- PMDS: any m cells in every row plus any s extra cells.
  rep.pmds = true;
  std::vector<std::vector<int>> row_choice(static_cast<size_t>(rows));
  std::function<bool(int)> rec = [&](int row) -> bool {
    if (row == rows) {
      std::set<Cell> base;
      std::vector<Cell> rest;
      for (int r = 0; r < rows; ++r) {
        std::set<int> chosen(row_choice[size_t(r)].begin(), row_choice[size_t(r)].end());
        for (int c = 0; c < cols; ++c) {
          if (chosen.count(c))
            base.insert({r, c});
          else
            rest.push_back({r, c});
        }
      }
      return for_each_combination(int(rest.size()), s, [&](const std::vector<int>& extra) {
        ErasurePattern e;
        e.cells = base;
        for (int idx : extra) e.cells.insert(rest[size_t(idx)]);
        ++rep.pmds_patterns;
        if (!layout.recoverable(e)) {
          rep.pmds = false;
          rep.pmds_witness = e;
          return false;
        }
        return true;
      });
    }
    return for_each_combination(cols, m, [&](const std::vector<int>& sel) {
      row_choice[size_t(row)] = sel;
      return rec(row + 1);
    });
  };
  rec(0);

  rep.cls = rep.pmds ? PmdsClass::PMDS
                     : (rep.sd ? PmdsClass::SDOnly : PmdsClass::Neither);
  return rep;
}

StripeLayout sd_code_build(int rows, int cols, int s) {
  if (rows < 1 || cols < 2 + s)
    throw std::invalid_argument("sd_code_build: grid too small");
  if (rows > 6 || cols > 8)
    throw std::length_error("sd_code_build: grid capped at 6x8");

  auto build = [&](int shift) {
    StripeLayout layout(rows, cols);
    std::vector<Cell> data;
    for (int r = 0; r < rows; ++r) {
      layout.role(r, cols - 1) = {RoleKind::ParityRow, r};
      for (int c = 0; c < cols - 1; ++c) {
        if (r == rows - 1 && c >= cols - 1 - s) {
          layout.role(r, c) = {RoleKind::GlobalParity, c - (cols - 1 - s)};
        } else {
          layout.role(r, c) = {RoleKind::Data, 0};
          data.push_back({r, c});
        }
      }
    }
    // Globals over all data, Vandermonde on shifted powers of alpha.
    for (int j = 0; j < s; ++j) {
      ParityGroup g;
      g.parity = {rows - 1, cols - 1 - s + j};
      for (size_t t = 0; t < data.size(); ++t) {
        g.members.push_back(data[t]);
        uint8_t base = gf::exp_table()[(t + size_t(shift)) % 255];
        g.coeffs.push_back(gf::pow(base, unsigned(j + 1)));
      }
      layout.add_group(std::move(g));
    }
    // Row parities cover everything else in the row, globals included.
    for (int r = 0; r < rows; ++r) {
      ParityGroup g;
      g.parity = {r, cols - 1};
      for (int c = 0; c < cols - 1; ++c) g.members.push_back({r, c});
      layout.add_group(std::move(g));
    }
    layout.validate();
    return layout;
  };

  for (int shift = 0; shift < 255; ++shift) {
    StripeLayout layout = build(shift);
    PmdsReport rep = pmds_sd_check(layout, 1, s);
    if (rep.sd) return layout;
  }
  throw SearchExhaustedError("sd_code_build: no SD assignment found");
}

bool xor_recoverable(const StripeLayout& layout, const ErasurePattern& erased) {
  for (const auto& g : layout.groups())
    for (uint8_t c : g.coeffs)
      if (c != 1)
        throw std::invalid_argument("xor_recoverable: layout is not pure XOR");
  return layout.recoverable(erased);
}

// ---------------------------------------------------------------------------
// Xorbas

XorbasCode xorbas_build() {
  XorbasCode code;
  code.rs_rows.assign(4, std::vector<uint8_t>(10));
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 10; ++i)
      code.rs_rows[size_t(j)][size_t(i)] = gf::pow(gf::exp_table()[1], unsigned(j * i));
  // Deterministic scan for d with at least two nonzero entries (a single
  // term would just rename a stored parity) making every c_i nonzero.
  std::vector<uint8_t> best_d;
  for (unsigned d0 = 0; d0 < 4 && best_d.empty(); ++d0)
    for (unsigned d1 = 0; d1 < 4 && best_d.empty(); ++d1)
      for (unsigned d2 = 0; d2 < 4 && best_d.empty(); ++d2)
        for (unsigned d3 = 0; d3 < 4 && best_d.empty(); ++d3) {
          int nz = (d0 != 0) + (d1 != 0) + (d2 != 0) + (d3 != 0);
          if (nz < 2) continue;
          std::vector<uint8_t> d = {uint8_t(d0), uint8_t(d1), uint8_t(d2),
                                    uint8_t(d3)};
          bool ok = true;
          for (int i = 0; i < 10 && ok; ++i) {
            uint8_t c = 0;
            for (int j = 0; j < 4; ++j)
              c ^= gf::mul(d[size_t(j)], code.rs_rows[size_t(j)][size_t(i)]);
            if (c == 0) ok = false;
          }
          if (ok) best_d = d;
        }
  if (best_d.empty())
    throw SearchExhaustedError("xorbas: no implied-parity combination found");
  code.parity_coeffs = best_d;
  code.data_coeffs.assign(10, 0);
  for (int i = 0; i < 10; ++i) {
    uint8_t c = 0;
    for (int j = 0; j < 4; ++j)
      c ^= gf::mul(best_d[size_t(j)], code.rs_rows[size_t(j)][size_t(i)]);
    code.data_coeffs[size_t(i)] = c;
  }
  return code;
}

Block xorbas_residual(const XorbasCode& code,
                      const std::vector<Block>& data_blocks) {
  if (data_blocks.size() != 10)
    throw std::invalid_argument("xorbas: expected 10 data blocks");
  const size_t len = data_blocks[0].size();
  Block s1(len, 0), s2(len, 0), s3(len, 0);
  for (int i = 0; i < 5; ++i)
    mul_add_into(s1, data_blocks[size_t(i)], code.data_coeffs[size_t(i)]);
  for (int i = 5; i < 10; ++i)
    mul_add_into(s2, data_blocks[size_t(i)], code.data_coeffs[size_t(i)]);
  for (int j = 0; j < 4; ++j) {
    Block pj(len, 0);
    for (int i = 0; i < 10; ++i)
      mul_add_into(pj, data_blocks[size_t(i)], code.rs_rows[size_t(j)][size_t(i)]);
    mul_add_into(s3, pj, code.parity_coeffs[size_t(j)]);
  }
  Block residual = s1;
  xor_into(residual, s2);
  xor_into(residual, s3);
  return residual;
}

// ---------------------------------------------------------------------------
// Hybrid XOR arrays

StripeLayout lsi_layout(int n) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("lsi_layout: need an even disk count >= 4");
  const int nd = n / 2;  // data disks at even columns, parities at odd
  StripeLayout l(1, n);
  for (int i = 0; i < nd; ++i) {
    l.role(0, 2 * i + 1) = {RoleKind::LocalParity, i};
    ParityGroup g;
    g.parity = {0, 2 * i + 1};
    g.members.push_back({0, 2 * i});
    g.members.push_back({0, (2 * i + 2) % n});
    l.add_group(std::move(g));
  }
  return l;
}

StripeLayout sspiral_layout() {
  StripeLayout l(1, 8);  // data on columns 0..3, parities on 4..7
  const int triples[4][3] = {{0, 1, 2}, {1, 2, 3}, {2, 3, 0}, {3, 0, 1}};
  for (int j = 0; j < 4; ++j) {
    l.role(0, 4 + j) = {RoleKind::LocalParity, j};
    ParityGroup g;
    g.parity = {0, 4 + j};
    for (int d : triples[j]) g.members.push_back({0, d});
    l.add_group(std::move(g));
  }
  return l;
}

// ---------------------------------------------------------------------------
// Hamming locate

std::optional<int> hamming_locate(const std::set<int>& syndrome) {
  int sum = 0;
  for (int pos : syndrome) {
    if (pos <= 0 || (pos & (pos - 1)) != 0)
      throw std::invalid_argument("hamming: syndrome positions must be powers of two");
    sum += pos;
  }
  if (sum == 0) return std::nullopt;
  return sum;
}

}  // namespace raidlab
