#include "core/clustered.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "core/rng.hpp"

namespace raidlab {

using nlohmann::json;

int ClusteredLayout::pg_count() const {
  int maxpg = -1;
  for (const auto& s : strips) maxpg = std::max(maxpg, s.pg);
  return maxpg + 1;
}

std::string ClusteredLayout::to_json() const {
  json j;
  j["n_disks"] = n_disks;
  j["group_size"] = group_size;
  j["rows"] = rows;
  json cells = json::array();
  for (const auto& s : strips) {
    const char* role = s.role == StripRole::Data     ? "data"
                       : s.role == StripRole::Parity ? "parity"
                       : s.role == StripRole::Spare  ? "spare"
                                                     : "unused";
    cells.push_back({{"pg", s.pg}, {"pos", s.pos}, {"role", role}});
  }
  j["strips"] = std::move(cells);
  return j.dump();
}

ClusteredLayout ClusteredLayout::from_json(const std::string& text) {
  json j = json::parse(text);
  ClusteredLayout l;
  l.n_disks = j.at("n_disks").get<int>();
  l.group_size = j.at("group_size").get<int>();
  l.rows = j.at("rows").get<int>();
  for (const auto& cell : j.at("strips")) {
    ClusteredLayout::Strip s;
    s.pg = cell.at("pg").get<int>();
    s.pos = cell.value("pos", 0);
    std::string role = cell.at("role").get<std::string>();
    s.role = role == "data"     ? StripRole::Data
             : role == "parity" ? StripRole::Parity
             : role == "spare"  ? StripRole::Spare
                                : StripRole::Unused;
    l.strips.push_back(s);
  }
  if (l.strips.size() != size_t(l.rows) * l.n_disks)
    throw std::invalid_argument("clustered layout: strip count mismatch");
  return l;
}

// ---------------------------------------------------------------------------
// BIBD

BIBDDesign bibd_builtin_10_4() {
  BIBDDesign d;
  d.n = 10;
  d.k = 4;
  d.b = 15;
  d.r = 6;
  d.lambda = 2;
  // Blocks transcribed from the published per-disk table; the disk-5 entry
  // printed as "0" is block 10, the unique value closing the design.
  const int blocks[15][4] = {
      {1, 2, 5, 8},  {1, 3, 6, 9},  {1, 4, 7, 10}, {1, 2, 3, 4},
      {3, 4, 5, 8},  {2, 4, 6, 9},  {2, 3, 7, 10}, {1, 5, 6, 7},
      {2, 6, 7, 8},  {3, 5, 7, 9},  {4, 5, 6, 10}, {1, 8, 9, 10},
      {2, 5, 9, 10}, {3, 6, 8, 10}, {4, 7, 8, 9}};
  for (const auto& blk : blocks) {
    std::vector<int> zero_based;
    for (int disk : blk) zero_based.push_back(disk - 1);
    d.blocks.push_back(std::move(zero_based));
  }
  return d;
}

BIBDDesign bibd_complete(int n, int k) {
  if (k < 2 || k > n) throw std::invalid_argument("bibd_complete: bad shape");
  BIBDDesign d;
  d.n = n;
  d.k = k;
  std::vector<int> comb(static_cast<size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    d.blocks.push_back(comb);
    int i = k - 1;
    while (i >= 0 && comb[size_t(i)] == n - k + i) --i;
    if (i < 0) break;
    ++comb[size_t(i)];
    for (int j = i + 1; j < k; ++j) comb[size_t(j)] = comb[size_t(j - 1)] + 1;
  }
  d.b = int(d.blocks.size());
  d.r = d.b * k / n;
  d.lambda = d.r * (k - 1) / (n - 1);
  return d;
}

BIBDReport bibd_check(const BIBDDesign& d) {
  BIBDReport rep;
  auto complain = [&](const std::string& msg) { rep.violations.push_back(msg); };
  if (int(d.blocks.size()) != d.b) complain("block count differs from b");
  for (const auto& blk : d.blocks)
    if (int(blk.size()) != d.k) complain("block size differs from k");
  if (d.b * d.k != d.n * d.r) complain("bk = nr violated");
  if (d.r * (d.k - 1) != d.lambda * (d.n - 1)) complain("r(k-1) = lambda(n-1) violated");
  std::vector<int> per_disk(size_t(d.n), 0);
  std::map<std::pair<int, int>, int> per_pair;
  for (const auto& blk : d.blocks) {
    for (size_t i = 0; i < blk.size(); ++i) {
      if (blk[i] < 0 || blk[i] >= d.n) {
        complain("disk id out of range");
        continue;
      }
      ++per_disk[size_t(blk[i])];
      for (size_t j = i + 1; j < blk.size(); ++j) {
        int a = std::min(blk[i], blk[j]), b = std::max(blk[i], blk[j]);
        ++per_pair[{a, b}];
      }
    }
  }
  for (int disk = 0; disk < d.n; ++disk)
    if (per_disk[size_t(disk)] != d.r)
      complain("disk " + std::to_string(disk) + " appears in " +
               std::to_string(per_disk[size_t(disk)]) + " blocks, expected r");
  for (int a = 0; a < d.n; ++a)
    for (int b = a + 1; b < d.n; ++b) {
      auto it = per_pair.find({a, b});
      int count = it == per_pair.end() ? 0 : it->second;
      if (count != d.lambda)
        complain("pair (" + std::to_string(a) + "," + std::to_string(b) +
                 ") co-occurs " + std::to_string(count) + " times, expected lambda");
    }
  rep.valid = rep.violations.empty();
  return rep;
}

ClusteredLayout bibd_layout(const BIBDDesign& d) {
  ClusteredLayout l;
  l.n_disks = d.n;
  l.group_size = d.k;
  l.rows = d.r;
  l.strips.assign(size_t(d.r) * d.n, {});
  std::vector<int> fill(size_t(d.n), 0);  // next free row per disk
  for (size_t pg = 0; pg < d.blocks.size(); ++pg) {
    bool first = true;
    int pos = 0;
    for (int disk : d.blocks[pg]) {
      int row = fill[size_t(disk)]++;
      if (row >= d.r) throw std::invalid_argument("bibd_layout: design overflows segment");
      l.at(row, disk) = {int(pg), pos, first ? StripRole::Parity : StripRole::Data};
      first = false;
      ++pos;
    }
  }
  return l;
}

// ---------------------------------------------------------------------------
// NRP

std::vector<int> nrp_permute_rows(const std::vector<int>& perm,
                                  const std::vector<int>& row) {
  if (perm.size() != row.size()) throw std::invalid_argument("permutation size");
  std::vector<int> out(row.size());
  for (size_t j = 0; j < row.size(); ++j) out[size_t(perm[j])] = row[j];
  return out;
}

namespace {

std::vector<int> durstenfeld(int n, Xoshiro256& rng) {
  std::vector<int> p(static_cast<size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i >= 1; --i) {
    int k = int(rng.next_below(uint64_t(i) + 1));
    std::swap(p[size_t(i)], p[size_t(k)]);
  }
  return p;
}

ClusteredLayout sequential_fill(int n, int G, int rows) {
  // PG i occupies strips iG .. iG+G-1 row-major; parity is the last strip.
  ClusteredLayout l;
  l.n_disks = n;
  l.group_size = G;
  l.rows = rows;
  l.strips.assign(size_t(rows) * n, {});
  long long total = (long long)rows * n;
  for (long long s = 0; s < total; ++s) {
    int pg = int(s / G);
    int pos = int(s % G);
    l.strips[size_t(s)] = {pg, pos, pos == G - 1 ? StripRole::Parity : StripRole::Data};
  }
  return l;
}

}  // namespace

ClusteredLayout nrp_layout(int n, int G, uint64_t seed, int row_groups) {
  if (G >= n || G < 2) throw std::invalid_argument("nrp: need 2 <= G < n");
  if (row_groups < 1) throw std::invalid_argument("nrp: need row groups");
  // lcm(n,G)/n rows keep parity groups inside one permutation scope; the
  // published K = gcd(n,G) agrees for the (10,4) example but misaligns
  // whenever G does not divide n * gcd(n,G).
  const int K = G / std::gcd(n, G);
  const int rows = K * row_groups;
  ClusteredLayout l = sequential_fill(n, G, rows);
  for (int grp = 0; grp < row_groups; ++grp) {
    Xoshiro256 rng = Xoshiro256::stream(seed, uint64_t(grp));
    std::vector<int> perm = durstenfeld(n, rng);
    for (int r = grp * K; r < (grp + 1) * K; ++r) {
      std::vector<ClusteredLayout::Strip> old(static_cast<size_t>(n));
      for (int c = 0; c < n; ++c) old[size_t(c)] = l.at(r, c);
      for (int c = 0; c < n; ++c) l.at(r, perm[size_t(c)]) = old[size_t(c)];
    }
  }
  return l;
}

// ---------------------------------------------------------------------------
// Shifted placement

ClusteredLayout shifted_layout(int n, int G, int cycles) {
  if (G > n || G < 2) throw std::invalid_argument("shifted: need 2 <= G <= n");
  if (cycles < 1) throw std::invalid_argument("shifted: need cycles >= 1");
  const int m = std::gcd(n, G);          // periods per balance cycle
  const int K = G / m;                   // rows per period (lcm(n,G)/n)
  const long long L = (long long)K * n;  // strips per period
  const int pgs_per_period = int(L / G);
  const int rows = K * m * cycles;
  ClusteredLayout l;
  l.n_disks = n;
  l.group_size = G;
  l.rows = rows;
  l.strips.assign(size_t(rows) * n, {});
  for (int r = 0; r < rows; ++r) {
    int period = r / K;
    int shift = period % m;  // one-column rotation per period
    int rp = r % K;
    for (int c = 0; c < n; ++c) {
      long long f = (long long)rp * n + c;
      long long s = (f + shift) % L;
      int pg = period * pgs_per_period + int(s / G);
      int pos = int(s % G);
      l.at(r, c) = {pg, pos, pos == G - 1 ? StripRole::Parity : StripRole::Data};
    }
  }
  return l;
}

StripeLayout to_stripe_layout(const ClusteredLayout& l) {
  StripeLayout out(l.rows, l.n_disks);
  const int npg = l.pg_count();
  std::vector<Cell> parity(static_cast<size_t>(npg), Cell{-1, -1});
  std::vector<std::vector<std::pair<int, Cell>>> members(static_cast<size_t>(npg));
  for (int r = 0; r < l.rows; ++r)
    for (int c = 0; c < l.n_disks; ++c) {
      const auto& s = l.at(r, c);
      switch (s.role) {
        case StripRole::Parity:
          out.role(r, c) = {RoleKind::LocalParity, s.pg};
          parity[size_t(s.pg)] = {r, c};
          break;
        case StripRole::Data:
          out.role(r, c) = {RoleKind::Data, s.pg};
          members[size_t(s.pg)].push_back({s.pos, {r, c}});
          break;
        case StripRole::Spare:
          out.role(r, c) = {RoleKind::Spare, 0};
          break;
        case StripRole::Unused:
          out.role(r, c) = {RoleKind::Unused, 0};
          break;
      }
    }
  for (int pg = 0; pg < npg; ++pg) {
    if (parity[size_t(pg)].row < 0)
      throw std::invalid_argument("clustered layout: parity group without parity");
    ParityGroup g;
    g.parity = parity[size_t(pg)];
    std::sort(members[size_t(pg)].begin(), members[size_t(pg)].end());
    for (const auto& [pos, cell] : members[size_t(pg)]) g.members.push_back(cell);
    out.add_group(std::move(g));
  }
  out.validate();
  return out;
}

ClusteredLayout raid5_clustered(int n, int rows) {
  ClusteredLayout l;
  l.n_disks = n;
  l.group_size = n;
  l.rows = rows;
  l.strips.assign(size_t(rows) * n, {});
  for (int r = 0; r < rows; ++r) {
    int pdisk = ((n - 1 - r) % n + n) % n;
    for (int j = 0; j < n - 1; ++j)
      l.at(r, (pdisk + 1 + j) % n) = {r, j, StripRole::Data};
    l.at(r, pdisk) = {r, n - 1, StripRole::Parity};
  }
  return l;
}

ClusteredLayout raid4_clustered(int n, int rows) {
  ClusteredLayout l;
  l.n_disks = n;
  l.group_size = n;
  l.rows = rows;
  l.strips.assign(size_t(rows) * n, {});
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < n; ++c)
      l.at(r, c) = {r, c == 0 ? n - 1 : c - 1,
                    c == 0 ? StripRole::Parity : StripRole::Data};
  return l;
}

// ---------------------------------------------------------------------------
// Properties

LayoutProperties layout_properties(const ClusteredLayout& l) {
  LayoutProperties props;
  const int n = l.n_disks;
  const int npg = l.pg_count();

  // Collect strips per PG.
  std::vector<std::vector<std::pair<int, int>>> pg_strips(static_cast<size_t>(npg));
  for (int r = 0; r < l.rows; ++r)
    for (int c = 0; c < n; ++c) {
      const auto& s = l.at(r, c);
      if (s.pg >= 0 && s.role != StripRole::Unused && s.role != StripRole::Spare)
        pg_strips[size_t(s.pg)].push_back({r, c});
    }

  // (i) single-failure correctness: PG strips on distinct disks.
  props.single_failure_ok = true;
  for (const auto& strips : pg_strips) {
    std::set<int> disks;
    for (auto [r, c] : strips) disks.insert(c);
    if (disks.size() != strips.size()) props.single_failure_ok = false;
  }

  // (ii) parity balance.
  props.parity_counts.assign(size_t(n), 0);
  for (int r = 0; r < l.rows; ++r)
    for (int c = 0; c < n; ++c)
      if (l.at(r, c).role == StripRole::Parity) ++props.parity_counts[size_t(c)];
  int pmin = *std::min_element(props.parity_counts.begin(), props.parity_counts.end());
  int pmax = *std::max_element(props.parity_counts.begin(), props.parity_counts.end());
  props.parity_spread = pmax - pmin;
  props.parity_balanced = props.parity_spread <= 1;

  // (iii) reconstruction-load balance over all single-disk failures.
  props.rebuild_balanced = true;
  props.rebuild_max_min_ratio = 1.0;
  for (int failed = 0; failed < n; ++failed) {
    std::vector<int> reads(size_t(n), 0);
    bool touches = false;
    for (const auto& strips : pg_strips) {
      bool hit = false;
      for (auto [r, c] : strips) hit = hit || (c == failed);
      if (!hit) continue;
      touches = true;
      for (auto [r, c] : strips)
        if (c != failed) ++reads[size_t(c)];
    }
    if (!touches) continue;
    int rmin = INT32_MAX, rmax = 0;
    for (int c = 0; c < n; ++c) {
      if (c == failed) continue;
      rmin = std::min(rmin, reads[size_t(c)]);
      rmax = std::max(rmax, reads[size_t(c)]);
    }
    if (rmax != rmin) props.rebuild_balanced = false;
    double ratio = rmin == 0 ? double(rmax == 0 ? 1 : INT32_MAX)
                             : double(rmax) / double(rmin);
    props.rebuild_max_min_ratio = std::max(props.rebuild_max_min_ratio, ratio);
  }

  // (iv) large-write contiguity: every PG occupies consecutive row-major
  // positions, allowing wrap-around of the whole grid.
  props.large_write_contiguous = true;
  const long long total = (long long)l.rows * n;
  for (const auto& strips : pg_strips) {
    std::vector<long long> flats;
    for (auto [r, c] : strips) flats.push_back((long long)r * n + c);
    std::sort(flats.begin(), flats.end());
    bool consecutive = true;
    for (size_t i = 1; i < flats.size(); ++i)
      if (flats[i] != flats[i - 1] + 1) consecutive = false;
    if (!consecutive && flats.size() >= 2) {
      // wrap-around run ending at total-1 and restarting at 0
      bool wrap = flats.back() == total - 1;
      if (wrap) {
        size_t split = 0;
        while (split + 1 < flats.size() && flats[split + 1] == flats[split] + 1)
          ++split;
        wrap = flats[split + 1] - flats[split] > 1 &&
               flats.back() - flats[split + 1] == (long long)(flats.size() - split - 2) &&
               flats[0] == 0;
      }
      if (!wrap) props.large_write_contiguous = false;
    }
  }

  // (v) maximal read parallelism: any window of up to G consecutive logical
  // data strips touches distinct disks.
  std::vector<int> data_disk_seq;
  {
    // logical order: by (pg, position within pg)
    std::vector<std::vector<std::pair<int, int>>> pg_data(static_cast<size_t>(npg));
    for (int r = 0; r < l.rows; ++r)
      for (int c = 0; c < n; ++c) {
        const auto& s = l.at(r, c);
        if (s.pg >= 0 && s.role == StripRole::Data)
          pg_data[size_t(s.pg)].push_back({s.pos, c});
      }
    for (auto& strips : pg_data) {
      std::sort(strips.begin(), strips.end());
      for (auto [pos, c] : strips) data_disk_seq.push_back(c);
    }
  }
  props.max_read_parallelism = true;
  const int window = std::min<int>(l.group_size, n);
  for (size_t start = 0; start + window <= data_disk_seq.size(); ++start) {
    std::set<int> seen;
    for (int j = 0; j < window; ++j) seen.insert(data_disk_seq[start + size_t(j)]);
    if (int(seen.size()) != window) {
      props.max_read_parallelism = false;
      break;
    }
  }

  props.mapping_note = "table lookup per row group";
  return props;
}

}  // namespace raidlab
