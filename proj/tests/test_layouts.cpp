#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "core/clustered.hpp"
#include "core/copysets.hpp"
#include "core/mirrors.hpp"

using namespace raidlab;

// ---------------------------------------------------------------------------
// BIBD

TEST_CASE("builtin BIBD(10,4) has b=15, r=6, lambda=2 and validates") {
  BIBDDesign d = bibd_builtin_10_4();
  CHECK(d.b == 15);
  CHECK(d.r == 6);
  CHECK(d.lambda == 2);
  BIBDReport rep = bibd_check(d);
  CHECK(rep.valid);
  CHECK(rep.violations.empty());
}

TEST_CASE("rebuilding disk 3 reads exactly 2 strips from each survivor") {
  BIBDDesign d = bibd_builtin_10_4();
  std::vector<int> reads(10, 0);
  int pgs_hit = 0;
  for (const auto& blk : d.blocks) {
    if (std::count(blk.begin(), blk.end(), 2) == 0) continue;  // disk #3
    ++pgs_hit;
    for (int disk : blk)
      if (disk != 2) ++reads[size_t(disk)];
  }
  CHECK(pgs_hit == 6);
  for (int disk = 0; disk < 10; ++disk)
    if (disk != 2) CHECK(reads[size_t(disk)] == 2);
}

TEST_CASE("a duplicated block breaks the pairwise count") {
  BIBDDesign d = bibd_builtin_10_4();
  d.blocks[1] = d.blocks[0];
  BIBDReport rep = bibd_check(d);
  CHECK_FALSE(rep.valid);
}

TEST_CASE("Holland N=5 G=4 design (all 4-subsets) validates with lambda=3") {
  BIBDDesign d = bibd_complete(5, 4);
  CHECK(d.b == 5);
  CHECK(d.r == 4);
  CHECK(d.lambda == 3);
  CHECK(bibd_check(d).valid);
}

TEST_CASE("bibd layout properties: single failure ok, rebuild balanced") {
  ClusteredLayout l = bibd_layout(bibd_builtin_10_4());
  LayoutProperties props = layout_properties(l);
  CHECK(props.single_failure_ok);
  CHECK(props.rebuild_balanced);
  CHECK(props.rebuild_max_min_ratio == doctest::Approx(1.0));
}

// ---------------------------------------------------------------------------
// NRP

TEST_CASE("nrp replays the published (10,4) permutation example") {
  // Initial rows hold strips 0..9 and 10..19 sequentially; applying
  // {0,9,7,6,2,1,5,3,4,8} must reproduce the published final rows.
  std::vector<int> perm = {0, 9, 7, 6, 2, 1, 5, 3, 4, 8};
  std::vector<int> row0(10), row1(10);
  std::iota(row0.begin(), row0.end(), 0);
  std::iota(row1.begin(), row1.end(), 10);
  CHECK(nrp_permute_rows(perm, row0) ==
        std::vector<int>{0, 5, 4, 7, 8, 6, 3, 2, 9, 1});
  CHECK(nrp_permute_rows(perm, row1) ==
        std::vector<int>{10, 15, 14, 17, 18, 16, 13, 12, 19, 11});
}

TEST_CASE("nrp keeps every parity group on distinct disks") {
  for (uint64_t seed : {1ull, 2ull, 3ull, 42ull, 99ull}) {
    for (auto [n, g] : {std::pair{10, 4}, {9, 6}, {7, 3}, {12, 5}}) {
      ClusteredLayout l = nrp_layout(n, g, seed, 6);
      LayoutProperties props = layout_properties(l);
      CHECK(props.single_failure_ok);
      // Same seed reproduces the same layout.
      ClusteredLayout l2 = nrp_layout(n, g, seed, 6);
      CHECK(l.to_json() == l2.to_json());
    }
  }
}

TEST_CASE("nrp (10,4) groups pairs of rows under one permutation") {
  ClusteredLayout l = nrp_layout(10, 4, 7, 2);
  CHECK(l.rows == 4);  // two row groups of lcm(10,4)/10 = 2 rows
  // A PG straddling rows 0 and 1 must still be on 4 distinct disks.
  CHECK(layout_properties(l).single_failure_ok);
}

// ---------------------------------------------------------------------------
// Shifted placement

TEST_CASE("shifted (15,6) reproduces the published parity positions") {
  ClusteredLayout l = shifted_layout(15, 6);
  CHECK(l.rows == 6);  // gcd(15,6)=3 periods of lcm/15=2 rows
  auto parity_at = [&](int r, int c) { return l.at(r, c).role == StripRole::Parity; };
  // period 0 (no shift)
  for (int c : {5, 11}) CHECK(parity_at(0, c));
  for (int c : {2, 8, 14}) CHECK(parity_at(1, c));
  // period 1 (one-column rotation)
  for (int c : {4, 10}) CHECK(parity_at(2, c));
  for (int c : {1, 7, 13}) CHECK(parity_at(3, c));
  // period 2 (two columns)
  for (int c : {3, 9}) CHECK(parity_at(4, c));
  for (int c : {0, 6, 12}) CHECK(parity_at(5, c));
  // wrapped first strip of period 1 (the published D26) lands on the last
  // disk of the period's second row
  CHECK(l.at(3, 14).pg == 5);
  CHECK(l.at(3, 14).role == StripRole::Data);

  LayoutProperties props = layout_properties(l);
  CHECK(props.single_failure_ok);
  CHECK(props.parity_spread == 0);  // one parity per disk per balance cycle
}

TEST_CASE("shifted (10,5): no shift within a period, balance over G periods") {
  ClusteredLayout l = shifted_layout(10, 5);
  CHECK(l.rows == 5);  // gcd = 5 periods of 1 row
  CHECK(l.at(0, 4).role == StripRole::Parity);
  CHECK(l.at(0, 9).role == StripRole::Parity);
  LayoutProperties props = layout_properties(l);
  CHECK(props.single_failure_ok);
  CHECK(props.parity_spread == 0);
}

TEST_CASE("shifted parity spread stays within 1 over a balance cycle") {
  for (auto [n, g] : {std::pair{10, 4}, {11, 4}, {15, 6}, {10, 3}, {12, 4}}) {
    LayoutProperties props = layout_properties(shifted_layout(n, g));
    CHECK(props.single_failure_ok);
    CHECK(props.parity_spread <= 1);
  }
}

// ---------------------------------------------------------------------------
// Holland properties on reference layouts

TEST_CASE("left-symmetric raid5 as degenerate G=N passes all properties") {
  LayoutProperties props = layout_properties(raid5_clustered(5, 5));
  CHECK(props.single_failure_ok);
  CHECK(props.parity_balanced);
  CHECK(props.rebuild_balanced);
  CHECK(props.large_write_contiguous);
  CHECK(props.max_read_parallelism);
}

TEST_CASE("raid4 (all parity on disk 0) fails parity balance") {
  LayoutProperties props = layout_properties(raid4_clustered(5, 10));
  CHECK_FALSE(props.parity_balanced);
  CHECK(props.parity_spread == 10);
}

// ---------------------------------------------------------------------------
// Copysets

TEST_CASE("the two fixed permutations give the six published copysets") {
  std::vector<std::vector<int>> perms = {
      {0, 1, 2, 3, 4, 5, 6, 7, 8}, {0, 3, 6, 1, 4, 7, 2, 5, 8}};
  CopysetPlan plan = copysets_from_permutations(9, 3, perms);
  CHECK(plan.copysets.size() == 6);
  CHECK(plan.scatter_width == 4);
  std::set<std::vector<int>> sets(plan.copysets.begin(), plan.copysets.end());
  std::set<std::vector<int>> expect = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8},
                                       {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
  CHECK(sets == expect);
  Fraction pdl = copyset_pdl_exact(plan, 3);
  CHECK(pdl.num == 1);
  CHECK(pdl.den == 14);  // 6/84
}

TEST_CASE("random replication with S=4 yields 54 copysets and 54/84") {
  CopysetPlan plan = copysets_random_replication(9, 3, 4);
  CHECK(plan.copysets.size() == 54);
  Fraction pdl = copyset_pdl_exact(plan, 3);
  CHECK(pdl.num == 9);  // 54/84 = 9/14
  CHECK(pdl.den == 14);
}

TEST_CASE("fewer failures than the replication degree cannot lose data") {
  CopysetPlan plan = copysets_permutation(9, 3, 2, 11);
  Fraction pdl = copyset_pdl_exact(plan, 2);
  CHECK(pdl.num == 0);
}

TEST_CASE("permutation plan: every node appears in exactly P copysets") {
  for (uint64_t seed : {5ull, 17ull}) {
    CopysetPlan plan = copysets_permutation(12, 3, 4, seed);
    CHECK(plan.copysets.size() == 16);
    CHECK(plan.scatter_width == 8);
    std::vector<int> count(12, 0);
    for (const auto& cs : plan.copysets)
      for (int node : cs) ++count[size_t(node)];
    for (int c : count) CHECK(c == 4);
  }
  CHECK_THROWS_AS(copysets_permutation(10, 3, 1, 1), std::invalid_argument);
}

TEST_CASE("general failure counts are handled by enumeration") {
  CopysetPlan plan = copysets_from_permutations(
      9, 3, {{0, 1, 2, 3, 4, 5, 6, 7, 8}});
  Fraction p4 = copyset_pdl_exact(plan, 4);
  // A 4-subset covers one of the three copysets: 3 * C(6,1) = 18 of 126.
  CHECK(p4.num == 1);
  CHECK(p4.den == 7);
}

TEST_CASE("copyset csv round-trips") {
  CopysetPlan plan = copysets_permutation(9, 3, 2, 3);
  std::string csv = plan.to_csv();
  CopysetPlan back = CopysetPlan::from_csv(csv, 9, 3);
  CHECK(back.copysets == plan.copysets);
}

// ---------------------------------------------------------------------------
// Mirrored organizations

TEST_CASE("ID n=8 c=2: a failure loads the 3 cluster survivors by 4/3") {
  MirrorMap map = mirror_map(MirrorOrg::ID, 8, 2);
  auto load = map.surviving_load(0);
  CHECK(load[0] == 0.0);
  for (int d : {1, 2, 3}) CHECK(load[size_t(d)] == doctest::Approx(4.0 / 3.0));
  for (int d : {4, 5, 6, 7}) CHECK(load[size_t(d)] == doctest::Approx(1.0));
}

TEST_CASE("BM n=2 is the plain mirrored pair") {
  MirrorMap map = mirror_map(MirrorOrg::BM, 2);
  auto load = map.surviving_load(0);
  CHECK(load[1] == doctest::Approx(2.0));
  CHECK(map.survives({0}));
  CHECK_FALSE(map.survives({0, 1}));
}

TEST_CASE("GRD n=8: disk 0 replicates one quarter on each of disks 4..7") {
  MirrorMap map = mirror_map(MirrorOrg::GRD, 8);
  std::set<int> replicas;
  for (const auto& rep : map.placement)
    if (rep.primary == 0) {
      replicas.insert(rep.replica);
      CHECK(rep.fraction == doctest::Approx(0.25));
    }
  CHECK(replicas == std::set<int>{4, 5, 6, 7});
  auto load = map.surviving_load(0);
  for (int d : {4, 5, 6, 7}) CHECK(load[size_t(d)] == doctest::Approx(1.25));
  CHECK(map.survives({0, 1, 2, 3}));
  CHECK_FALSE(map.survives({0, 4}));
}

TEST_CASE("CD loss needs ring-adjacent failures; load rebalances evenly") {
  MirrorMap map = mirror_map(MirrorOrg::CD, 8);
  CHECK(map.survives({0, 2, 4, 6}));
  CHECK_FALSE(map.survives({7, 0}));
  auto load = map.surviving_load(3);
  for (int d = 0; d < 8; ++d)
    if (d != 3) CHECK(load[size_t(d)] == doctest::Approx(8.0 / 7.0));
}

TEST_CASE("mirror shape errors") {
  CHECK_THROWS_AS(mirror_map(MirrorOrg::BM, 7), std::invalid_argument);
  CHECK_THROWS_AS(mirror_map(MirrorOrg::ID, 8, 3), std::invalid_argument);
  CHECK_THROWS_AS(mirror_map(MirrorOrg::GRD, 9), std::invalid_argument);
}
