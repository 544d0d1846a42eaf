#ifndef RAIDLAB_COPYSETS_HPP
#define RAIDLAB_COPYSETS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "core/codes.hpp"  // Fraction

namespace raidlab {

struct CopysetPlan {
  int n_nodes = 0;
  int replication = 0;     // R
  int scatter_width = 0;   // S
  std::vector<std::vector<int>> copysets;  // sorted node ids

  std::string to_csv() const;  // one copyset per line
  static CopysetPlan from_csv(const std::string& text, int n_nodes,
                              int replication);
};

// P seeded permutations, each chopped into n/R consecutive R-sets.
// S = P(R-1) and the plan holds P*n/R copysets.
CopysetPlan copysets_permutation(int n, int R, int P, uint64_t seed);

// Same scheme with caller-provided permutations (e.g. published examples).
CopysetPlan copysets_from_permutations(int n, int R,
                                       const std::vector<std::vector<int>>& perms);

// Random replication: with scatter width S the replicas of a chunk primary
// on node i live on R-1 of the nodes i+1..i+S (mod n); over a large system
// every such set materializes, so the plan enumerates them all.
CopysetPlan copysets_random_replication(int n, int R, int S);

// Exact data-loss probability given exactly `failed` simultaneous node
// failures: for failed == R the covered fraction of C(n,R); the general
// case enumerates all C(n, failed) subsets (n <= 20).
Fraction copyset_pdl_exact(const CopysetPlan& plan, int failed);

}  // namespace raidlab

#endif
