#include "core/copysets.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "core/rng.hpp"

namespace raidlab {

std::string CopysetPlan::to_csv() const {
  std::ostringstream out;
  for (const auto& cs : copysets) {
    for (size_t i = 0; i < cs.size(); ++i) {
      if (i) out << ',';
      out << cs[i];
    }
    out << '\n';
  }
  return out.str();
}

CopysetPlan CopysetPlan::from_csv(const std::string& text, int n_nodes,
                                  int replication) {
  CopysetPlan plan;
  plan.n_nodes = n_nodes;
  plan.replication = replication;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> cs;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) cs.push_back(std::stoi(field));
    if (int(cs.size()) != replication)
      throw std::invalid_argument("copyset csv: wrong set size");
    std::sort(cs.begin(), cs.end());
    plan.copysets.push_back(std::move(cs));
  }
  return plan;
}

CopysetPlan copysets_from_permutations(
    int n, int R, const std::vector<std::vector<int>>& perms) {
  if (R < 2 || n % R != 0)
    throw std::invalid_argument("copysets: R must divide n");
  CopysetPlan plan;
  plan.n_nodes = n;
  plan.replication = R;
  plan.scatter_width = int(perms.size()) * (R - 1);
  for (const auto& perm : perms) {
    if (int(perm.size()) != n)
      throw std::invalid_argument("copysets: permutation size mismatch");
    for (int start = 0; start + R <= n; start += R) {
      std::vector<int> cs(perm.begin() + start, perm.begin() + start + R);
      std::sort(cs.begin(), cs.end());
      plan.copysets.push_back(std::move(cs));
    }
  }
  return plan;
}

CopysetPlan copysets_permutation(int n, int R, int P, uint64_t seed) {
  if (P < 1) throw std::invalid_argument("copysets: need P >= 1");
  std::vector<std::vector<int>> perms;
  for (int p = 0; p < P; ++p) {
    Xoshiro256 rng = Xoshiro256::stream(seed, uint64_t(p));
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i >= 1; --i) {
      int k = int(rng.next_below(uint64_t(i) + 1));
      std::swap(perm[size_t(i)], perm[size_t(k)]);
    }
    perms.push_back(std::move(perm));
  }
  return copysets_from_permutations(n, R, perms);
}

CopysetPlan copysets_random_replication(int n, int R, int S) {
  if (R < 2 || S < R - 1)
    throw std::invalid_argument("copysets: need S >= R-1");
  CopysetPlan plan;
  plan.n_nodes = n;
  plan.replication = R;
  plan.scatter_width = S;
  std::vector<int> window(static_cast<size_t>(S));
  std::vector<int> comb(static_cast<size_t>(R - 1));
  for (int primary = 0; primary < n; ++primary) {
    for (int j = 0; j < S; ++j) window[size_t(j)] = (primary + 1 + j) % n;
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      std::vector<int> cs;
      cs.push_back(primary);
      for (int idx : comb) cs.push_back(window[size_t(idx)]);
      std::sort(cs.begin(), cs.end());
      plan.copysets.push_back(std::move(cs));
      int i = R - 2;
      while (i >= 0 && comb[size_t(i)] == S - (R - 1) + i) --i;
      if (i < 0) break;
      ++comb[size_t(i)];
      for (int j = i + 1; j < R - 1; ++j) comb[size_t(j)] = comb[size_t(j - 1)] + 1;
    }
  }
  std::sort(plan.copysets.begin(), plan.copysets.end());
  plan.copysets.erase(std::unique(plan.copysets.begin(), plan.copysets.end()),
                      plan.copysets.end());
  return plan;
}

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long res = 1;
  for (int i = 1; i <= k; ++i) res = res * (n - k + i) / i;
  return res;
}

}  // namespace

Fraction copyset_pdl_exact(const CopysetPlan& plan, int failed) {
  const int n = plan.n_nodes;
  const int R = plan.replication;
  if (failed < 0 || failed > n)
    throw std::invalid_argument("copyset_pdl_exact: bad failure count");
  if (failed < R) return make_fraction(0, 1);
  std::set<std::vector<int>> distinct(plan.copysets.begin(), plan.copysets.end());
  if (failed == R) {
    long long total = binomial(n, R);
    long long num = std::min<long long>(total, (long long)distinct.size());
    return make_fraction(num, total);
  }
  if (n > 20)
    throw std::length_error("copyset_pdl_exact: enumeration capped at n <= 20");
  long long covered = 0, total = 0;
  std::vector<int> comb(static_cast<size_t>(failed));
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    ++total;
    uint32_t mask = 0;
    for (int idx : comb) mask |= (1u << idx);
    for (const auto& cs : distinct) {
      bool all = true;
      for (int node : cs)
        if (!(mask & (1u << node))) {
          all = false;
          break;
        }
      if (all) {
        ++covered;
        break;
      }
    }
    int i = failed - 1;
    while (i >= 0 && comb[size_t(i)] == n - failed + i) --i;
    if (i < 0) break;
    ++comb[size_t(i)];
    for (int j = i + 1; j < failed; ++j) comb[size_t(j)] = comb[size_t(j - 1)] + 1;
  }
  return make_fraction(covered, total);
}

}  // namespace raidlab
