#include "core/mirrors.hpp"

#include <set>
#include <stdexcept>

namespace raidlab {

MirrorOrg mirror_org_from_string(const std::string& s) {
  if (s == "bm" || s == "BM") return MirrorOrg::BM;
  if (s == "id" || s == "ID") return MirrorOrg::ID;
  if (s == "grd" || s == "GRD") return MirrorOrg::GRD;
  if (s == "cd" || s == "CD") return MirrorOrg::CD;
  throw std::invalid_argument("unknown mirrored organization: " + s);
}

std::string mirror_org_to_string(MirrorOrg org) {
  switch (org) {
    case MirrorOrg::BM: return "BM";
    case MirrorOrg::ID: return "ID";
    case MirrorOrg::GRD: return "GRD";
    case MirrorOrg::CD: return "CD";
  }
  return "BM";
}

MirrorMap mirror_map(MirrorOrg org, int n, int clusters) {
  MirrorMap map;
  map.org = org;
  map.n_disks = n;
  if (n < 2) throw std::invalid_argument("mirror_map: need at least 2 disks");
  switch (org) {
    case MirrorOrg::BM: {
      if (n % 2 != 0) throw std::invalid_argument("BM needs an even disk count");
      for (int i = 0; i < n; i += 2) {
        map.placement.push_back({i, i + 1, 1.0});
        map.placement.push_back({i + 1, i, 1.0});
      }
      break;
    }
    case MirrorOrg::ID: {
      if (clusters < 1 || n % clusters != 0)
        throw std::invalid_argument("ID needs clusters dividing n");
      map.clusters = clusters;
      int m = n / clusters;
      if (m < 2) throw std::invalid_argument("ID needs at least 2 disks per cluster");
      for (int d = 0; d < n; ++d) {
        int base = (d / m) * m;
        for (int j = 0; j < m; ++j)
          if (base + j != d)
            map.placement.push_back({d, base + j, 1.0 / double(m - 1)});
      }
      break;
    }
    case MirrorOrg::GRD: {
      if (n % 2 != 0) throw std::invalid_argument("GRD needs an even disk count");
      int M = n / 2;
      for (int d = 0; d < n; ++d) {
        int other_base = d < M ? M : 0;
        for (int j = 0; j < M; ++j)
          map.placement.push_back({d, other_base + j, 1.0 / double(M)});
      }
      break;
    }
    case MirrorOrg::CD: {
      for (int d = 0; d < n; ++d) map.placement.push_back({d, (d + 1) % n, 1.0});
      break;
    }
  }
  return map;
}

std::vector<double> MirrorMap::surviving_load(int failed) const {
  if (failed < 0 || failed >= n_disks)
    throw std::invalid_argument("surviving_load: bad disk id");
  std::vector<double> load(size_t(n_disks), 1.0);
  load[size_t(failed)] = 0.0;
  if (org == MirrorOrg::CD) {
    // With reads split between primary and secondary copies the chain can
    // rebalance so every survivor carries the same load.
    for (int d = 0; d < n_disks; ++d)
      if (d != failed) load[size_t(d)] = double(n_disks) / double(n_disks - 1);
    return load;
  }
  for (const auto& rep : placement)
    if (rep.primary == failed) load[size_t(rep.replica)] += rep.fraction;
  return load;
}

bool MirrorMap::survives(const std::vector<int>& failed) const {
  std::set<int> f(failed.begin(), failed.end());
  switch (org) {
    case MirrorOrg::BM: {
      for (int i = 0; i < n_disks; i += 2)
        if (f.count(i) && f.count(i + 1)) return false;
      return true;
    }
    case MirrorOrg::ID: {
      int m = n_disks / clusters;
      std::vector<int> per(size_t(clusters), 0);
      for (int d : f) ++per[size_t(d / m)];
      for (int count : per)
        if (count > 1) return false;
      return true;
    }
    case MirrorOrg::GRD: {
      int M = n_disks / 2;
      bool left = false, right = false;
      for (int d : f) (d < M ? left : right) = true;
      return !(left && right);
    }
    case MirrorOrg::CD: {
      for (int d : f)
        if (f.count((d + 1) % n_disks)) return false;
      return true;
    }
  }
  return true;
}

}  // namespace raidlab
