#ifndef RAIDLAB_MIRRORS_HPP
#define RAIDLAB_MIRRORS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace raidlab {

enum class MirrorOrg { BM, ID, GRD, CD };

MirrorOrg mirror_org_from_string(const std::string& s);
std::string mirror_org_to_string(MirrorOrg org);

// Replica placement for the four mirrored organizations.  `fraction` is
// the share of the primary disk's data kept on the replica disk.
struct MirrorMap {
  MirrorOrg org = MirrorOrg::BM;
  int n_disks = 0;
  int clusters = 0;  // ID only
  struct Replica {
    int primary = 0;
    int replica = 0;
    double fraction = 1.0;
  };
  std::vector<Replica> placement;

  // Read-load multiplier on every surviving disk after `failed` fails,
  // assuming uniform primary read load 1.0 per disk before the failure.
  std::vector<double> surviving_load(int failed) const;

  // True iff the given failed-disk set loses no data.
  bool survives(const std::vector<int>& failed) const;
};

MirrorMap mirror_map(MirrorOrg org, int n, int clusters = 0);

}  // namespace raidlab

#endif
