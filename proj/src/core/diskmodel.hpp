#ifndef RAIDLAB_DISKMODEL_HPP
#define RAIDLAB_DISKMODEL_HPP

#include <string>
#include <vector>

#include "core/dist.hpp"

namespace raidlab {

// Zoned disk geometry.  Zones are listed from the outermost band inward;
// each carries a cylinder count and sectors per track.  The seek
// characteristic is either the a + b sqrt(d-1) [+ c (d-1)] curve or a
// piecewise-linear table of (distance, time) points.
struct DiskGeometry {
  struct Zone {
    int cylinders = 0;
    int sectors_per_track = 0;
  };
  std::vector<Zone> zones;
  double rotation_ms = 4.0;  // T_R
  double seek_a = 0.0;       // ms
  double seek_b = 0.0;       // ms per sqrt(cylinder)
  double seek_c = 0.0;       // ms per cylinder (optional linear tail)
  std::vector<std::pair<double, double>> seek_points;  // (distance, ms)
  double sector_bytes = 512.0;

  int cylinders() const;
  double capacity_sectors() const;
  int sectors_at(int cylinder) const;  // 0-based cylinder index
  double seek_time(double distance) const;

  std::string to_json() const;
  static DiskGeometry from_json(const std::string& text);
};

// P[0] = p_stay, P[d] = (1-p) 2(C-d)/(C(C-1)); p = 1/C gives the uniform
// special case 2(C-d)/C^2.
std::vector<double> seek_pmf(int cylinders, double p_stay);

// ZBR-weighted seek distances: cylinders are visited proportionally to
// their capacity, P_D(d) = sum_c [P(c+d) + P(c-d)] P_c with clipping.
std::vector<double> zbr_seek_pmf(const DiskGeometry& g);

double pmf_mean(const std::vector<double>& pmf);

// Moments of seek time over a distance pmf and the geometry's seek curve.
ServiceMoments seek_moments(const std::vector<double>& pmf,
                            const DiskGeometry& g);

// Latency moments T_R^i/(i+1) and capacity-weighted transfer moments for a
// block of `sectors` sectors.
ServiceMoments latency_moments(const DiskGeometry& g);
ServiceMoments transfer_moments(const DiskGeometry& g, int sectors);

struct WorkloadMix {
  double lambda_per_ms = 0.0;
  double f_r = 1.0;
  double f_w = 0.0;
  int block_sectors = 8;
};

enum class ServiceMode { Plain, Raid5Normal };

struct DiskServiceResult {
  ServiceMoments sr;    // single read access
  ServiceMoments sw;    // single write access
  ServiceMoments disk;  // f_SR-weighted mixture
  double f_sr = 1.0;
};

// Seek/latency/transfer composition (independent components; cumulants
// add) and the RAID5 small-write mix f_SR = (f_r + 2 f_w)/(f_r + 4 f_w).
DiskServiceResult service_moments(const DiskGeometry& g, const WorkloadMix& w,
                                  ServiceMode mode);

DiskGeometry default_geometry();  // one-zone 15k-RPM-style disk

}  // namespace raidlab

#endif
