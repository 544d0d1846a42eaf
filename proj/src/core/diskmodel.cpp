#include "core/diskmodel.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace raidlab {

using nlohmann::json;

int DiskGeometry::cylinders() const {
  int total = 0;
  for (const auto& z : zones) total += z.cylinders;
  return total;
}

double DiskGeometry::capacity_sectors() const {
  double total = 0;
  for (const auto& z : zones) total += double(z.cylinders) * z.sectors_per_track;
  return total;
}

int DiskGeometry::sectors_at(int cylinder) const {
  int c = cylinder;
  for (const auto& z : zones) {
    if (c < z.cylinders) return z.sectors_per_track;
    c -= z.cylinders;
  }
  throw std::out_of_range("cylinder outside geometry");
}

double DiskGeometry::seek_time(double d) const {
  if (d <= 0) return 0.0;
  if (!seek_points.empty()) {
    // piecewise-linear through the (distance, time) table
    if (d <= seek_points.front().first) return seek_points.front().second;
    for (size_t i = 1; i < seek_points.size(); ++i) {
      if (d <= seek_points[i].first) {
        const auto& [d0, t0] = seek_points[i - 1];
        const auto& [d1, t1] = seek_points[i];
        return t0 + (t1 - t0) * (d - d0) / (d1 - d0);
      }
    }
    return seek_points.back().second;
  }
  return seek_a + seek_b * std::sqrt(d - 1.0) + seek_c * (d - 1.0);
}

std::string DiskGeometry::to_json() const {
  json j;
  json zs = json::array();
  for (const auto& z : zones)
    zs.push_back({{"cylinders", z.cylinders}, {"sectors_per_track", z.sectors_per_track}});
  j["zones"] = std::move(zs);
  j["rotation_ms"] = rotation_ms;
  j["seek"] = {{"a", seek_a}, {"b", seek_b}, {"c", seek_c}};
  if (!seek_points.empty()) {
    json pts = json::array();
    for (const auto& [d, t] : seek_points) pts.push_back({d, t});
    j["seek_points"] = std::move(pts);
  }
  j["sector_bytes"] = sector_bytes;
  return j.dump();
}

DiskGeometry DiskGeometry::from_json(const std::string& text) {
  json j = json::parse(text);
  DiskGeometry g;
  for (const auto& z : j.at("zones"))
    g.zones.push_back({z.at("cylinders").get<int>(),
                       z.at("sectors_per_track").get<int>()});
  g.rotation_ms = j.value("rotation_ms", 4.0);
  if (j.contains("seek")) {
    g.seek_a = j["seek"].value("a", 0.0);
    g.seek_b = j["seek"].value("b", 0.0);
    g.seek_c = j["seek"].value("c", 0.0);
  }
  if (j.contains("seek_points"))
    for (const auto& p : j["seek_points"])
      g.seek_points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  g.sector_bytes = j.value("sector_bytes", 512.0);
  if (g.zones.empty()) throw std::invalid_argument("geometry: no zones");
  return g;
}

std::vector<double> seek_pmf(int cylinders, double p_stay) {
  if (cylinders < 2) throw std::invalid_argument("seek_pmf: need >= 2 cylinders");
  if (p_stay < 0 || p_stay > 1) throw std::invalid_argument("seek_pmf: bad p");
  std::vector<double> pmf(static_cast<size_t>(cylinders), 0.0);
  pmf[0] = p_stay;
  const double c = cylinders;
  for (int d = 1; d < cylinders; ++d)
    pmf[size_t(d)] = (1.0 - p_stay) * 2.0 * (c - d) / (c * (c - 1.0));
  return pmf;
}

std::vector<double> zbr_seek_pmf(const DiskGeometry& g) {
  const int c = g.cylinders();
  if (c < 2) throw std::invalid_argument("zbr_seek_pmf: need >= 2 cylinders");
  const double cap = g.capacity_sectors();
  std::vector<double> pc(static_cast<size_t>(c));
  for (int i = 0; i < c; ++i) pc[size_t(i)] = g.sectors_at(i) / cap;
  std::vector<double> pmf(static_cast<size_t>(c), 0.0);
  for (int i = 0; i < c; ++i) {
    pmf[0] += pc[size_t(i)] * pc[size_t(i)];
    for (int d = 1; d < c; ++d) {
      double reach = 0.0;
      if (i + d < c) reach += pc[size_t(i + d)];
      if (i - d >= 0) reach += pc[size_t(i - d)];
      if (reach != 0.0) pmf[size_t(d)] += reach * pc[size_t(i)];
    }
  }
  return pmf;
}

double pmf_mean(const std::vector<double>& pmf) {
  double mean = 0.0;
  for (size_t d = 0; d < pmf.size(); ++d) mean += double(d) * pmf[d];
  return mean;
}

ServiceMoments seek_moments(const std::vector<double>& pmf,
                            const DiskGeometry& g) {
  ServiceMoments m;
  for (size_t d = 0; d < pmf.size(); ++d) {
    if (pmf[d] == 0.0) continue;
    double t = g.seek_time(double(d));
    m.m1 += pmf[d] * t;
    m.m2 += pmf[d] * t * t;
    m.m3 += pmf[d] * t * t * t;
  }
  return m;
}

ServiceMoments latency_moments(const DiskGeometry& g) {
  const double tr = g.rotation_ms;
  return {tr / 2.0, tr * tr / 3.0, tr * tr * tr / 4.0};
}

ServiceMoments transfer_moments(const DiskGeometry& g, int sectors) {
  const double cap = g.capacity_sectors();
  ServiceMoments m;
  for (const auto& z : g.zones) {
    double pc = double(z.cylinders) * z.sectors_per_track / cap;
    double t = double(sectors) * g.rotation_ms / z.sectors_per_track;
    m.m1 += pc * t;
    m.m2 += pc * t * t;
    m.m3 += pc * t * t * t;
  }
  return m;
}

namespace {

ServiceMoments convolve(const ServiceMoments& a, const ServiceMoments& b) {
  auto k2 = [](const ServiceMoments& x) { return x.m2 - x.m1 * x.m1; };
  auto k3 = [](const ServiceMoments& x) {
    return x.m3 - 3 * x.m1 * x.m2 + 2 * x.m1 * x.m1 * x.m1;
  };
  double m1 = a.m1 + b.m1;
  double v = k2(a) + k2(b);
  double c3 = k3(a) + k3(b);
  return {m1, v + m1 * m1, c3 + 3 * m1 * v + m1 * m1 * m1};
}

}  // namespace

DiskServiceResult service_moments(const DiskGeometry& g, const WorkloadMix& w,
                                  ServiceMode mode) {
  if (std::abs(w.f_r + w.f_w - 1.0) > 1e-9)
    throw std::invalid_argument("workload: f_r + f_w must be 1");
  auto pmf = zbr_seek_pmf(g);
  ServiceMoments seek = seek_moments(pmf, g);
  ServiceMoments lat = latency_moments(g);
  ServiceMoments xfer = transfer_moments(g, w.block_sectors);
  ServiceMoments access = convolve(convolve(seek, lat), xfer);

  DiskServiceResult res;
  res.sr = access;
  res.sw = access;
  // Reads issue one SR; small writes issue two SRs and two SWs, so the
  // access mix is (f_r + 2 f_w) SRs out of (f_r + 4 f_w) disk accesses.
  res.f_sr = mode == ServiceMode::Raid5Normal
                 ? (w.f_r + 2.0 * w.f_w) / (w.f_r + 4.0 * w.f_w)
                 : w.f_r;
  res.disk.m1 = res.f_sr * res.sr.m1 + (1 - res.f_sr) * res.sw.m1;
  res.disk.m2 = res.f_sr * res.sr.m2 + (1 - res.f_sr) * res.sw.m2;
  res.disk.m3 = res.f_sr * res.sr.m3 + (1 - res.f_sr) * res.sw.m3;
  return res;
}

DiskGeometry default_geometry() {
  DiskGeometry g;
  g.zones = {{24000, 1200}, {24000, 1000}, {24000, 800}};
  g.rotation_ms = 4.0;
  g.seek_a = 0.6;
  g.seek_b = 0.012;
  g.sector_bytes = 512.0;
  return g;
}

}  // namespace raidlab
