#include "core/perfmisc.hpp"

#include <cmath>
#include <stdexcept>

#include "core/queueing.hpp"

namespace raidlab {

double lfs_bso_from_aso(double aso) {
  if (aso <= 0.0 || aso >= 1.0)
    throw std::invalid_argument("lfs: ASO must be in (0,1)");
  // ASO(BSO) = (BSO-1)/ln(BSO) rises from 0 at BSO->0 to 1 at BSO->1.
  double lo = 1e-12, hi = 1.0 - 1e-12;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    double val = (mid - 1.0) / std::log(mid);
    (val < aso ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double satf_service_time(double x_fcfs, double queue_len) {
  if (queue_len < 1.0) throw std::invalid_argument("satf: queue length >= 1");
  return x_fcfs / std::pow(queue_len, 0.2);
}

SeekMinMax seek_min_max(int k, double cylinders) {
  if (k < 1) throw std::invalid_argument("seek_min_max: k >= 1");
  SeekMinMax out;
  out.min_distance = cylinders / (2.0 * k + 1.0);
  double ik = 1.0;
  for (int j = 1; j <= k; ++j) ik *= (2.0 * j) / (2.0 * j + 1.0);
  out.max_distance = cylinders * (1.0 - ik);
  return out;
}

double delayed_encoding_penalty(double phi_t, double r) {
  if (phi_t < 0 || phi_t > 1) throw std::invalid_argument("penalty: Phi in [0,1]");
  if (r < 0 || r > 1) throw std::invalid_argument("penalty: r in [0,1]");
  return phi_t + r * (1.0 - phi_t);
}

namespace {

// d/dlambda [lambda R(lambda)] for an M/G/1 device.
double marginal_cost(const ServiceMoments& s, double lambda) {
  const double rho = lambda * s.m1;
  const double denom = 1.0 - rho;
  return s.m1 + s.m2 * lambda * (2.0 - rho) / (2.0 * denom * denom);
}

double rate_for_marginal(const ServiceMoments& s, double nu) {
  if (nu <= s.m1) return 0.0;
  double lo = 0.0, hi = (1.0 - 1e-12) / s.m1;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    (marginal_cost(s, mid) < nu ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

RoutingResult optimal_routing(double lambda_total,
                              const std::vector<ServiceMoments>& devices) {
  if (devices.empty()) throw std::invalid_argument("routing: no devices");
  double capacity = 0.0;
  for (const auto& d : devices) {
    if (d.m1 <= 0) throw std::invalid_argument("routing: bad device");
    capacity += 1.0 / d.m1;
  }
  if (lambda_total >= capacity)
    throw InstabilityError("routing: offered load at or above total capacity");

  // Bisection on the common marginal cost nu.
  double lo = 0.0, hi = 1.0;
  for (const auto& d : devices) lo = std::max(lo, d.m1);
  lo = 0.0;
  hi = 1.0;
  auto total_at = [&](double nu) {
    double sum = 0.0;
    for (const auto& d : devices) sum += rate_for_marginal(d, nu);
    return sum;
  };
  while (total_at(hi) < lambda_total) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    (total_at(mid) < lambda_total ? lo : hi) = mid;
  }
  const double nu = 0.5 * (lo + hi);

  RoutingResult res;
  double assigned = 0.0;
  for (const auto& d : devices) {
    res.rates.push_back(rate_for_marginal(d, nu));
    assigned += res.rates.back();
  }
  // absorb the bisection slack proportionally into active devices
  if (assigned > 0) {
    double scale = lambda_total / assigned;
    for (auto& r : res.rates) r *= scale;
  }
  double obj = 0.0;
  for (size_t i = 0; i < devices.size(); ++i) {
    if (res.rates[i] <= 0) continue;
    auto q = mg1(res.rates[i], devices[i]);
    obj += res.rates[i] * q.response;
  }
  res.mean_response = obj / lambda_total;
  return res;
}

}  // namespace raidlab
