#ifndef RAIDLAB_PERFMISC_HPP
#define RAIDLAB_PERFMISC_HPP

#include <vector>

#include "core/dist.hpp"

namespace raidlab {

// Inverts ASO = (BSO - 1)/ln(BSO) by bisection over BSO in (0,1).
double lfs_bso_from_aso(double aso);

// SATF service-time scaling with queue length: x(q) = x_fcfs / q^0.2.
double satf_service_time(double x_fcfs, double queue_len);

struct SeekMinMax {
  double min_distance = 0.0;  // ~ C/(2k+1)
  double max_distance = 0.0;  // ~ C (1 - I_k)
};

// Expected min/max of k-way seeks over C cylinders.
SeekMinMax seek_min_max(int k, double cylinders);

// Delayed-encoding penalty: Phi(t) + r (1 - Phi(t)).
double delayed_encoding_penalty(double phi_t, double r);

struct RoutingResult {
  std::vector<double> rates;   // lambda_i
  double mean_response = 0.0;  // sum lambda_i R_i / Lambda
};

// Optimal split of a Poisson stream over heterogeneous M/G/1 devices by
// equalized marginal cost (waterfilling over the Lagrange multiplier);
// slow devices may receive no traffic.
RoutingResult optimal_routing(double lambda_total,
                              const std::vector<ServiceMoments>& devices);

}  // namespace raidlab

#endif
