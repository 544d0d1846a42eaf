#ifndef RAIDLAB_QUEUEING_HPP
#define RAIDLAB_QUEUEING_HPP

#include <stdexcept>
#include <vector>

#include "core/dist.hpp"

namespace raidlab {

struct InstabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Mm1Result {
  double rho = 0.0;
  double waiting = 0.0;
  double response = 0.0;
};

Mm1Result mm1(double lambda, double mean_service);

struct MmmResult {
  double rho = 0.0;
  double erlang_c = 0.0;  // probability of queueing
  double waiting = 0.0;
  double response = 0.0;
};

MmmResult mmm(double lambda, double mean_service, int servers);

struct Mg1Result {
  double rho = 0.0;
  double waiting = 0.0;       // W
  double waiting_m2 = 0.0;    // second moment of W
  double waiting_var = 0.0;
  double response = 0.0;      // R
  double response_m2 = 0.0;
  double response_cv2 = 0.0;  // squared coefficient of variation of R
};

Mg1Result mg1(double lambda, const ServiceMoments& s);

// Nonpreemptive-priority wait of the high class: lambda x2 / (2(1-rho_hi)).
double priority_wait(double lambda, const ServiceMoments& all, double rho_high);

struct PercentileResult {
  double response_p = 0.0;  // -R ln(1-p)
  double lambda_p = 0.0;    // 1/xbar + ln(1-p)/R_(p)
};

PercentileResult percentile_tools(double mean_response, double p,
                                  double mean_service);

struct Gim1Result {
  double rho = 0.0;
  double sigma = 0.0;  // (1 + 4 rho - sqrt(1 + 8 rho)) / 2
  double waiting = 0.0;
};

// GI/M/1 with Erlang-2 arrivals (round-robin routing over two servers).
Gim1Result gim1_erlang2(double lambda, double mu);

// Balanced vs unbalanced routing of a Poisson stream over M/M/1 servers:
// mean response of the mix sum f_i xbar/(1 - f_i Lambda xbar).
double split_mm1_response(double lambda_total, double mean_service,
                          const std::vector<double>& fractions);

}  // namespace raidlab

#endif
