#include "core/queueing.hpp"

#include <cmath>

namespace raidlab {

Mm1Result mm1(double lambda, double mean_service) {
  if (mean_service <= 0) throw std::invalid_argument("mm1: bad service time");
  const double rho = lambda * mean_service;
  if (rho >= 1.0) throw InstabilityError("mm1: utilization at or above 1");
  Mm1Result res;
  res.rho = rho;
  res.response = mean_service / (1.0 - rho);
  res.waiting = res.response - mean_service;
  return res;
}

MmmResult mmm(double lambda, double mean_service, int servers) {
  if (servers < 1) throw std::invalid_argument("mmm: need servers >= 1");
  const double offered = lambda * mean_service;  // a
  const double rho = offered / servers;
  if (rho >= 1.0) throw InstabilityError("mmm: utilization at or above 1");
  // Erlang C
  double sum = 0.0, term = 1.0;
  for (int k = 0; k < servers; ++k) {
    if (k > 0) term *= offered / k;
    sum += term;
  }
  double tail = term * offered / servers / (1.0 - rho);
  MmmResult res;
  res.rho = rho;
  res.erlang_c = tail / (sum + tail);
  res.waiting = res.erlang_c * mean_service / (servers * (1.0 - rho));
  res.response = res.waiting + mean_service;
  return res;
}

Mg1Result mg1(double lambda, const ServiceMoments& s) {
  if (s.m1 <= 0) throw std::invalid_argument("mg1: bad service time");
  const double rho = lambda * s.m1;
  if (rho >= 1.0) throw InstabilityError("mg1: utilization at or above 1");
  Mg1Result res;
  res.rho = rho;
  res.waiting = lambda * s.m2 / (2.0 * (1.0 - rho));
  res.waiting_m2 =
      2.0 * res.waiting * res.waiting + lambda * s.m3 / (3.0 * (1.0 - rho));
  res.waiting_var = res.waiting_m2 - res.waiting * res.waiting;
  res.response = res.waiting + s.m1;
  res.response_m2 = res.waiting_m2 + s.m2 + 2.0 * res.waiting * s.m1;
  double var_r = res.response_m2 - res.response * res.response;
  res.response_cv2 = var_r / (res.response * res.response);
  return res;
}

double priority_wait(double lambda, const ServiceMoments& all, double rho_high) {
  if (rho_high >= 1.0)
    throw InstabilityError("priority: high-class utilization at or above 1");
  return lambda * all.m2 / (2.0 * (1.0 - rho_high));
}

PercentileResult percentile_tools(double mean_response, double p,
                                  double mean_service) {
  if (p <= 0 || p >= 1) throw std::invalid_argument("percentile: p in (0,1)");
  PercentileResult res;
  res.response_p = -mean_response * std::log1p(-p);
  res.lambda_p = 1.0 / mean_service + std::log1p(-p) / res.response_p;
  return res;
}

Gim1Result gim1_erlang2(double lambda, double mu) {
  const double rho = lambda / mu;
  if (rho >= 1.0) throw InstabilityError("gim1: utilization at or above 1");
  Gim1Result res;
  res.rho = rho;
  res.sigma = 0.5 * (1.0 + 4.0 * rho - std::sqrt(1.0 + 8.0 * rho));
  res.waiting = res.sigma / (mu * (1.0 - res.sigma));
  return res;
}

double split_mm1_response(double lambda_total, double mean_service,
                          const std::vector<double>& fractions) {
  double total_f = 0.0, response = 0.0;
  for (double f : fractions) total_f += f;
  if (std::abs(total_f - 1.0) > 1e-9)
    throw std::invalid_argument("split: fractions must sum to 1");
  for (double f : fractions) {
    double rho = f * lambda_total * mean_service;
    if (rho >= 1.0) throw InstabilityError("split: a branch is overloaded");
    response += f * mean_service / (1.0 - rho);
  }
  return response;
}

}  // namespace raidlab
