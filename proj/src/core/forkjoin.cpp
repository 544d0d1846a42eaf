#include "core/forkjoin.hpp"

#include <cmath>
#include <stdexcept>

#include "core/quadrature.hpp"
#include "core/reliability.hpp"  // binomial_d

namespace raidlab {

FjMethod fj_method_from_string(const std::string& s) {
  if (s == "exact2") return FjMethod::Exact2;
  if (s == "nelson") return FjMethod::Nelson;
  if (s == "max_exp") return FjMethod::MaxExp;
  if (s == "max_evd") return FjMethod::MaxEvd;
  if (s == "max_erlang") return FjMethod::MaxErlang;
  throw std::invalid_argument("unknown fork/join method: " + s);
}

double harmonic(int n) {
  double h = 0.0;
  for (int k = 1; k <= n; ++k) h += 1.0 / k;
  return h;
}

namespace {

double erlang_max_integral(int n, int stages, double per_stage_rate) {
  auto cdf = [&](double t) {
    // P[Erlang_k <= t] = 1 - e^{-mu t} sum_{j<k} (mu t)^j / j!
    double mt = per_stage_rate * t;
    double sum = 0.0, term = 1.0;
    for (int j = 0; j < stages; ++j) {
      if (j > 0) term *= mt / j;
      sum += term;
    }
    return 1.0 - std::exp(-mt) * sum;
  };
  double mean = stages / per_stage_rate;
  return integrate_to_infinity(
      [&](double t) { return 1.0 - std::pow(cdf(t), n); }, mean, 1e-11);
}

}  // namespace

double fj_response(int n, double rho, double response, double sigma_response,
                   FjMethod method, const FjOptions& opts) {
  if (n < 1) throw std::invalid_argument("fj: need n >= 1");
  if (rho < 0 || rho >= 1) throw std::invalid_argument("fj: rho must be in [0,1)");
  switch (method) {
    case FjMethod::Exact2:
      if (n != 2) throw std::invalid_argument("fj exact2: defined for n = 2");
      return (12.0 - rho) / 8.0 * response;
    case FjMethod::Nelson: {
      if (n < 2 || n > 32)
        throw std::invalid_argument("fj nelson: valid for 2 <= n <= 32");
      double r2 = (12.0 - rho) / 8.0 * response;
      double ratio = harmonic(n) / harmonic(2);
      return (ratio + (1.0 - ratio) * (4.0 / 11.0) * rho) * r2;
    }
    case FjMethod::MaxExp:
      return harmonic(n) * response;
    case FjMethod::MaxEvd: {
      double spread = std::sqrt(6.0) / M_PI * sigma_response * std::log(double(n));
      if (opts.evd_calibration) spread /= 1.27;
      return response + spread;
    }
    case FjMethod::MaxErlang: {
      if (sigma_response <= 0)
        throw std::invalid_argument("fj max_erlang: needs sigma > 0");
      double cv2 = sigma_response * sigma_response / (response * response);
      int stages = std::max(1, int(std::ceil(1.0 / cv2 - 1e-9)));
      double mu = stages / response;
      return erlang_max_integral(n, stages, mu);
    }
  }
  throw std::invalid_argument("unknown fork/join method");
}

double fj_max_asymmetric2(double r1, int k1, double r2, int k2) {
  if (k1 < 1 || k2 < 1) throw std::invalid_argument("fj asym: stages >= 1");
  if (r1 <= 0) return r2;
  if (r2 <= 0) return r1;
  const double mu1 = k1 / r1, mu2 = k2 / r2;
  double correction = 0.0;
  for (int m = 0; m < k1; ++m)
    for (int n = 0; n < k2; ++n)
      correction += binomial_d(m + n, m) * std::pow(mu1, m) * std::pow(mu2, n) /
                    std::pow(mu1 + mu2, m + n + 1);
  return r1 + r2 - correction;
}

}  // namespace raidlab
