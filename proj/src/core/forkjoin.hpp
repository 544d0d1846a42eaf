#ifndef RAIDLAB_FORKJOIN_HPP
#define RAIDLAB_FORKJOIN_HPP

#include <string>

namespace raidlab {

enum class FjMethod { Exact2, Nelson, MaxExp, MaxEvd, MaxErlang };

FjMethod fj_method_from_string(const std::string& s);

double harmonic(int n);

struct FjOptions {
  bool evd_calibration = false;  // divide the EVD spread term by 1.27
};

// Fork/join mean response time approximations.
//   exact2:    (12 - rho)/8 * R           (n = 2, M/M/1 branches)
//   nelson:    [H_n/H_2 + (1 - H_n/H_2)(4/11) rho] * R_2^{F/J}
//   max_exp:   H_n * R                     (max of n exponentials)
//   max_evd:   R + sqrt(6)/pi * sigma_R * ln(n)
//   max_erlang: numeric integral of the k-stage Erlang maximum with
//               k = ceil(1/cv^2) stages and per-stage rate k/R
double fj_response(int n, double rho, double response, double sigma_response,
                   FjMethod method, const FjOptions& opts = {});

// Expected maximum of two Erlang response times with unequal stages/means.
double fj_max_asymmetric2(double r1, int k1, double r2, int k2);

}  // namespace raidlab

#endif
