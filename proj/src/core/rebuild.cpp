#include "core/rebuild.hpp"

#include <cmath>
#include <stdexcept>

namespace raidlab {

DegradedLoad degraded_load(int n, int g, double f_r, const RmwMeans& means) {
  if (g < 2 || g > n) throw std::invalid_argument("degraded_load: need 2 <= G <= N");
  const double f_w = 1.0 - f_r;
  DegradedLoad out;
  out.load_increase = double(n) / (n - 1.0) +
                      ((n - 2.0) * f_r + (n - 8.0) * f_w) /
                          ((n - 1.0) * (f_r + 4.0 * f_w));
  out.rho_read_per_lambda =
      f_r / (n - 1.0) * ((n + g - 2.0) / n * means.read_ms);
  out.rho_write_per_lambda =
      f_w / (n - 1.0) *
      ((g - 2.0) / n * means.read_ms + 2.0 / n * means.write_ms +
       2.0 * (n - 2.0) / n * means.rmw_ms);
  return out;
}

namespace {

struct VacationMix {
  ServiceMoments moments;
  double n_track = 0.0;
  double residual = 0.0;
};

VacationMix mix_vacations(double lambda, const VacationSpec& v) {
  const double v1 = v.type1.lst(lambda);
  const double v2 = v.type2.lst(lambda);
  const double denom = 1.0 - v2 + v1;
  VacationMix mix;
  mix.moments.m1 = ((1.0 - v2) * v.type1.m1() + v1 * v.type2.m1()) / denom;
  mix.moments.m2 = ((1.0 - v2) * v.type1.m2() + v1 * v.type2.m2()) / denom;
  mix.moments.m3 = ((1.0 - v2) * v.type1.m3() + v1 * v.type2.m3()) / denom;
  mix.n_track = 1.0 + v1 / (1.0 - v2);
  mix.residual = mix.moments.m2 / (2.0 * mix.moments.m1);
  return mix;
}

}  // namespace

VsmResult vsm_rebuild(double lambda, const ServiceMoments& service,
                      const VacationSpec& vacations, double n_tracks,
                      int redirection_steps) {
  if (lambda <= 0) throw std::invalid_argument("vsm: lambda must be positive");
  if (redirection_steps < 1) throw std::invalid_argument("vsm: need steps >= 1");
  const int k = redirection_steps;
  const double rho = lambda * service.m1;
  // every load step must be stable; the first step carries (2 - 1/k) rho
  const double worst = (2.0 - 1.0 / k) * rho;
  if (worst >= 1.0)
    throw InstabilityError("vsm: degraded-mode load at or above 1");

  VsmResult res;
  res.rho = rho;
  VacationMix mix = mix_vacations(lambda, vacations);
  res.vacation = mix.moments;
  res.v_residual = mix.residual;
  res.w_mg1 = lambda * service.m2 / (2.0 * (1.0 - rho));
  res.w_vsm = res.w_mg1 + mix.residual;
  res.n_track = mix.n_track;
  res.t_dc = (service.m1 + mix.residual) / (1.0 - rho);
  res.t_cycle = res.t_dc + 1.0 / lambda;

  double total = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double rho_i = (2.0 - double(i) / k) * rho;
    const double lambda_i = rho_i / service.m1;
    VacationMix step = mix_vacations(lambda_i, vacations);
    const double t_dc = (service.m1 + step.residual) / (1.0 - rho_i);
    const double t_cycle = t_dc + 1.0 / lambda_i;
    total += (n_tracks / k) / step.n_track * t_cycle;
  }
  res.t_rebuild = total;
  return res;
}

double rebuild_beta_estimate(double t_zero, double rho, double beta) {
  if (beta * rho >= 1.0)
    throw InstabilityError("rebuild: beta * rho at or above 1");
  return t_zero / (1.0 - beta * rho);
}

BandwidthRebuildResult rebuild_bandwidth_estimate(const BandwidthRebuildParams& p) {
  if (p.ru_transfer_ms <= 0 || p.ru_bytes <= 0)
    throw std::invalid_argument("rebuild: RU size/time must be positive");
  const double rho = p.lambda_per_ms * p.x_disk_ms;
  if (rho >= 1.0) throw InstabilityError("rebuild: external load saturates disk");
  BandwidthRebuildResult res;
  res.n_ru = 1.0 / -std::expm1(-p.lambda_per_ms * p.ru_transfer_ms);
  const double f = p.ru_fraction_of_track;
  res.latency_ms = (1.0 + f * f) * p.rotation_ms / 2.0;
  res.t_dc_ms = (p.x_disk_ms + p.v_residual_ms) / (1.0 - rho);
  res.bandwidth_bytes_per_ms =
      res.n_ru * p.ru_bytes /
      (res.t_dc_ms + p.seek_ms + res.latency_ms + res.n_ru * p.ru_transfer_ms);
  res.t_rebuild_ms =
      p.utilization * p.capacity_bytes / res.bandwidth_bytes_per_ms;
  return res;
}

PcmVsmResult pcm_vs_vsm(double lambda, double x_ru, double w_ru) {
  if (x_ru < 0 || w_ru < 0) throw std::invalid_argument("pcm: negative times");
  PcmVsmResult res;
  res.p_vsm = -std::expm1(-lambda * x_ru);
  res.p_pcm = -std::expm1(-lambda * (x_ru + w_ru));
  return res;
}

}  // namespace raidlab
