#include "core/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace raidlab {

ServiceMoments ServiceMoments::exponential(double mean) {
  return {mean, 2.0 * mean * mean, 6.0 * mean * mean * mean};
}

ServiceMoments ServiceMoments::deterministic(double value) {
  return {value, value * value, value * value * value};
}

Dist Dist::deterministic(double value) {
  if (value < 0) throw std::invalid_argument("dist: negative constant");
  return Dist(value, value * value, value * value * value,
              [value](double s) { return std::exp(-s * value); });
}

Dist Dist::exponential(double mean) {
  if (mean <= 0) throw std::invalid_argument("dist: nonpositive mean");
  return Dist(mean, 2 * mean * mean, 6 * mean * mean * mean,
              [mean](double s) { return 1.0 / (1.0 + s * mean); });
}

Dist Dist::erlang(int stages, double mean_total) {
  if (stages < 1 || mean_total <= 0) throw std::invalid_argument("dist: bad erlang");
  const double stage_mean = mean_total / stages;
  const double k = stages;
  double m1 = mean_total;
  double m2 = stage_mean * stage_mean * k * (k + 1);
  double m3 = stage_mean * stage_mean * stage_mean * k * (k + 1) * (k + 2);
  return Dist(m1, m2, m3, [stage_mean, stages](double s) {
    return std::pow(1.0 / (1.0 + s * stage_mean), stages);
  });
}

Dist Dist::discrete(std::vector<double> values, std::vector<double> probs) {
  if (values.size() != probs.size() || values.empty())
    throw std::invalid_argument("dist: bad discrete spec");
  double total = 0.0, m1 = 0, m2 = 0, m3 = 0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (probs[i] < 0) throw std::invalid_argument("dist: negative probability");
    total += probs[i];
    m1 += probs[i] * values[i];
    m2 += probs[i] * values[i] * values[i];
    m3 += probs[i] * values[i] * values[i] * values[i];
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("dist: probabilities must sum to 1");
  return Dist(m1, m2, m3, [values = std::move(values), probs = std::move(probs)](double s) {
    double sum = 0.0;
    for (size_t i = 0; i < values.size(); ++i)
      sum += probs[i] * std::exp(-s * values[i]);
    return sum;
  });
}

Dist Dist::convolution(const Dist& a, const Dist& b) {
  // cumulants add for independent sums
  double k1a = a.m1_, k2a = a.m2_ - a.m1_ * a.m1_;
  double k3a = a.m3_ - 3 * a.m1_ * a.m2_ + 2 * a.m1_ * a.m1_ * a.m1_;
  double k1b = b.m1_, k2b = b.m2_ - b.m1_ * b.m1_;
  double k3b = b.m3_ - 3 * b.m1_ * b.m2_ + 2 * b.m1_ * b.m1_ * b.m1_;
  double k1 = k1a + k1b, k2 = k2a + k2b, k3 = k3a + k3b;
  double m1 = k1;
  double m2 = k2 + k1 * k1;
  double m3 = k3 + 3 * k1 * k2 + k1 * k1 * k1;
  auto la = a.lst_, lb = b.lst_;
  return Dist(m1, m2, m3, [la, lb](double s) { return la(s) * lb(s); });
}

double Dist::moment_lst_mismatch() const {
  // One-sided finite differences of the LST at 0 (valid for s >= 0 only):
  // m1 = -V*'(0), m2 = V*''(0).
  if (m1_ <= 0) return 0.0;
  const double h = 1e-3 / m1_;
  auto f = [this](double s) { return lst_(s); };
  const double f0 = f(0), f1 = f(h), f2 = f(2 * h), f3 = f(3 * h), f4 = f(4 * h);
  const double d1 = (-25 * f0 + 48 * f1 - 36 * f2 + 16 * f3 - 3 * f4) / (12 * h);
  const double d2 = (35 * f0 - 104 * f1 + 114 * f2 - 56 * f3 + 11 * f4) / (12 * h * h);
  double err = std::abs(-d1 - m1_) / m1_;
  if (m2_ > 0) err = std::max(err, std::abs(d2 - m2_) / m2_);
  return err;
}

}  // namespace raidlab
