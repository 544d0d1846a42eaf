#ifndef RAIDLAB_DIST_HPP
#define RAIDLAB_DIST_HPP

#include <functional>
#include <vector>

namespace raidlab {

// First three moments of a service-time random variable (milliseconds).
struct ServiceMoments {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;

  double variance() const { return m2 - m1 * m1; }
  double cv2() const { return variance() / (m1 * m1); }

  static ServiceMoments exponential(double mean);
  static ServiceMoments deterministic(double value);
};

// Distribution handle carrying moments plus a Laplace-Stieltjes transform
// evaluable at real s >= 0; immutable after construction.
class Dist {
 public:
  Dist() = default;

  static Dist deterministic(double value);
  static Dist exponential(double mean);
  static Dist erlang(int stages, double mean_total);
  static Dist discrete(std::vector<double> values, std::vector<double> probs);
  static Dist convolution(const Dist& a, const Dist& b);  // independent sum

  double m1() const { return m1_; }
  double m2() const { return m2_; }
  double m3() const { return m3_; }
  double lst(double s) const { return lst_(s); }
  ServiceMoments moments() const { return {m1_, m2_, m3_}; }

  // Relative error between the analytic moments and central-difference
  // derivatives of the LST at zero (consistency check).
  double moment_lst_mismatch() const;

 private:
  Dist(double m1, double m2, double m3, std::function<double(double)> lst)
      : m1_(m1), m2_(m2), m3_(m3), lst_(std::move(lst)) {}
  double m1_ = 0.0, m2_ = 0.0, m3_ = 0.0;
  std::function<double(double)> lst_ = [](double) { return 1.0; };
};

}  // namespace raidlab

#endif
