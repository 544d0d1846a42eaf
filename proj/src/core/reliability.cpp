#include "core/reliability.hpp"

#include <algorithm>
#include <cmath>

namespace raidlab {

long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long res = 1;
  for (int i = 1; i <= k; ++i) res = res * (n - k + i) / i;
  return res;
}

double binomial_d(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0));
}

DriveParams DriveParams::from_afr(double afr, double mttr_hours) {
  if (afr <= 0 || afr >= 1) throw std::invalid_argument("afr must be in (0,1)");
  DriveParams d;
  d.mttf_hours = -kHoursPerYear / std::log1p(-afr);
  d.mttr_hours = mttr_hours;
  return d;
}

AfrResult afr_from_mttf(double mttf_hours) {
  if (mttf_hours <= 0) throw std::invalid_argument("mttf must be positive");
  return {-std::expm1(-kHoursPerYear / mttf_hours), kHoursPerYear / mttf_hours};
}

// ---------------------------------------------------------------------------
// LSE parameters and IDR segment-error probabilities

std::vector<double> LSEParams::default_burst_pmf() {
  // Burst-length distribution with mean 1.0291 matching the SATA numeric
  // results; at most 16 sectors per burst.
  return {0.9812, 0.016, 0.0013, 0.0004, 0.0001, 0.0002, 0.0002, 0.0001,
          0.0001, 0.0,   0.0001, 0.0,    0.0001, 0.0,    0.0,    0.0002};
}

double LSEParams::ps() const {
  const double bits = sector_bytes * 8.0;
  return -std::expm1(bits * std::log1p(-p_bit));
}

double LSEParams::mean_burst() const {
  const auto& b = burst_pmf.empty() ? default_burst_pmf() : burst_pmf;
  double mean = 0.0;
  for (size_t j = 0; j < b.size(); ++j) mean += double(j + 1) * b[j];
  return mean;
}

double LSEParams::gn(int n) const {
  const auto& b = burst_pmf.empty() ? default_burst_pmf() : burst_pmf;
  double g = 0.0;
  for (size_t j = 0; j < b.size(); ++j)
    if (int(j + 1) >= n) g += b[j];
  return g;
}

IdrScheme idr_scheme_from_string(const std::string& s) {
  if (s == "none") return IdrScheme::None;
  if (s == "rs") return IdrScheme::RS;
  if (s == "spc") return IdrScheme::SPC;
  if (s == "ipc") return IdrScheme::IPC;
  throw std::invalid_argument("unknown idr scheme: " + s);
}

ErrorModel error_model_from_string(const std::string& s) {
  if (s == "independent") return ErrorModel::Independent;
  if (s == "correlated") return ErrorModel::Correlated;
  throw std::invalid_argument("unknown error model: " + s);
}

namespace {

// sum_{j=j0}^{l} C(l,j) p^j (1-p)^(l-j), accurate for tiny p.
double binomial_tail(int l, int j0, double p) {
  if (j0 <= 0) return 1.0;
  if (j0 > l) return 0.0;
  const double q = 1.0 - p;
  double log_term = std::lgamma(l + 1.0) - std::lgamma(j0 + 1.0) -
                    std::lgamma(l - j0 + 1.0) + j0 * std::log(p) +
                    (l - j0) * std::log(q);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (int j = j0; j <= l; ++j) {
    sum += term;
    if (term < sum * 1e-18) break;
    term *= double(l - j) / double(j + 1) * (p / q);
  }
  return sum;
}

}  // namespace

double pseg(IdrScheme scheme, ErrorModel model, const LSEParams& p) {
  const int l = p.segment_len;
  const int m = p.interleaves;
  const double ps = p.ps();
  if (l < 2) throw std::invalid_argument("pseg: segment too short");
  if (scheme != IdrScheme::None && (m < 1 || m >= l))
    throw std::invalid_argument("pseg: need l > m >= 1");

  if (model == ErrorModel::Independent) {
    switch (scheme) {
      case IdrScheme::None:
        return -std::expm1(double(l) * std::log1p(-ps));
      case IdrScheme::RS:
        return binomial_tail(l, m + 1, ps);
      case IdrScheme::SPC:
        return binomial_tail(l, 2, ps);
      case IdrScheme::IPC: {
        if (l % m != 0)
          throw std::invalid_argument("pseg: interleaves must divide segment");
        double p_int = binomial_tail(l / m, 2, ps);
        return -std::expm1(double(m) * std::log1p(-p_int));
      }
    }
  }
  // Correlated model, first order in P_s with burst tail weights G_n:
  //   [1 + ((l - m - 1) G_{m+1} - sum_{j=1..m} G_j) / B-bar] * P_s
  // (m = 0 for no coding, m = 1 for SPC, m for RS and IPC).
  int eff_m = scheme == IdrScheme::None ? 0 : (scheme == IdrScheme::SPC ? 1 : m);
  double gsum = 0.0;
  for (int j = 1; j <= eff_m; ++j) gsum += p.gn(j);
  double factor =
      1.0 + ((l - eff_m - 1) * p.gn(eff_m + 1) - gsum) / p.mean_burst();
  return std::max(0.0, factor) * ps;
}

double puf(int n, int k_failed, double p_seg, const LSEParams& p,
           const DriveParams& d) {
  if (k_failed < 1) throw std::invalid_argument("puf: need k >= 1");
  if (p_seg <= 0) return 0.0;
  const double segments =
      (double(n - k_failed) * d.capacity_bytes) / (double(p.segment_len) * d.sector_bytes);
  return -std::expm1(segments * std::log1p(-p_seg));
}

double puf_raid6_degraded(int n, double p_seg, const LSEParams& p,
                          const DriveParams& d) {
  if (p_seg <= 0) return 0.0;
  const double p_recf =
      std::min(1.0, binomial_d(n - 1, 2) * p_seg * p_seg);
  const double n_d = d.capacity_bytes / (double(p.segment_len) * d.sector_bytes);
  return -std::expm1(n_d * std::log1p(-p_recf));
}

// ---------------------------------------------------------------------------
// Closed forms

double kofn_no_repair(int n, int k, double r) {
  if (r < 0 || r > 1) throw std::invalid_argument("kofn: r must be in [0,1]");
  if (k < 0 || k >= n) throw std::invalid_argument("kofn: need 0 <= k < n");
  double sum = 0.0;
  for (int i = 0; i <= k; ++i)
    sum += binomial_d(n, i) * std::pow(r, n - i) * std::pow(1.0 - r, i);
  return std::min(1.0, sum);
}

void raid5_roots(int n_data, double delta, double mu, double* zeta, double* eta) {
  const double s = (2.0 * n_data + 1.0) * delta + mu;
  const double disc = delta * delta + mu * mu + 2.0 * (2.0 * n_data + 1.0) * delta * mu;
  const double root = std::sqrt(disc);
  // zeta + eta = -s and zeta * eta = N(N+1) delta^2; the small root is
  // recovered through the product to avoid cancellation when mu >> delta.
  *eta = 0.5 * (-s - root);
  *zeta = n_data * (n_data + 1.0) * delta * delta / *eta;
}

double raid5_transient(int n_data, const DriveParams& d, double t_hours) {
  if (t_hours < 0) throw std::invalid_argument("raid5_transient: negative time");
  double zeta, eta;
  raid5_roots(n_data, d.delta(), d.mu(), &zeta, &eta);
  if (std::abs(zeta - eta) < 1e-14 * std::abs(zeta)) {
    // Degenerate roots: fall back to uniformization of the 3-state chain.
    CTMCModel chain = raid5_chain(n_data, d.delta(), d.mu());
    auto probs = ctmc_transient(chain, t_hours, 1e-12);
    return probs[0] + probs[1];
  }
  return (zeta * std::exp(eta * t_hours) - eta * std::exp(zeta * t_hours)) /
         (zeta - eta);
}

double mttdl_closed_form(MttdlMethod method, int n, int g, int k,
                         const DriveParams& d) {
  const double mttf = d.mttf_hours, mttr = d.mttr_hours;
  const double delta = d.delta(), mu = d.mu();
  switch (method) {
    case MttdlMethod::Raid5: {
      // n = N data disks (N+1 total)
      return ((2.0 * n + 1.0) * delta + mu) / (double(n) * (n + 1) * delta * delta);
    }
    case MttdlMethod::Chen: {
      if (g <= 0) g = n;
      if (k < 0 || k >= g) throw std::invalid_argument("chen: bad tolerance");
      double denom = double(n);
      for (int j = 1; j <= k; ++j) denom *= double(g - j);
      return std::pow(mttf, k + 1) / (denom * std::pow(mttr, k));
    }
    case MttdlMethod::Angus: {
      if (k < 0 || k >= n) throw std::invalid_argument("angus: bad tolerance");
      const int kd = n - k;  // data units
      double sum = 0.0;
      for (int i = 0; i <= k; ++i)
        sum += binomial_d(n, i) * std::pow(mttr / mttf, i);
      return std::pow(mttf, k + 1) /
             (double(kd) * binomial_d(n, kd) * std::pow(mttr, k)) * sum;
    }
  }
  throw std::invalid_argument("unknown mttdl method");
}

double mttdl_lse_raid5(int n, const DriveParams& d, double puf1) {
  const double delta = d.delta(), mu = d.mu();
  return ((2.0 * n - 1.0) * delta + mu) /
         (double(n) * delta * ((n - 1.0) * delta + mu * puf1));
}

double mttdl_lse_raid6(int n, double delta, double mu1, double mu2,
                       double puf_r, double puf_2) {
  const double v = ((n - 1.0) * delta + mu1 * puf_r) *
                       ((n - 2.0) * delta + mu2 * puf_2) +
                   mu1 * mu2 * puf_r * (1.0 - puf_2);
  const double tau0 =
      (mu1 + (n - 1.0) * delta) * (mu2 + (n - 2.0) * delta) / (double(n) * delta * v);
  const double tau1 = ((n - 2.0) * delta + mu2) / v;
  const double tau2 = (n - 1.0) * delta / v;
  return tau0 + tau1 + tau2;
}

// ---------------------------------------------------------------------------
// Scrubbing

ScrubProb scrub_error_prob(double p_e, double h_per_hour, double ts_hours) {
  if (h_per_hour <= 0 || ts_hours <= 0)
    throw std::invalid_argument("scrub: rates and period must be positive");
  const double x = h_per_hour * ts_hours;
  ScrubProb out;
  out.deterministic = (1.0 - (-std::expm1(-x)) / x) * p_e;
  out.exponential = (x / (1.0 + x)) * p_e;
  return out;
}

double ioe(double kb) { return 1.0 + kb / 50.0; }

double scrub_sigma_max(const ScrubPeriodParams& p) {
  const double sigma_hat = 1.0 / (ioe(p.chunk_kb) * p.io_time_hours);
  return sigma_hat / (1.0 + (1.0 + 2.0 * p.parities) * p.write_fraction);
}

double scrub_min_period(const ScrubPeriodParams& p) {
  const double smax = scrub_sigma_max(p);
  if (p.sigma_per_hour >= smax)
    throw std::domain_error("scrub_min_period: user load at or above capacity");
  return p.disk_kb * ioe(p.scrub_kb) /
         ((1.0 + (1.0 + 2.0 * p.parities) * p.write_fraction) * p.scrub_kb *
          ioe(p.chunk_kb) * (smax - p.sigma_per_hour));
}

// ---------------------------------------------------------------------------
// Polynomials and shortcut terms

double ReliabilityPolynomial::eval(double r) const {
  double sum = 0.0;
  for (size_t i = 0; i < coeffs.size(); ++i)
    sum += double(coeffs[i]) * std::pow(r, n - int(i)) * std::pow(1.0 - r, int(i));
  return sum;
}

ReliabilityPolynomial mirror_poly(MirrorOrg org, int n, int clusters) {
  ReliabilityPolynomial poly;
  poly.n = n;
  switch (org) {
    case MirrorOrg::BM: {
      if (n % 2 != 0) throw std::invalid_argument("BM needs even n");
      int M = n / 2;
      for (int i = 0; i <= M; ++i)
        poly.coeffs.push_back(binomial_ll(M, i) << i);  // C(M,i) 2^i
      break;
    }
    case MirrorOrg::ID: {
      if (clusters < 1 || n % clusters != 0)
        throw std::invalid_argument("ID needs clusters dividing n");
      int m = n / clusters;
      long long mi = 1;
      for (int i = 0; i <= clusters; ++i) {
        poly.coeffs.push_back(binomial_ll(clusters, i) * mi);
        mi *= m;
      }
      break;
    }
    case MirrorOrg::GRD: {
      if (n % 2 != 0) throw std::invalid_argument("GRD needs even n");
      int M = n / 2;
      poly.coeffs.push_back(1);
      for (int i = 1; i <= M; ++i) poly.coeffs.push_back(2 * binomial_ll(M, i));
      break;
    }
    case MirrorOrg::CD: {
      poly.coeffs.push_back(1);
      for (int i = 1; i <= n / 2; ++i)
        poly.coeffs.push_back(binomial_ll(n - i - 1, i - 1) + binomial_ll(n - i, i));
      break;
    }
  }
  return poly;
}

ReliabilityPolynomial enumerate_poly(
    const std::function<bool(const std::vector<int>&)>& survives, int n) {
  if (n < 1 || n > 16)
    throw std::length_error("enumerate_poly: capped at n <= 16");
  std::vector<long long> counts(size_t(n) + 1, 0);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> failed;
    for (int d = 0; d < n; ++d)
      if (mask & (1u << d)) failed.push_back(d);
    if (survives(failed)) ++counts[failed.size()];
  }
  ReliabilityPolynomial poly;
  poly.n = n;
  int last = n;
  while (last > 0 && counts[size_t(last)] == 0) --last;
  poly.coeffs.assign(counts.begin(), counts.begin() + last + 1);
  return poly;
}

ShortcutTerm shortcut_term(const ReliabilityPolynomial& poly) {
  // 1 - sum_i A_i (1-eps)^(N-i) eps^i; coefficient of eps^p is
  // -sum_{i<=p} A_i C(N-i, p-i) (-1)^(p-i)   (and 1 at p = 0).
  for (int p = 0; p <= poly.n; ++p) {
    long long u = (p == 0) ? 1 : 0;
    for (int i = 0; i <= p && i < int(poly.coeffs.size()); ++i) {
      long long term = poly.coeffs[size_t(i)] * binomial_ll(poly.n - i, p - i);
      u -= ((p - i) % 2 == 0) ? term : -term;
    }
    if (u != 0) return {make_fraction(u, 1), p};
  }
  return {make_fraction(0, 1), poly.n + 1};
}

Fraction poly_norepair_mttdl(const ReliabilityPolynomial& poly) {
  if (poly.n > 16) throw std::length_error("poly_norepair_mttdl: n capped at 16");
  long long num = 0;
  long long fact_n = 1;
  for (int i = 2; i <= poly.n; ++i) fact_n *= i;
  for (size_t i = 0; i < poly.coeffs.size(); ++i) {
    long long term = poly.coeffs[i];
    for (int j = 2; j <= poly.n - int(i) - 1; ++j) term *= j;
    for (int j = 2; j <= int(i); ++j) term *= j;
    num += term;
  }
  return make_fraction(num, fact_n);
}

ShortcutTerm shortcut_named(const std::string& system, int n, int c) {
  if (system == "raid5") return {make_fraction(binomial_ll(n, 2), 1), 2};
  if (system == "raid6") return {make_fraction(binomial_ll(n, 3), 1), 3};
  if (system == "raid7") return {make_fraction(binomial_ll(n, 4), 1), 4};
  if (system == "bm") return {make_fraction(n, 2), 2};
  if (system == "cd") return {make_fraction(n, 1), 2};
  if (system == "grd") return {make_fraction((long long)n * n, 4), 2};
  if (system == "id") {
    if (c < 1) throw std::invalid_argument("id shortcut needs cluster count");
    return {make_fraction((long long)n * (n - c), 2LL * c), 2};
  }
  if (system == "lsi")
    // The published table prints the survivable-triple count C(N,3)-N/2
    // here; the leading fatal-pattern coefficient consistent with the
    // table's own MTTDL column (82/105 at N=8) is N/2.
    return {make_fraction(n, 2), 3};
  if (system == "sspiral") return {make_fraction(binomial_ll(n, 4), 5), 4};
  if (system == "raid15")
    return {make_fraction((long long)n * n * (n - 1), 4), 4};
  if (system == "raid51")
    return {make_fraction((long long)n * (n - 1), 2), 4};
  throw std::invalid_argument("unknown shortcut system: " + system);
}

// ---------------------------------------------------------------------------
// Multilevel arrays

double raid5_reliability_poly(int n, double r) {
  return std::pow(r, n) + double(n) * std::pow(r, n - 1) * (1.0 - r);
}

double raid15_reliability(int n, double r) {
  const double r5 = raid5_reliability_poly(n, r);
  return 1.0 - (1.0 - r5) * (1.0 - r5);
}

double raid51_reliability(int n_pairs, double r) {
  const double r1 = 1.0 - (1.0 - r) * (1.0 - r);
  return double(n_pairs) * std::pow(r1, n_pairs - 1) -
         double(n_pairs - 1) * std::pow(r1, n_pairs);
}

MultilevelResult multilevel_mttdl(MultilevelKind kind, int n_or_d,
                                  const DriveParams& d) {
  MultilevelResult res;
  const double delta = d.delta(), mu = d.mu();
  if (kind == MultilevelKind::Raid15Approx) {
    const int n = n_or_d;
    res.mttdl_hours = 1.5 * mu / (double(n) * (n + 1) * delta * delta);
    return res;
  }
  const int D = n_or_d;  // devices per side; N = 2D
  res.p_upper = (D - 1.0) * std::pow(delta, 3) / (2.0 * std::pow(mu, 3));
  res.p_lower = (D - 1.0) * std::pow(delta, 3) / std::pow(mu, 3);
  res.p_dl = res.p_upper + res.p_lower;
  res.mttdl_hours = 1.0 / (2.0 * D * delta * res.p_dl);
  return res;
}

// ---------------------------------------------------------------------------
// Placement metrics

PlacementMetrics placement_metrics(Placement scheme, int n, double c, int r,
                                   double b, double delta) {
  if (r < 2 || n < r || c <= 0 || b <= 0 || delta <= 0)
    throw std::invalid_argument("placement_metrics: bad parameters");
  PlacementMetrics out;
  out.user_data = double(n) * c / double(r);
  if (scheme == Placement::Clustered) {
    out.mttdl_hours = std::pow(b / (delta * c), r - 1) / (double(n) * delta);
    out.eafdl_per_hour = std::pow(delta * c / b, r - 1) * delta;
  } else {
    double prod_mttdl = 1.0;
    for (int e = 1; e <= r - 2; ++e)
      prod_mttdl *= std::pow(double(n - e) / double(r - e), r - e - 1);
    out.mttdl_hours = std::pow(b / (2.0 * delta * c), r - 1) *
                      std::tgamma(double(r)) / (double(n) * delta) * prod_mttdl;
    double prod_eafdl = 1.0;
    for (int e = 1; e <= r - 1; ++e)
      prod_eafdl *= std::pow(double(r - e) / double(n - e), r - e);
    out.eafdl_per_hour = std::pow(2.0 * delta * c / b, r - 1) * delta /
                         std::tgamma(double(r)) * prod_eafdl;
  }
  return out;
}

// ---------------------------------------------------------------------------
// HDA comparison, Diff-RAID, exponential mixtures

HdaComparison hda_compare(double epsilon) {
  const double r = 1.0 - epsilon;
  HdaComparison out;
  out.r_c1 = (1.0 - (1.0 - r) * (1.0 - r)) *
             (std::pow(r, 6) + 6.0 * std::pow(r, 5) * (1.0 - r));
  out.r_c2 = std::pow(1.0 - (1.0 - r) * (1.0 - r), 4) *
             (std::pow(r, 8) + 8.0 * std::pow(r, 7) * (1.0 - r));
  return out;
}

std::vector<std::vector<double>> diffraid_aging(const std::vector<double>& parity_pct,
                                                int n) {
  if (int(parity_pct.size()) != n)
    throw std::invalid_argument("diffraid: one percentage per device");
  double total = 0.0;
  for (double p : parity_pct) total += p;
  if (std::abs(total - 100.0) > 1e-9)
    throw std::invalid_argument("diffraid: percentages must sum to 100");
  auto weight = [&](double p) { return p * (n - 1) + (100.0 - p); };
  std::vector<std::vector<double>> a(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[size_t(i)][size_t(j)] = weight(parity_pct[size_t(i)]) / weight(parity_pct[size_t(j)]);
  return a;
}

double ExpMixture::reliability(double t) const {
  double sum = 0.0;
  for (const auto& term : terms) sum += term.weight * std::exp(-term.rate * t);
  return sum;
}

double ExpMixture::mttf() const {
  double sum = 0.0;
  for (const auto& term : terms) {
    if (term.rate <= 0) throw std::invalid_argument("exp mixture: rate <= 0");
    sum += term.weight / term.rate;
  }
  return sum;
}

ExpMixture raid5_exp_mixture(int n_data, const DriveParams& d) {
  double zeta, eta;
  raid5_roots(n_data, d.delta(), d.mu(), &zeta, &eta);
  ExpMixture mix;
  mix.terms.push_back({zeta / (zeta - eta), -eta});
  mix.terms.push_back({-eta / (zeta - eta), -zeta});
  return mix;
}

}  // namespace raidlab
