#ifndef RAIDLAB_RELIABILITY_HPP
#define RAIDLAB_RELIABILITY_HPP

#include <functional>
#include <string>
#include <vector>

#include "core/codes.hpp"  // Fraction
#include "core/ctmc.hpp"
#include "core/mirrors.hpp"

namespace raidlab {

constexpr double kHoursPerYear = 8766.0;

// ---------------------------------------------------------------------------
// Drive and sector-error parameters

struct DriveParams {
  double mttf_hours = 1e6;
  double mttr_hours = 10.0;
  double capacity_bytes = 300e9;
  double sector_bytes = 512.0;

  double delta() const { return 1.0 / mttf_hours; }
  double mu() const { return 1.0 / mttr_hours; }

  static DriveParams from_afr(double afr, double mttr_hours);
};

struct AfrResult {
  double exact = 0.0;   // 1 - exp(-8766/MTTF)
  double approx = 0.0;  // 8766/MTTF
};

AfrResult afr_from_mttf(double mttf_hours);

struct LSEParams {
  double p_bit = 1e-14;        // bit error probability
  double sector_bytes = 512.0;
  int segment_len = 128;       // sectors per segment (l)
  int interleaves = 8;         // m
  std::vector<double> burst_pmf;  // b_j, j >= 1; defaults to the SATA vector

  double ps() const;          // unrecoverable sector probability
  double mean_burst() const;  // B-bar
  double gn(int n) const;     // P[burst >= n]
  static std::vector<double> default_burst_pmf();  // B-bar = 1.0291
};

enum class IdrScheme { None, RS, SPC, IPC };
enum class ErrorModel { Independent, Correlated };

IdrScheme idr_scheme_from_string(const std::string& s);
ErrorModel error_model_from_string(const std::string& s);

// Probability that a segment is in error under the given coding scheme and
// error model (exact binomial forms for the independent model, first-order
// burst forms for the correlated one).
double pseg(IdrScheme scheme, ErrorModel model, const LSEParams& p);

// Probability of an unrecoverable failure during a rebuild with k disks
// already failed: 1 - (1 - P_seg)^((N-k) C_d / (l S)).
double puf(int n, int k_failed, double p_seg, const LSEParams& p,
           const DriveParams& d);

// RAID6 degraded-mode rebuild failure: a segment is lost only when two or
// more of the N-1 corresponding surviving segments are in error, so
// P_recf <= C(N-1,2) P_seg^2 over the N_d = C_d/(lS) segments of a disk.
double puf_raid6_degraded(int n, double p_seg, const LSEParams& p,
                          const DriveParams& d);

// ---------------------------------------------------------------------------
// Closed-form MTTDL and transient reliability

double kofn_no_repair(int n, int k, double r);

// RAID5 transient reliability with N data disks (N+1 total).
double raid5_transient(int n_data, const DriveParams& d, double t_hours);

// Exponent pair of the RAID5 transient solution.
void raid5_roots(int n_data, double delta, double mu, double* zeta, double* eta);

enum class MttdlMethod { Raid5, Chen, Angus };

// raid5: ((2N+1)d + mu) / (N(N+1)d^2)  with n = N data disks
// chen:  MTTF^(k+1) / (N (G-1)...(G-k) MTTR^k)
// angus: MTTF^(k+1)/((n-k) C(n,n-k) MTTR^k) * sum_i C(n,i)(MTTR/MTTF)^i
//        where k counts tolerated failures.
double mttdl_closed_form(MttdlMethod method, int n, int g, int k,
                         const DriveParams& d);

// RAID5/RAID6 MTTDL with unrecoverable sector errors.
double mttdl_lse_raid5(int n, const DriveParams& d, double puf1);
double mttdl_lse_raid6(int n, double delta, double mu1, double mu2,
                       double puf_r, double puf_2);

// ---------------------------------------------------------------------------
// Scrubbing

struct ScrubProb {
  double deterministic = 0.0;  // [1 - (1-e^{-hTs})/(hTs)] Pe
  double exponential = 0.0;    // [hTs/(1+hTs)] Pe
};

ScrubProb scrub_error_prob(double p_e, double h_per_hour, double ts_hours);

struct ScrubPeriodParams {
  double chunk_kb = 4.0;       // user I/O size (k)
  double disk_kb = 300e6;      // scrubbed capacity S_D
  double scrub_kb = 256.0;     // sectors scrubbed per operation G_S
  double write_fraction = 0.3; // r_w
  double sigma_per_hour = 0.0; // user I/O rate
  int parities = 1;            // p = 1 (RAID5) or 2 (RAID6)
  double io_time_hours = 5e-6; // mean positioning time per I/O
};

double ioe(double kb);  // I/O equivalents, 1 + k/50

double scrub_sigma_max(const ScrubPeriodParams& p);
double scrub_min_period(const ScrubPeriodParams& p);  // hours

// ---------------------------------------------------------------------------
// Reliability polynomials and the shortcut method

struct ReliabilityPolynomial {
  int n = 0;
  std::vector<long long> coeffs;  // A(N,i), i = 0..I

  double eval(double r) const;
};

ReliabilityPolynomial mirror_poly(MirrorOrg org, int n, int clusters = 0);

// A(N,i) by brute force: count of i-subsets whose failure is survivable.
ReliabilityPolynomial enumerate_poly(
    const std::function<bool(const std::vector<int>&)>& survives, int n);

struct ShortcutTerm {
  Fraction coeff;
  int power = 0;
  double value() const { return coeff.value(); }
};

// Leading term of 1 - sum A(N,i) (1-eps)^(N-i) eps^i.
ShortcutTerm shortcut_term(const ReliabilityPolynomial& poly);

// MTTDL of the no-repair array in units of 1/delta, exactly:
//   integral of sum A_i r^(N-i)(1-r)^i dt with r = e^(-delta t)
//   = sum A_i (N-i-1)! i! / N!.
Fraction poly_norepair_mttdl(const ReliabilityPolynomial& poly);

// Named leading terms of the shortcut comparison table.
ShortcutTerm shortcut_named(const std::string& system, int n, int c = 0);

// ---------------------------------------------------------------------------
// Multilevel arrays

double raid5_reliability_poly(int n, double r);   // r^n + n r^(n-1)(1-r)
double raid15_reliability(int n, double r);       // 1 - (1 - R5)^2
double raid51_reliability(int n_pairs, double r); // N R1^(N-1) - (N-1) R1^N

enum class MultilevelKind { Raid15Approx, Raid51Path };

struct MultilevelResult {
  double mttdl_hours = 0.0;
  double p_upper = 0.0;  // RAID5/1 upper path probability
  double p_lower = 0.0;
  double p_dl = 0.0;
};

MultilevelResult multilevel_mttdl(MultilevelKind kind, int n_or_d,
                                  const DriveParams& d);

// ---------------------------------------------------------------------------
// Clustered vs declustered placement (MTTDL / EAFDL closed forms)

enum class Placement { Clustered, Declustered };

struct PlacementMetrics {
  double mttdl_hours = 0.0;
  double eafdl_per_hour = 0.0;  // multiply by kHoursPerYear for annual
  double user_data = 0.0;       // U = n c / r
};

PlacementMetrics placement_metrics(Placement scheme, int n, double c, int r,
                                   double b, double delta);

// ---------------------------------------------------------------------------
// Assorted comparisons

struct HdaComparison {
  double r_c1 = 0.0;       // [1-(1-r)^2][r^6 + 6 r^5 (1-r)]
  double r_c2 = 0.0;       // [1-(1-r)^2]^4 [r^8 + 8 r^7 (1-r)]
  double lead_c1 = 16.0;
  double lead_c2 = 32.0;
};

HdaComparison hda_compare(double epsilon);

// Pairwise Diff-RAID aging ratios for a parity-percentage assignment.
std::vector<std::vector<double>> diffraid_aging(const std::vector<double>& parity_pct,
                                                int n);

struct ExpMixture {
  struct Term {
    double weight = 0.0;  // A_i
    double rate = 0.0;    // sigma_i
  };
  std::vector<Term> terms;

  double reliability(double t) const;
  double mttf() const;  // sum A_i / sigma_i
};

// RAID5 transient recast as a two-term exponential mixture.
ExpMixture raid5_exp_mixture(int n_data, const DriveParams& d);

long long binomial_ll(int n, int k);
double binomial_d(int n, int k);

}  // namespace raidlab

#endif
