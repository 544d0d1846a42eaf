#ifndef RAIDLAB_REBUILD_HPP
#define RAIDLAB_REBUILD_HPP

#include "core/dist.hpp"
#include "core/queueing.hpp"

namespace raidlab {

// ---------------------------------------------------------------------------
// Degraded-mode load

struct DegradedLoad {
  double load_increase = 0.0;      // U_faulty / U_faultfree
  double rho_read_per_lambda = 0;  // clustered-RAID5 read utilization / Lambda
  double rho_write_per_lambda = 0;
};

struct RmwMeans {
  double read_ms = 0.0;
  double write_ms = 0.0;
  double rmw_ms = 0.0;
};

DegradedLoad degraded_load(int n, int g, double f_r, const RmwMeans& means);

// ---------------------------------------------------------------------------
// Vacationing server model

struct VacationSpec {
  Dist type1;  // first rebuild read of an idle period (seek + track)
  Dist type2;  // successive track reads
};

struct VsmResult {
  double rho = 0.0;
  double w_mg1 = 0.0;
  double v_residual = 0.0;   // mean residual vacation time
  double w_vsm = 0.0;        // W_MG1 + v_r
  double n_track = 0.0;      // vacations per idle period
  double t_dc = 0.0;         // delay cycle
  double t_cycle = 0.0;      // t_dc + 1/lambda
  double t_rebuild = 0.0;    // summed over the redirection steps
  ServiceMoments vacation;   // mixed vacation moments at this lambda
};

// lambda in 1/ms, service moments in ms, n_tracks tracks to read; the
// rebuild time sums k load steps rho_i = (2 - i/k) rho as read redirection
// relieves the surviving disks.
VsmResult vsm_rebuild(double lambda, const ServiceMoments& service,
                      const VacationSpec& vacations, double n_tracks,
                      int redirection_steps);

// ---------------------------------------------------------------------------
// Rebuild-time shortcuts

// T(rho) = T(0) / (1 - beta rho), beta ~ 1.75.
double rebuild_beta_estimate(double t_zero, double rho, double beta = 1.75);

struct BandwidthRebuildParams {
  double lambda_per_ms = 0.0;   // external request rate
  double x_disk_ms = 0.0;       // mean external service time
  double v_residual_ms = 0.0;   // mean residual rebuild read
  double seek_ms = 0.0;         // initial seek of a rebuild burst
  double rotation_ms = 4.0;     // T_R
  double ru_fraction_of_track = 1.0;  // f
  double ru_bytes = 0.0;        // s_RU
  double ru_transfer_ms = 0.0;  // x_RU
  double utilization = 1.0;     // U, fraction of capacity in use
  double capacity_bytes = 0.0;  // C_d
};

struct BandwidthRebuildResult {
  double n_ru = 0.0;        // consecutive RUs per burst, 1/(1 - e^{-lambda x_RU})
  double latency_ms = 0.0;  // (1 + f^2) T_R / 2
  double t_dc_ms = 0.0;
  double bandwidth_bytes_per_ms = 0.0;
  double t_rebuild_ms = 0.0;  // U C_d / b_d
};

BandwidthRebuildResult rebuild_bandwidth_estimate(const BandwidthRebuildParams& p);

// Probability a rebuild burst is cut short by an arrival, under the
// vacationing-server and permanent-customer models.
struct PcmVsmResult {
  double p_vsm = 0.0;  // 1 - e^{-lambda x_RU}
  double p_pcm = 0.0;  // 1 - e^{-lambda (x_RU + W_RU)}
};

PcmVsmResult pcm_vs_vsm(double lambda, double x_ru, double w_ru);

}  // namespace raidlab

#endif
