#ifndef RAIDLAB_SIM_HPP
#define RAIDLAB_SIM_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "core/copysets.hpp"
#include "core/rng.hpp"

namespace raidlab {

// ---------------------------------------------------------------------------
// Sampling primitives (all consuming the per-replication stream)

double exponential_sample(Xoshiro256& rng, double rate);
double normal_sample(Xoshiro256& rng);  // polar method
// Marsaglia-Tsang; exact for shape >= 1.  Returns the sum of `shape` iid
// exponentials when called with integer shape and the matching rate.
double gamma_sample(Xoshiro256& rng, double shape, double rate);

// ---------------------------------------------------------------------------
// Reports

struct SimReport {
  uint64_t seed = 0;
  uint64_t replications = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double std_error = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  double controller_loss_fraction = 0.0;  // HRAID only: losses via controllers
  std::vector<double> samples;            // per replication, in index order

  std::string to_json(bool include_samples = false) const;
  std::string samples_csv() const;
};

// ---------------------------------------------------------------------------
// Simulators

struct HraidConfig {
  int nodes = 4;            // N storage nodes
  int disks_per_node = 4;   // M
  int inter_k = 1;          // tolerated node failures
  int intra_l = 1;          // tolerated disk failures per node
  double delta = 1e-6;      // disk failure rate per hour
  double gamma = 1e-7;      // controller failure rate per hour
  uint64_t seed = 1;
  uint64_t replications = 10000;
};

// Appendix-style five-step next-failure procedure: total rate
// Omega = (N - N_c) gamma + (D - N_d) delta, exponential jumps, rejection
// resampling of already-failed components, node failure on controller loss
// or more than intra_l failed disks, data loss past inter_k failed nodes.
SimReport simulate_hraid(const HraidConfig& config, int jobs = 1);

enum class RepairPolicy { SingleRepairman, Proportional };

struct KofnConfig {
  int n = 10;
  int k = 9;                // data threshold; tolerance is n - k
  double mttf_hours = 2000;
  double mttr_hours = 1.0;
  RepairPolicy policy = RepairPolicy::Proportional;
  uint64_t seed = 1;
  uint64_t replications = 10000;
};

// Failure/repair race over the birth-death chain.  The embedded jump chain
// is simulated per event; the absorption time is then drawn exactly as the
// sum of per-state Erlang sojourns (counts and holding times of a CTMC are
// independent), keeping desk-scale runs fast.
SimReport simulate_kofn_repair(const KofnConfig& config, int jobs = 1);

// Plain event-by-event variant, kept as a cross-check of the jump-chain
// acceleration.
SimReport simulate_kofn_repair_events(const KofnConfig& config, int jobs = 1);

struct CopysetSimConfig {
  double node_fail_prob = 0.01;
  int exact_failures = 0;  // > 0: condition on exactly this many failures
  uint64_t seed = 1;
  uint64_t replications = 10000;
};

// P_DL estimate: nodes fail independently (or an exact-count failure set is
// drawn); loss iff some copyset fails entirely.
SimReport simulate_copyset(const CopysetPlan& plan, const CopysetSimConfig& config,
                           int jobs = 1);

struct StaticLossConfig {
  double survive_prob = 0.99;
  uint64_t seed = 1;
  uint64_t replications = 10000;
};

// Reliability estimate for i.i.d. disk survival against a loss predicate.
SimReport simulate_static_loss(
    const std::function<bool(const std::vector<int>&)>& survives, int n,
    const StaticLossConfig& config, int jobs = 1);

}  // namespace raidlab

#endif
