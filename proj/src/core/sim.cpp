#include "core/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace raidlab {

using nlohmann::json;

double exponential_sample(Xoshiro256& rng, double rate) {
  return -std::log(rng.next_open_double()) / rate;
}

double normal_sample(Xoshiro256& rng) {
  // Marsaglia polar method
  for (;;) {
    double u = 2.0 * rng.next_double() - 1.0;
    double v = 2.0 * rng.next_double() - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0)
      return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

double gamma_sample(Xoshiro256& rng, double shape, double rate) {
  if (shape <= 0.0) return 0.0;
  if (shape < 1.0) throw std::invalid_argument("gamma_sample: shape >= 1 only");
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal_sample(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = rng.next_open_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

// ---------------------------------------------------------------------------
// Report assembly and the parallel driver

namespace {

SimReport finalize(uint64_t seed, std::vector<double> samples) {
  SimReport rep;
  rep.seed = seed;
  rep.replications = samples.size();
  double sum = 0.0;
  for (double s : samples) sum += s;
  rep.mean = sum / double(samples.size());
  double ss = 0.0;
  for (double s : samples) ss += (s - rep.mean) * (s - rep.mean);
  rep.stddev = samples.size() > 1 ? std::sqrt(ss / double(samples.size() - 1)) : 0.0;
  rep.std_error = rep.stddev / std::sqrt(double(samples.size()));
  rep.ci95_lo = rep.mean - 1.96 * rep.std_error;
  rep.ci95_hi = rep.mean + 1.96 * rep.std_error;
  rep.samples = std::move(samples);
  return rep;
}

// Runs fn once per replication with its own derived stream; the sample
// vector is indexed by replication, so results do not depend on the job
// count or scheduling.
template <typename Fn>
std::vector<double> run_replications(uint64_t seed, uint64_t replications,
                                     int jobs, Fn&& fn) {
  if (replications < 1) throw std::invalid_argument("sim: need replications >= 1");
  std::vector<double> samples(static_cast<size_t>(replications), 0.0);
  jobs = std::max(1, jobs);
  if (jobs == 1) {
    for (uint64_t i = 0; i < replications; ++i) {
      Xoshiro256 rng = Xoshiro256::stream(seed, i);
      samples[size_t(i)] = fn(i, rng);
    }
    return samples;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&, t]() {
      for (uint64_t i = uint64_t(t); i < replications; i += uint64_t(jobs)) {
        Xoshiro256 rng = Xoshiro256::stream(seed, i);
        samples[size_t(i)] = fn(i, rng);
      }
    });
  }
  for (auto& th : pool) th.join();
  return samples;
}

}  // namespace

std::string SimReport::to_json(bool include_samples) const {
  json j;
  j["seed"] = seed;
  j["replications"] = replications;
  j["mean"] = mean;
  j["stddev"] = stddev;
  j["std_error"] = std_error;
  j["ci95"] = {ci95_lo, ci95_hi};
  j["controller_loss_fraction"] = controller_loss_fraction;
  if (include_samples) j["samples"] = samples;
  return j.dump();
}

std::string SimReport::samples_csv() const {
  std::ostringstream out;
  out << "replication,sample\n";
  for (size_t i = 0; i < samples.size(); ++i) out << i << ',' << samples[i] << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// HRAID

SimReport simulate_hraid(const HraidConfig& c, int jobs) {
  const int N = c.nodes, M = c.disks_per_node;
  if (N < 1 || M < 1) throw std::invalid_argument("hraid: bad topology");
  if (c.inter_k >= N)
    throw std::invalid_argument("hraid: inter-node tolerance must be below N");
  if (c.delta <= 0 && c.gamma <= 0)
    throw std::invalid_argument("hraid: need a positive failure rate");
  const int D = N * M;
  // expected resampling work is bounded by D log D per event; the guard
  // trips far above that
  const uint64_t resample_guard = 1000ull * uint64_t(D) + 1000;

  std::vector<char> controller_loss(static_cast<size_t>(c.replications), 0);
  auto samples = run_replications(
      c.seed, c.replications, jobs, [&](uint64_t rep, Xoshiro256& rng) {
        std::vector<char> node_up(static_cast<size_t>(N), 1);
        std::vector<char> disk_up(static_cast<size_t>(D), 1);
        std::vector<int> failed_disks(static_cast<size_t>(N), 0);
        int nc = 0;  // failed controllers
        int nd = 0;  // failed disks (including those on failed nodes)
        int nn = 0;  // failed nodes
        double clock = 0.0;
        auto fail_node = [&](int node) {
          node_up[size_t(node)] = 0;
          ++nn;
          for (int m = 0; m < M; ++m) {
            int id = node * M + m;
            if (disk_up[size_t(id)]) {
              disk_up[size_t(id)] = 0;
              ++nd;
            }
          }
        };
        for (;;) {
          const double omega = (N - nc) * c.gamma + (D - nd) * c.delta;
          if (omega <= 0.0)
            throw std::runtime_error("hraid: no failable components left");
          clock += -std::log(rng.next_open_double()) / omega;
          const bool controller =
              rng.next_double() <= (N - nc) * c.gamma / omega;
          if (controller) {
            uint64_t guard = 0;
            int node = int(rng.next_below(uint64_t(N)));
            while (!node_up[size_t(node)]) {
              if (++guard > resample_guard)
                throw std::runtime_error("hraid: resampling guard tripped");
              node = int(rng.next_below(uint64_t(N)));
            }
            ++nc;
            fail_node(node);
            if (nn > c.inter_k) {
              controller_loss[size_t(rep)] = 1;
              return clock;
            }
          } else {
            uint64_t guard = 0;
            int disk = int(rng.next_below(uint64_t(D)));
            while (!disk_up[size_t(disk)]) {
              if (++guard > resample_guard)
                throw std::runtime_error("hraid: resampling guard tripped");
              disk = int(rng.next_below(uint64_t(D)));
            }
            const int node = disk / M;
            disk_up[size_t(disk)] = 0;
            ++nd;
            ++failed_disks[size_t(node)];
            if (failed_disks[size_t(node)] <= c.intra_l) continue;
            fail_node(node);
            if (nn > c.inter_k) return clock;
          }
        }
      });
  SimReport rep = finalize(c.seed, std::move(samples));
  double ctl = 0.0;
  for (char f : controller_loss) ctl += f;
  rep.controller_loss_fraction = ctl / double(c.replications);
  return rep;
}

// ---------------------------------------------------------------------------
// k-of-n with repair

namespace {

struct KofnRates {
  std::vector<double> fail;    // per state
  std::vector<double> repair;  // per state
  std::vector<double> total;
  int absorb_state;
};

KofnRates kofn_rates(const KofnConfig& c) {
  if (c.k < 0 || c.k > c.n) throw std::invalid_argument("kofn: need k <= n");
  if (c.mttf_hours <= 0 || c.mttr_hours <= 0)
    throw std::invalid_argument("kofn: rates must be positive");
  const int f = c.n - c.k;  // tolerated failures
  const double delta = 1.0 / c.mttf_hours, mu = 1.0 / c.mttr_hours;
  KofnRates r;
  r.absorb_state = f + 1;
  for (int i = 0; i <= f; ++i) {
    r.fail.push_back((c.n - i) * delta);
    r.repair.push_back(i == 0 ? 0.0
                              : (c.policy == RepairPolicy::Proportional ? i * mu : mu));
    r.total.push_back(r.fail.back() + r.repair.back());
  }
  return r;
}

}  // namespace

SimReport simulate_kofn_repair(const KofnConfig& c, int jobs) {
  const KofnRates rates = kofn_rates(c);
  const int f = rates.absorb_state - 1;
  auto samples = run_replications(
      c.seed, c.replications, jobs, [&](uint64_t, Xoshiro256& rng) {
        std::vector<uint64_t> visits(static_cast<size_t>(f) + 1, 0);
        int state = 0;
        for (;;) {
          ++visits[size_t(state)];
          if (state == 0) {
            state = 1;
            if (f == 0) break;
            continue;
          }
          const bool down =
              rng.next_double() * rates.total[size_t(state)] < rates.fail[size_t(state)];
          if (down) {
            if (state == f) break;  // next failure loses data
            ++state;
          } else {
            --state;
          }
        }
        double time = 0.0;
        for (int i = 0; i <= f; ++i)
          if (visits[size_t(i)] > 0)
            time += gamma_sample(rng, double(visits[size_t(i)]), rates.total[size_t(i)]);
        return time;
      });
  return finalize(c.seed, std::move(samples));
}

SimReport simulate_kofn_repair_events(const KofnConfig& c, int jobs) {
  const KofnRates rates = kofn_rates(c);
  const int f = rates.absorb_state - 1;
  auto samples = run_replications(
      c.seed, c.replications, jobs, [&](uint64_t, Xoshiro256& rng) {
        double clock = 0.0;
        int state = 0;
        for (;;) {
          clock += exponential_sample(rng, rates.total[size_t(state)]);
          const bool down =
              state == 0 ||
              rng.next_double() * rates.total[size_t(state)] < rates.fail[size_t(state)];
          if (down) {
            if (state == f) return clock;
            ++state;
          } else {
            --state;
          }
        }
      });
  return finalize(c.seed, std::move(samples));
}

// ---------------------------------------------------------------------------
// Copysets

SimReport simulate_copyset(const CopysetPlan& plan, const CopysetSimConfig& c,
                           int jobs) {
  const int n = plan.n_nodes;
  if (n < 1) throw std::invalid_argument("copyset sim: empty plan");
  // Index copysets by their smallest node so a replication only scans the
  // sets anchored at failed nodes.
  std::vector<std::vector<uint32_t>> by_anchor(static_cast<size_t>(n));
  for (uint32_t i = 0; i < plan.copysets.size(); ++i)
    by_anchor[size_t(plan.copysets[i].front())].push_back(i);

  auto samples = run_replications(
      c.seed, c.replications, jobs, [&](uint64_t, Xoshiro256& rng) {
        std::vector<char> failed(static_cast<size_t>(n), 0);
        std::vector<int> failed_ids;
        if (c.exact_failures > 0) {
          // draw an exact-size failure set by rejection
          int need = c.exact_failures;
          while (need > 0) {
            int node = int(rng.next_below(uint64_t(n)));
            if (!failed[size_t(node)]) {
              failed[size_t(node)] = 1;
              failed_ids.push_back(node);
              --need;
            }
          }
        } else {
          for (int node = 0; node < n; ++node)
            if (rng.next_double() < c.node_fail_prob) {
              failed[size_t(node)] = 1;
              failed_ids.push_back(node);
            }
        }
        for (int node : failed_ids)
          for (uint32_t cs : by_anchor[size_t(node)]) {
            bool all = true;
            for (int member : plan.copysets[size_t(cs)])
              if (!failed[size_t(member)]) {
                all = false;
                break;
              }
            if (all) return 1.0;
          }
        return 0.0;
      });
  return finalize(c.seed, std::move(samples));
}

// ---------------------------------------------------------------------------
// Static loss

SimReport simulate_static_loss(
    const std::function<bool(const std::vector<int>&)>& survives, int n,
    const StaticLossConfig& c, int jobs) {
  if (n < 1 || n > 64) throw std::invalid_argument("static loss: n capped at 64");
  auto samples = run_replications(
      c.seed, c.replications, jobs, [&](uint64_t, Xoshiro256& rng) {
        std::vector<int> failed;
        for (int d = 0; d < n; ++d)
          if (rng.next_double() >= c.survive_prob) failed.push_back(d);
        return survives(failed) ? 1.0 : 0.0;
      });
  return finalize(c.seed, std::move(samples));
}

}  // namespace raidlab
