#ifndef RAIDLAB_CTMC_HPP
#define RAIDLAB_CTMC_HPP

#include <string>
#include <vector>

#include <stdexcept>

namespace raidlab {

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Continuous-time Markov chain: generator rates in 1/hour.  `rates` holds
// the off-diagonal transition rates (diagonal entries are derived);
// absorbing states have all-zero rows.
struct CTMCModel {
  std::vector<std::string> states;
  std::vector<std::vector<double>> rates;
  std::vector<int> absorbing;
  std::vector<double> initial;

  size_t size() const { return states.size(); }
  void validate() const;

  std::string to_json() const;
  static CTMCModel from_json(const std::string& text);
};

struct MttaResult {
  double hours = 0.0;
  std::vector<double> state_time;       // tau per transient state index
  std::vector<double> absorb_prob;      // per absorbing state (model order)
};

// Mean time to absorption: solves tau * (-Q_T) = pi_T(0) for the expected
// time spent in each transient state, then splits absorption mass by the
// rates into each absorbing state.
MttaResult ctmc_mtta(const CTMCModel& model);

// Transient distribution at time t by uniformization, truncated when the
// Poisson tail drops below tol; the result sums to 1 +- tol.
std::vector<double> ctmc_transient(const CTMCModel& model, double t, double tol);

// ---------------------------------------------------------------------------
// Named chains

CTMCModel raid5_chain(int n_data, double delta, double mu);

// k-of-n with fixed repair rate mu (Chen's assumption); tolerance f = n - k.
CTMCModel kofn_chain_fixed_repair(int n, int f, double delta, double mu);

// k-of-n with repair rate i*mu in state i (Angus's assumption).
CTMCModel kofn_chain_proportional_repair(int n, int f, double delta, double mu);

// RAID5 with unrecoverable sector errors: DF and UF absorbing states.
CTMCModel lse_raid5_chain(int n, double delta, double mu, double puf);

// RAID6 with sector errors; rebuild rates mu1 (degraded) / mu2 (critical).
CTMCModel lse_raid6_chain(int n, double delta, double mu1, double mu2,
                          double puf_r, double puf_2);

// LRC fragment chain: states by surviving fragments 10..6 plus data loss;
// the fourth failure is decodable with probability p_d.
CTMCModel lrc_chain(int n, double delta, double p_d, double rho_single,
                    double rho_multi);

// Expected absorption time of a birth-death chain with up rates lambda_i
// from state i and down rates mu_i, absorbing at state m; used as the
// independent oracle for ctmc_mtta.
double birth_death_mtta(const std::vector<double>& up,
                        const std::vector<double>& down);

}  // namespace raidlab

#endif
