#include "core/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace raidlab {

using nlohmann::json;

void CTMCModel::validate() const {
  const size_t n = states.size();
  if (rates.size() != n || initial.size() != n)
    throw std::invalid_argument("ctmc: shape mismatch");
  for (const auto& row : rates) {
    if (row.size() != n) throw std::invalid_argument("ctmc: ragged rate matrix");
    for (double r : row)
      if (r < 0 || !std::isfinite(r))
        throw std::invalid_argument("ctmc: rates must be finite and nonnegative");
  }
  for (int a : absorbing) {
    if (a < 0 || size_t(a) >= n) throw std::invalid_argument("ctmc: bad absorbing id");
    for (double r : rates[size_t(a)])
      if (r != 0) throw std::invalid_argument("ctmc: absorbing rows must be zero");
  }
  double total = 0;
  for (double p : initial) {
    if (p < 0) throw std::invalid_argument("ctmc: negative initial probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("ctmc: initial vector must sum to 1");
}

std::string CTMCModel::to_json() const {
  json j;
  j["states"] = states;
  j["rates"] = rates;
  j["absorbing"] = absorbing;
  j["initial"] = initial;
  return j.dump();
}

CTMCModel CTMCModel::from_json(const std::string& text) {
  json j = json::parse(text);
  CTMCModel m;
  m.states = j.at("states").get<std::vector<std::string>>();
  m.rates = j.at("rates").get<std::vector<std::vector<double>>>();
  m.absorbing = j.at("absorbing").get<std::vector<int>>();
  m.initial = j.at("initial").get<std::vector<double>>();
  // Imported generators may carry diagonal entries; only the off-diagonal
  // rates are meaningful here.
  for (size_t i = 0; i < m.rates.size(); ++i)
    if (i < m.rates[i].size()) m.rates[i][i] = 0.0;
  m.validate();
  return m;
}

MttaResult ctmc_mtta(const CTMCModel& model) {
  model.validate();
  const size_t n = model.size();
  std::set<int> absorbing(model.absorbing.begin(), model.absorbing.end());
  std::vector<size_t> transient;
  for (size_t i = 0; i < n; ++i)
    if (!absorbing.count(int(i))) transient.push_back(i);
  const size_t m = transient.size();
  if (m == 0) throw std::invalid_argument("ctmc_mtta: no transient states");

  // Equations over columns j in T:  sum_i tau_i * (-Q)[i][j] = pi0[j].
  // Build A^T x = b with A[j][i] = -Q[i][j] restricted to T.
  std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
  std::vector<double> b(m, 0.0);
  auto qentry = [&](size_t i, size_t j) -> double {
    if (i == j) {
      double out = 0;
      for (double r : model.rates[i]) out += r;
      return -out;
    }
    return model.rates[i][j];
  };
  for (size_t cj = 0; cj < m; ++cj) {
    b[cj] = model.initial[transient[cj]];
    for (size_t ri = 0; ri < m; ++ri)
      a[cj][ri] = -qentry(transient[ri], transient[cj]);
  }

  // Gaussian elimination with partial pivoting.
  std::vector<double> tau(m, 0.0);
  {
    for (size_t col = 0; col < m; ++col) {
      size_t piv = col;
      for (size_t r = col + 1; r < m; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) < 1e-300)
        throw SingularSystemError("ctmc_mtta: absorption unreachable from some state");
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
      for (size_t r = col + 1; r < m; ++r) {
        double f = a[r][col] / a[col][col];
        if (f == 0) continue;
        for (size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
        b[r] -= f * b[col];
      }
    }
    for (size_t col = m; col-- > 0;) {
      double v = b[col];
      for (size_t c = col + 1; c < m; ++c) v -= a[col][c] * tau[c];
      tau[col] = v / a[col][col];
    }
  }

  MttaResult res;
  res.state_time = tau;
  for (double t : tau) {
    if (!std::isfinite(t) || t < -1e-9)
      throw SingularSystemError("ctmc_mtta: negative or non-finite sojourn time");
    res.hours += t;
  }
  for (int aidx : model.absorbing) {
    double p = 0;
    for (size_t i = 0; i < m; ++i) p += tau[i] * model.rates[transient[i]][size_t(aidx)];
    res.absorb_prob.push_back(p);
  }
  return res;
}

std::vector<double> ctmc_transient(const CTMCModel& model, double t, double tol) {
  model.validate();
  if (tol <= 0) throw std::invalid_argument("ctmc_transient: tol must be positive");
  if (t < 0) throw std::invalid_argument("ctmc_transient: negative time");
  const size_t n = model.size();
  std::vector<double> diag(n, 0.0);
  double q = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (double r : model.rates[i]) diag[i] += r;
    q = std::max(q, diag[i]);
  }
  if (q == 0.0 || t == 0.0) return model.initial;

  // P* = Q/q + I
  std::vector<std::vector<double>> pstar(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) pstar[i][j] = model.rates[i][j] / q;
    pstar[i][i] = 1.0 - diag[i] / q;
  }

  const double qt = q * t;
  std::vector<double> theta = model.initial;
  std::vector<double> result(n, 0.0);
  double log_qt = std::log(qt);
  double cumulative = 0.0;
  for (size_t k = 0;; ++k) {
    double logw = -qt + double(k) * log_qt - std::lgamma(double(k) + 1.0);
    double w = std::exp(logw);
    cumulative += w;
    for (size_t i = 0; i < n; ++i) result[i] += w * theta[i];
    if (cumulative >= 1.0 - tol && double(k) >= qt) break;
    if (k > 100000000) throw std::runtime_error("ctmc_transient: truncation overflow");
    // theta <- theta * P*
    std::vector<double> next(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      double v = theta[i];
      if (v == 0.0) continue;
      for (size_t j = 0; j < n; ++j) next[j] += v * pstar[i][j];
    }
    theta.swap(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Named chains

namespace {

CTMCModel empty_chain(size_t n) {
  CTMCModel m;
  m.states.resize(n);
  m.rates.assign(n, std::vector<double>(n, 0.0));
  m.initial.assign(n, 0.0);
  return m;
}

}  // namespace

CTMCModel raid5_chain(int n_data, double delta, double mu) {
  if (n_data < 1 || delta <= 0) throw std::invalid_argument("raid5_chain: bad shape");
  CTMCModel m = empty_chain(3);
  m.states = {"S0", "S1", "DL"};
  m.rates[0][1] = (n_data + 1) * delta;
  m.rates[1][0] = mu;
  m.rates[1][2] = n_data * delta;
  m.absorbing = {2};
  m.initial = {1.0, 0.0, 0.0};
  return m;
}

CTMCModel kofn_chain_fixed_repair(int n, int f, double delta, double mu) {
  if (f < 0 || f >= n) throw std::invalid_argument("kofn chain: bad tolerance");
  CTMCModel m = empty_chain(size_t(f) + 2);
  for (int i = 0; i <= f + 1; ++i)
    m.states[size_t(i)] = i <= f ? "F" + std::to_string(i) : "DL";
  for (int i = 0; i <= f; ++i) {
    m.rates[size_t(i)][size_t(i) + 1] = (n - i) * delta;
    if (i > 0) m.rates[size_t(i)][size_t(i) - 1] = mu;
  }
  m.absorbing = {f + 1};
  m.initial.assign(size_t(f) + 2, 0.0);
  m.initial[0] = 1.0;
  return m;
}

CTMCModel kofn_chain_proportional_repair(int n, int f, double delta, double mu) {
  CTMCModel m = kofn_chain_fixed_repair(n, f, delta, mu);
  for (int i = 1; i <= f; ++i) m.rates[size_t(i)][size_t(i) - 1] = i * mu;
  return m;
}

CTMCModel lse_raid5_chain(int n, double delta, double mu, double puf) {
  CTMCModel m = empty_chain(4);
  m.states = {"S0", "S1", "DF", "UF"};
  m.rates[0][1] = n * delta;
  m.rates[1][0] = mu * (1.0 - puf);
  m.rates[1][2] = (n - 1) * delta;
  m.rates[1][3] = mu * puf;
  m.absorbing = {2, 3};
  m.initial = {1.0, 0.0, 0.0, 0.0};
  return m;
}

CTMCModel lse_raid6_chain(int n, double delta, double mu1, double mu2,
                          double puf_r, double puf_2) {
  CTMCModel m = empty_chain(5);
  m.states = {"S0", "S1", "S2", "DF", "UF"};
  m.rates[0][1] = n * delta;
  m.rates[1][2] = (n - 1) * delta;
  m.rates[1][0] = mu1 * (1.0 - puf_r);
  m.rates[1][4] = mu1 * puf_r;
  m.rates[2][3] = (n - 2) * delta;
  m.rates[2][4] = mu2 * puf_2;
  m.rates[2][0] = mu2 * (1.0 - puf_2);
  m.absorbing = {3, 4};
  m.initial = {1.0, 0.0, 0.0, 0.0, 0.0};
  return m;
}

CTMCModel lrc_chain(int n, double delta, double p_d, double rho_single,
                    double rho_multi) {
  // States by surviving fragments: n, n-1, n-2, n-3, n-4, and data loss.
  CTMCModel m = empty_chain(6);
  for (int i = 0; i < 5; ++i) m.states[size_t(i)] = "S" + std::to_string(n - i);
  m.states[5] = "DL";
  m.rates[0][1] = n * delta;
  m.rates[1][2] = (n - 1) * delta;
  m.rates[1][0] = rho_single;
  m.rates[2][3] = (n - 2) * delta;
  m.rates[2][1] = rho_multi;
  // the fourth failure is information-theoretically decodable w.p. p_d
  m.rates[3][4] = (n - 3) * delta * p_d;
  m.rates[3][5] = (n - 3) * delta * (1.0 - p_d);
  m.rates[3][2] = rho_multi;
  m.rates[4][5] = (n - 4) * delta;
  m.rates[4][3] = rho_multi;
  m.absorbing = {5};
  m.initial = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  return m;
}

double birth_death_mtta(const std::vector<double>& up,
                        const std::vector<double>& down) {
  if (up.empty() || down.size() != up.size())
    throw std::invalid_argument("birth_death_mtta: shape mismatch");
  // h_i = expected time from state i to i+1:  h_i = (1 + mu_i h_{i-1}) / lambda_i
  double total = 0.0, prev = 0.0;
  for (size_t i = 0; i < up.size(); ++i) {
    if (up[i] <= 0) throw std::invalid_argument("birth_death_mtta: stuck state");
    double h = (1.0 + down[i] * prev) / up[i];
    total += h;
    prev = h;
  }
  return total;
}

}  // namespace raidlab
