#include "raidlab.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "core/clustered.hpp"
#include "core/codes.hpp"
#include "core/copysets.hpp"
#include "core/ctmc.hpp"
#include "core/fieldmatrix.hpp"
#include "core/diskmodel.hpp"
#include "core/forkjoin.hpp"
#include "core/mirrors.hpp"
#include "core/perfmisc.hpp"
#include "core/quadrature.hpp"
#include "core/queueing.hpp"
#include "core/rebuild.hpp"
#include "core/reliability.hpp"
#include "core/sim.hpp"

using nlohmann::json;
namespace rl = raidlab;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
rl_status wrap(Fn&& fn) {
  try {
    fn();
    return RL_OK;
  } catch (const rl::UnrecoverableError& e) {
    g_last_error = e.what();
    return RL_EUNRECOVERABLE;
  } catch (const rl::SingularMatrixError& e) {
    g_last_error = e.what();
    return RL_ESINGULAR;
  } catch (const rl::SingularSystemError& e) {
    g_last_error = e.what();
    return RL_ESINGULAR;
  } catch (const rl::InstabilityError& e) {
    g_last_error = e.what();
    return RL_EUNSTABLE;
  } catch (const rl::SearchExhaustedError& e) {
    g_last_error = e.what();
    return RL_ESEARCH;
  } catch (const std::length_error& e) {
    g_last_error = e.what();
    return RL_ELIMIT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return RL_EUNSTABLE;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return RL_EINVAL;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return RL_EINVAL;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return RL_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RL_ERUNTIME;
  }
}

rl::ErasurePattern parse_erasure(const std::string& text) {
  rl::ErasurePattern e;
  if (text.empty()) return e;
  json j = json::parse(text);
  if (j.contains("columns"))
    for (const auto& c : j["columns"]) e.columns.insert(c.get<int>());
  if (j.contains("cells"))
    for (const auto& cell : j["cells"])
      e.cells.insert({cell.at(0).get<int>(), cell.at(1).get<int>()});
  return e;
}

json fraction_json(const rl::Fraction& f) {
  return {{"num", f.num}, {"den", f.den}, {"value", f.value()}};
}

rl::LSEParams parse_lse(const char* text) {
  rl::LSEParams p;
  if (!text || !*text) return p;
  json j = json::parse(text);
  if (j.is_null() || j.empty()) return p;
  p.p_bit = j.value("p_bit", p.p_bit);
  p.sector_bytes = j.value("sector_bytes", p.sector_bytes);
  p.segment_len = j.value("segment_len", p.segment_len);
  p.interleaves = j.value("interleaves", p.interleaves);
  if (j.contains("burst_pmf"))
    p.burst_pmf = j["burst_pmf"].get<std::vector<double>>();
  return p;
}

rl::Dist parse_dist(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "det") return rl::Dist::deterministic(j.at("value").get<double>());
  if (kind == "exp") return rl::Dist::exponential(j.at("mean").get<double>());
  if (kind == "erlang")
    return rl::Dist::erlang(j.at("stages").get<int>(), j.at("mean").get<double>());
  if (kind == "conv") {
    const auto& parts = j.at("parts");
    if (parts.empty()) throw std::invalid_argument("conv: empty parts");
    rl::Dist acc = parse_dist(parts.at(0));
    for (size_t i = 1; i < parts.size(); ++i)
      acc = rl::Dist::convolution(acc, parse_dist(parts.at(i)));
    return acc;
  }
  throw std::invalid_argument("unknown distribution kind: " + kind);
}

json poly_to_json(const rl::ReliabilityPolynomial& poly) {
  return {{"n", poly.n}, {"coeffs", poly.coeffs}};
}

rl::ReliabilityPolynomial poly_from_json(const char* text) {
  json j = json::parse(text);
  rl::ReliabilityPolynomial poly;
  poly.n = j.at("n").get<int>();
  poly.coeffs = j.at("coeffs").get<std::vector<long long>>();
  return poly;
}

// Loss predicate over failed-disk sets, selected by a system spec.
struct SystemPredicate {
  int n = 0;
  std::function<bool(const std::vector<int>&)> survives;
};

SystemPredicate parse_system(const json& j) {
  SystemPredicate out;
  std::string system = j.at("system").get<std::string>();
  if (system == "bm" || system == "id" || system == "grd" || system == "cd") {
    out.n = j.at("n").get<int>();
    auto map = rl::mirror_map(rl::mirror_org_from_string(system), out.n,
                              j.value("c", 0));
    out.survives = [map](const std::vector<int>& failed) {
      return map.survives(failed);
    };
    return out;
  }
  if (system == "lsi" || system == "sspiral") {
    rl::StripeLayout layout = system == "lsi"
                                  ? rl::lsi_layout(j.value("n", 8))
                                  : rl::sspiral_layout();
    out.n = layout.cols();
    out.survives = [layout](const std::vector<int>& failed) {
      rl::ErasurePattern e;
      for (int d : failed) e.cells.insert({0, d});
      return rl::xor_recoverable(layout, e);
    };
    return out;
  }
  int k = 0;
  if (system == "raid5") k = 1;
  else if (system == "raid6") k = 2;
  else if (system == "raid7") k = 3;
  else if (system == "kofn") k = j.at("k").get<int>();
  else throw std::invalid_argument("unknown system: " + system);
  out.n = j.at("n").get<int>();
  out.survives = [k](const std::vector<int>& failed) {
    return int(failed.size()) <= k;
  };
  return out;
}

}  // namespace

struct rl_layout {
  rl::StripeLayout impl;
};
struct rl_clustered {
  rl::ClusteredLayout impl;
};
struct rl_ctmc {
  rl::CTMCModel impl;
};
struct rl_copysets {
  rl::CopysetPlan impl;
};

extern "C" {

const char* rl_version(void) { return "raidlab 1.0.0"; }

const char* rl_last_error(void) { return g_last_error.c_str(); }

void rl_string_free(char* s) { ::free(s); }

/* ------------------------------------------------------------------ */
/* Layouts                                                              */

rl_status rl_layout_build(const char* spec_json, rl_layout** out) {
  return wrap([&] {
    json j = json::parse(spec_json);
    std::string family = j.at("family").get<std::string>();
    rl::StripeLayout layout;
    if (family == "raid5")
      layout = rl::layout_raid5(j.at("n").get<int>(), j.value("stripes", 1));
    else if (family == "rdp")
      layout = rl::rdp_layout(j.at("p").get<int>());
    else if (family == "xcode")
      layout = rl::xcode_layout(j.at("n").get<int>());
    else if (family == "hvpc")
      layout = rl::hvpc_layout(j.at("k1").get<int>(), j.at("k2").get<int>());
    else if (family == "lrc")
      layout = rl::lrc_build(j.at("k").get<int>(), j.at("groups").get<int>(),
                             j.value("globals", 2))
                   .layout;
    else if (family == "azure-lrc")
      layout = rl::azure_lrc_layout(j.at("n").get<int>(), j.at("k").get<int>(),
                                    j.at("r").get<int>())
                   .layout;
    else if (family == "sd")
      layout = rl::sd_code_build(j.at("rows").get<int>(), j.at("cols").get<int>(),
                                 j.at("s").get<int>());
    else if (family == "lsi")
      layout = rl::lsi_layout(j.value("n", 8));
    else if (family == "sspiral")
      layout = rl::sspiral_layout();
    else
      throw std::invalid_argument("unknown code family: " + family);
    *out = new rl_layout{std::move(layout)};
  });
}

rl_status rl_layout_from_json(const char* layout_json, rl_layout** out) {
  return wrap([&] { *out = new rl_layout{rl::StripeLayout::from_json(layout_json)}; });
}

rl_status rl_layout_to_json(const rl_layout* layout, char** json_out) {
  return wrap([&] { *json_out = dup_string(layout->impl.to_json()); });
}

void rl_layout_free(rl_layout* layout) { delete layout; }

rl_status rl_layout_recoverable(const rl_layout* layout, const char* erased_json,
                                int* recoverable_out) {
  return wrap([&] {
    *recoverable_out =
        layout->impl.recoverable(parse_erasure(erased_json ? erased_json : ""));
  });
}

rl_status rl_layout_selftest(const rl_layout* layout, const char* erased_json,
                             size_t block_len, uint64_t seed, char** report_json) {
  return wrap([&] {
    const rl::StripeLayout& l = layout->impl;
    auto erased = parse_erasure(erased_json ? erased_json : "");
    auto grid = rl::random_grid(l.rows(), l.cols(), block_len ? block_len : 16, seed);
    // zero the parity cells, then encode in group order
    for (int r = 0; r < l.rows(); ++r)
      for (int c = 0; c < l.cols(); ++c)
        if (rl::is_parity(l.role(r, c).kind))
          grid[l.idx(r, c)].assign(block_len ? block_len : 16, 0);
    size_t ops = l.encode(grid);
    auto res = l.decode(grid, erased);
    bool recovered = res.stuck.empty() && res.grid == grid;
    json rep;
    rep["recovered"] = recovered;
    rep["xor_ops"] = ops;
    json stuck = json::array();
    for (const auto& cell : res.stuck) stuck.push_back({cell.row, cell.col});
    rep["stuck"] = std::move(stuck);
    rep["parity_consistent"] = l.parity_consistent(grid);
    *report_json = dup_string(rep.dump());
  });
}

rl_status rl_layout_repair_metrics(const rl_layout* layout, char** report_json) {
  return wrap([&] {
    auto rep = rl::repair_metrics(layout->impl);
    json j;
    j["arc"] = fraction_json(rep.arc);
    j["nrc"] = fraction_json(rep.nrc);
    j["drc"] = fraction_json(rep.drc);
    j["adrc"] = fraction_json(rep.adrc);
    if (rep.arc2) j["arc2"] = fraction_json(*rep.arc2);
    j["n"] = rep.n_blocks;
    j["k"] = rep.k_data;
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_layout_pmds_check(const rl_layout* layout, int m, int s,
                               char** report_json) {
  return wrap([&] {
    auto rep = rl::pmds_sd_check(layout->impl, m, s);
    json j;
    j["class"] = rep.cls == rl::PmdsClass::PMDS
                     ? "pmds"
                     : (rep.cls == rl::PmdsClass::SDOnly ? "sd-only" : "neither");
    j["sd"] = rep.sd;
    j["pmds"] = rep.pmds;
    j["sd_patterns"] = rep.sd_patterns;
    j["pmds_patterns"] = rep.pmds_patterns;
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_xcode_rebuild_plan(const rl_layout* layout, int failed_col,
                                char** report_json) {
  return wrap([&] {
    auto plan = rl::xcode_single_rebuild_plan(layout->impl, failed_col);
    json j;
    j["cost"] = plan.cost;
    j["naive_all_p_cost"] = plan.naive_all_p_cost;
    j["choices"] = std::string(plan.choices.begin(), plan.choices.end());
    json reads = json::array();
    for (const auto& cell : plan.reads) reads.push_back({cell.row, cell.col});
    j["reads"] = std::move(reads);
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_layout_decodable_fraction(const rl_layout* layout, int failures,
                                       char** report_json) {
  return wrap([&] {
    auto count = rl::count_decodable_patterns(layout->impl, failures);
    json j;
    j["decodable"] = count.decodable;
    j["total"] = count.total;
    j["fraction"] = double(count.decodable) / double(count.total);
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_xorbas_check(size_t block_len, uint64_t seed, char** report_json) {
  return wrap([&] {
    rl::XorbasCode code = rl::xorbas_build();
    auto data = rl::random_grid(1, 10, block_len ? block_len : 32, seed);
    rl::Block residual = rl::xorbas_residual(code, data);
    json j;
    j["residual_zero"] = rl::is_zero(residual);
    j["data_coeffs"] = code.data_coeffs;
    j["parity_coeffs"] = code.parity_coeffs;
    j["overhead_without_implied"] = code.overhead_without_implied;
    j["overhead_with_implied"] = code.overhead_with_implied;
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_hamming_locate(const int* syndrome, size_t count, int* position_out) {
  return wrap([&] {
    std::set<int> s(syndrome, syndrome + count);
    auto pos = rl::hamming_locate(s);
    *position_out = pos ? *pos : -1;
  });
}

/* ------------------------------------------------------------------ */
/* Clustered layouts                                                    */

rl_status rl_clustered_build(const char* spec_json, rl_clustered** out) {
  return wrap([&] {
    json j = json::parse(spec_json);
    std::string kind = j.at("kind").get<std::string>();
    rl::ClusteredLayout layout;
    if (kind == "nrp")
      layout = rl::nrp_layout(j.at("n").get<int>(), j.at("g").get<int>(),
                              j.value("seed", uint64_t(1)), j.value("row_groups", 4));
    else if (kind == "shifted")
      layout = rl::shifted_layout(j.at("n").get<int>(), j.at("g").get<int>(),
                                  j.value("cycles", 1));
    else if (kind == "bibd")
      layout = rl::bibd_layout(rl::bibd_builtin_10_4());
    else if (kind == "bibd-complete")
      layout = rl::bibd_layout(
          rl::bibd_complete(j.at("n").get<int>(), j.at("g").get<int>()));
    else if (kind == "raid5")
      layout = rl::raid5_clustered(j.at("n").get<int>(), j.value("rows", 1));
    else if (kind == "raid4")
      layout = rl::raid4_clustered(j.at("n").get<int>(), j.value("rows", 1));
    else
      throw std::invalid_argument("unknown clustered layout kind: " + kind);
    *out = new rl_clustered{std::move(layout)};
  });
}

rl_status rl_clustered_from_json(const char* text, rl_clustered** out) {
  return wrap([&] { *out = new rl_clustered{rl::ClusteredLayout::from_json(text)}; });
}

rl_status rl_clustered_to_json(const rl_clustered* layout, char** json_out) {
  return wrap([&] { *json_out = dup_string(layout->impl.to_json()); });
}

void rl_clustered_free(rl_clustered* layout) { delete layout; }

rl_status rl_clustered_properties(const rl_clustered* layout, char** report_json) {
  return wrap([&] {
    auto props = rl::layout_properties(layout->impl);
    json j;
    j["single_failure_ok"] = props.single_failure_ok;
    j["parity_balanced"] = props.parity_balanced;
    j["parity_spread"] = props.parity_spread;
    j["parity_counts"] = props.parity_counts;
    j["rebuild_balanced"] = props.rebuild_balanced;
    j["rebuild_max_min_ratio"] = props.rebuild_max_min_ratio;
    j["large_write_contiguous"] = props.large_write_contiguous;
    j["max_read_parallelism"] = props.max_read_parallelism;
    j["mapping_note"] = props.mapping_note;
    j["alpha"] = layout->impl.alpha();
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_clustered_to_stripe_json(const rl_clustered* layout, char** json_out) {
  return wrap([&] {
    *json_out = dup_string(rl::to_stripe_layout(layout->impl).to_json());
  });
}

rl_status rl_bibd_check(const char* design_json, char** report_json) {
  return wrap([&] {
    json j = json::parse(design_json);
    rl::BIBDDesign design;
    if (j.contains("builtin")) {
      design = rl::bibd_builtin_10_4();
    } else if (j.contains("complete")) {
      design = rl::bibd_complete(j["complete"].at("n").get<int>(),
                                 j["complete"].at("k").get<int>());
    } else {
      design.n = j.at("n").get<int>();
      design.k = j.at("k").get<int>();
      design.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
      design.b = j.value("b", int(design.blocks.size()));
      design.r = j.value("r", design.b * design.k / design.n);
      design.lambda =
          j.value("lambda", design.n > 1 ? design.r * (design.k - 1) / (design.n - 1) : 0);
    }
    auto rep = rl::bibd_check(design);
    json out;
    out["valid"] = rep.valid;
    out["violations"] = rep.violations;
    out["n"] = design.n;
    out["k"] = design.k;
    out["b"] = design.b;
    out["r"] = design.r;
    out["lambda"] = design.lambda;
    *report_json = dup_string(out.dump());
  });
}

/* ------------------------------------------------------------------ */
/* Copysets                                                             */

namespace {

rl::CopysetPlan build_plan(const json& j) {
  std::string scheme = j.at("scheme").get<std::string>();
  if (scheme == "permutation")
    return rl::copysets_permutation(j.at("n").get<int>(), j.at("r").get<int>(),
                                    j.at("p").get<int>(), j.value("seed", uint64_t(1)));
  if (scheme == "random")
    return rl::copysets_random_replication(j.at("n").get<int>(), j.at("r").get<int>(),
                                           j.at("s").get<int>());
  throw std::invalid_argument("unknown copyset scheme: " + scheme);
}

}  // namespace

rl_status rl_copysets_build(const char* spec_json, rl_copysets** out) {
  return wrap([&] { *out = new rl_copysets{build_plan(json::parse(spec_json))}; });
}

rl_status rl_copysets_from_csv(const char* csv, int n, int r, rl_copysets** out) {
  return wrap([&] { *out = new rl_copysets{rl::CopysetPlan::from_csv(csv, n, r)}; });
}

rl_status rl_copysets_to_csv(const rl_copysets* plan, char** csv_out) {
  return wrap([&] { *csv_out = dup_string(plan->impl.to_csv()); });
}

rl_status rl_copysets_info(const rl_copysets* plan, char** json_out) {
  return wrap([&] {
    json j;
    j["n_nodes"] = plan->impl.n_nodes;
    j["replication"] = plan->impl.replication;
    j["scatter_width"] = plan->impl.scatter_width;
    j["copysets"] = plan->impl.copysets.size();
    *json_out = dup_string(j.dump());
  });
}

rl_status rl_copysets_pdl_exact(const rl_copysets* plan, int failed,
                                char** json_out) {
  return wrap([&] {
    auto pdl = rl::copyset_pdl_exact(plan->impl, failed);
    *json_out = dup_string(fraction_json(pdl).dump());
  });
}

void rl_copysets_free(rl_copysets* plan) { delete plan; }

rl_status rl_mirror_map(const char* org, int n, int clusters, char** json_out) {
  return wrap([&] {
    auto map = rl::mirror_map(rl::mirror_org_from_string(org), n, clusters);
    json j;
    j["org"] = rl::mirror_org_to_string(map.org);
    j["n"] = map.n_disks;
    j["clusters"] = map.clusters;
    json placement = json::array();
    for (const auto& rep : map.placement)
      placement.push_back(
          {{"primary", rep.primary}, {"replica", rep.replica}, {"fraction", rep.fraction}});
    j["placement"] = std::move(placement);
    json loads = json::array();
    for (int failed = 0; failed < map.n_disks; ++failed)
      loads.push_back(map.surviving_load(failed));
    j["surviving_load"] = std::move(loads);
    *json_out = dup_string(j.dump());
  });
}

/* ------------------------------------------------------------------ */
/* CTMC                                                                 */

rl_status rl_ctmc_build(const char* spec_json, rl_ctmc** out) {
  return wrap([&] {
    json j = json::parse(spec_json);
    std::string chain = j.at("chain").get<std::string>();
    rl::CTMCModel model;
    if (chain == "raid5")
      model = rl::raid5_chain(j.at("n").get<int>(), j.at("delta").get<double>(),
                              j.at("mu").get<double>());
    else if (chain == "kofn-fixed")
      model = rl::kofn_chain_fixed_repair(j.at("n").get<int>(), j.at("f").get<int>(),
                                          j.at("delta").get<double>(),
                                          j.at("mu").get<double>());
    else if (chain == "kofn-prop")
      model = rl::kofn_chain_proportional_repair(
          j.at("n").get<int>(), j.at("f").get<int>(), j.at("delta").get<double>(),
          j.at("mu").get<double>());
    else if (chain == "lse-raid5")
      model = rl::lse_raid5_chain(j.at("n").get<int>(), j.at("delta").get<double>(),
                                  j.at("mu").get<double>(), j.at("puf").get<double>());
    else if (chain == "lse-raid6")
      model = rl::lse_raid6_chain(j.at("n").get<int>(), j.at("delta").get<double>(),
                                  j.at("mu1").get<double>(), j.at("mu2").get<double>(),
                                  j.at("puf_r").get<double>(),
                                  j.at("puf_2").get<double>());
    else if (chain == "lrc")
      model = rl::lrc_chain(j.at("n").get<int>(), j.at("delta").get<double>(),
                            j.at("p_d").get<double>(),
                            j.at("rho_single").get<double>(),
                            j.at("rho_multi").get<double>());
    else
      throw std::invalid_argument("unknown chain: " + chain);
    *out = new rl_ctmc{std::move(model)};
  });
}

rl_status rl_ctmc_from_json(const char* text, rl_ctmc** out) {
  return wrap([&] { *out = new rl_ctmc{rl::CTMCModel::from_json(text)}; });
}

rl_status rl_ctmc_to_json(const rl_ctmc* model, char** json_out) {
  return wrap([&] { *json_out = dup_string(model->impl.to_json()); });
}

void rl_ctmc_free(rl_ctmc* model) { delete model; }

rl_status rl_ctmc_mtta(const rl_ctmc* model, char** report_json) {
  return wrap([&] {
    auto res = rl::ctmc_mtta(model->impl);
    json j;
    j["hours"] = res.hours;
    json absorb = json::object();
    for (size_t i = 0; i < model->impl.absorbing.size(); ++i)
      absorb[model->impl.states[size_t(model->impl.absorbing[i])]] =
          res.absorb_prob[i];
    j["absorb_prob"] = std::move(absorb);
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_ctmc_transient(const rl_ctmc* model, double t_hours, double tol,
                            char** probs_json) {
  return wrap([&] {
    auto probs = rl::ctmc_transient(model->impl, t_hours, tol);
    json j;
    j["t"] = t_hours;
    j["probs"] = probs;
    *probs_json = dup_string(j.dump());
  });
}

/* ------------------------------------------------------------------ */
/* Closed-form reliability                                              */

rl_status rl_afr_from_mttf(double mttf_hours, double* exact, double* approx) {
  return wrap([&] {
    auto res = rl::afr_from_mttf(mttf_hours);
    *exact = res.exact;
    *approx = res.approx;
  });
}

rl_status rl_kofn_no_repair(int n, int k, double r, double* out) {
  return wrap([&] { *out = rl::kofn_no_repair(n, k, r); });
}

rl_status rl_raid5_transient(int n_data, double mttf, double mttr, double t,
                             double* out) {
  return wrap([&] {
    rl::DriveParams d;
    d.mttf_hours = mttf;
    d.mttr_hours = mttr;
    *out = rl::raid5_transient(n_data, d, t);
  });
}

rl_status rl_mttdl_closed_form(const char* method, int n, int g, int k,
                               double mttf, double mttr, double* out) {
  return wrap([&] {
    rl::DriveParams d;
    d.mttf_hours = mttf;
    d.mttr_hours = mttr;
    std::string m = method;
    rl::MttdlMethod mm = m == "raid5"   ? rl::MttdlMethod::Raid5
                         : m == "chen"  ? rl::MttdlMethod::Chen
                         : m == "angus" ? rl::MttdlMethod::Angus
                                        : throw std::invalid_argument(
                                              "unknown mttdl method: " + m);
    *out = rl::mttdl_closed_form(mm, n, g, k, d);
  });
}

rl_status rl_pseg(const char* scheme, const char* model, const char* lse_json,
                  double* out) {
  return wrap([&] {
    *out = rl::pseg(rl::idr_scheme_from_string(scheme),
                    rl::error_model_from_string(model), parse_lse(lse_json));
  });
}

rl_status rl_puf(int n, int k_failed, double p_seg, const char* lse_json,
                 double capacity_bytes, double* out) {
  return wrap([&] {
    rl::DriveParams d;
    rl::LSEParams p = parse_lse(lse_json);
    d.capacity_bytes = capacity_bytes;
    d.sector_bytes = p.sector_bytes;
    *out = rl::puf(n, k_failed, p_seg, p, d);
  });
}

rl_status rl_puf_raid6_degraded(int n, double p_seg, const char* lse_json,
                                double capacity_bytes, double* out) {
  return wrap([&] {
    rl::DriveParams d;
    rl::LSEParams p = parse_lse(lse_json);
    d.capacity_bytes = capacity_bytes;
    d.sector_bytes = p.sector_bytes;
    *out = rl::puf_raid6_degraded(n, p_seg, p, d);
  });
}

rl_status rl_mttdl_lse_raid5(int n, double mttf, double mttr, double puf,
                             double* out) {
  return wrap([&] {
    rl::DriveParams d;
    d.mttf_hours = mttf;
    d.mttr_hours = mttr;
    *out = rl::mttdl_lse_raid5(n, d, puf);
  });
}

rl_status rl_mttdl_lse_raid6(int n, double delta, double mu1, double mu2,
                             double puf_r, double puf_2, double* out) {
  return wrap([&] { *out = rl::mttdl_lse_raid6(n, delta, mu1, mu2, puf_r, puf_2); });
}

rl_status rl_scrub_error_prob(double p_e, double h_per_hour, double ts_hours,
                              double* deterministic, double* exponential) {
  return wrap([&] {
    auto res = rl::scrub_error_prob(p_e, h_per_hour, ts_hours);
    *deterministic = res.deterministic;
    *exponential = res.exponential;
  });
}

rl_status rl_scrub_min_period(const char* params_json, double* hours_out) {
  return wrap([&] {
    json j = params_json && *params_json ? json::parse(params_json) : json::object();
    rl::ScrubPeriodParams p;
    p.chunk_kb = j.value("chunk_kb", p.chunk_kb);
    p.disk_kb = j.value("disk_kb", p.disk_kb);
    p.scrub_kb = j.value("scrub_kb", p.scrub_kb);
    p.write_fraction = j.value("write_fraction", p.write_fraction);
    p.sigma_per_hour = j.value("sigma_per_hour", p.sigma_per_hour);
    p.parities = j.value("parities", p.parities);
    p.io_time_hours = j.value("io_time_hours", p.io_time_hours);
    *hours_out = rl::scrub_min_period(p);
  });
}

rl_status rl_ioe(double kb, double* out) {
  return wrap([&] { *out = rl::ioe(kb); });
}

rl_status rl_mirror_poly(const char* org, int n, int clusters, char** poly_json) {
  return wrap([&] {
    auto poly = rl::mirror_poly(rl::mirror_org_from_string(org), n, clusters);
    *poly_json = dup_string(poly_to_json(poly).dump());
  });
}

rl_status rl_enumerate_poly(const char* system_json, char** poly_json) {
  return wrap([&] {
    auto pred = parse_system(json::parse(system_json));
    auto poly = rl::enumerate_poly(pred.survives, pred.n);
    *poly_json = dup_string(poly_to_json(poly).dump());
  });
}

rl_status rl_poly_eval(const char* poly_json, double r, double* out) {
  return wrap([&] { *out = poly_from_json(poly_json).eval(r); });
}

rl_status rl_shortcut_from_poly(const char* poly_json, char** term_json) {
  return wrap([&] {
    auto term = rl::shortcut_term(poly_from_json(poly_json));
    json j = {{"coeff", fraction_json(term.coeff)}, {"power", term.power}};
    *term_json = dup_string(j.dump());
  });
}

rl_status rl_shortcut_named(const char* system, int n, int c, char** term_json) {
  return wrap([&] {
    auto term = rl::shortcut_named(system, n, c);
    json j = {{"coeff", fraction_json(term.coeff)}, {"power", term.power}};
    *term_json = dup_string(j.dump());
  });
}

rl_status rl_poly_norepair_mttdl(const char* poly_json, char** fraction_json_out) {
  return wrap([&] {
    auto frac = rl::poly_norepair_mttdl(poly_from_json(poly_json));
    *fraction_json_out = dup_string(fraction_json(frac).dump());
  });
}

rl_status rl_multilevel_mttdl(const char* kind, int n_or_d, double mttf,
                              double mttr, char** report_json) {
  return wrap([&] {
    rl::DriveParams d;
    d.mttf_hours = mttf;
    d.mttr_hours = mttr;
    std::string k = kind;
    auto res = rl::multilevel_mttdl(k == "raid15" ? rl::MultilevelKind::Raid15Approx
                                    : k == "raid51"
                                        ? rl::MultilevelKind::Raid51Path
                                        : throw std::invalid_argument(
                                              "unknown multilevel kind: " + k),
                                    n_or_d, d);
    json j;
    j["mttdl_hours"] = res.mttdl_hours;
    if (k == "raid51") {
      j["p_upper"] = res.p_upper;
      j["p_lower"] = res.p_lower;
      j["p_dl"] = res.p_dl;
    }
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_raid15_reliability(int n, double r, double* out) {
  return wrap([&] { *out = rl::raid15_reliability(n, r); });
}

rl_status rl_raid51_reliability(int n_pairs, double r, double* out) {
  return wrap([&] { *out = rl::raid51_reliability(n_pairs, r); });
}

rl_status rl_placement_metrics(const char* scheme, int n, double c, int r,
                               double b, double delta, char** report_json) {
  return wrap([&] {
    std::string s = scheme;
    auto res = rl::placement_metrics(
        s == "clustered"     ? rl::Placement::Clustered
        : s == "declustered" ? rl::Placement::Declustered
                             : throw std::invalid_argument("unknown placement: " + s),
        n, c, r, b, delta);
    json j;
    j["mttdl_hours"] = res.mttdl_hours;
    j["eafdl_per_hour"] = res.eafdl_per_hour;
    j["eafdl_per_year"] = res.eafdl_per_hour * rl::kHoursPerYear;
    j["user_data"] = res.user_data;
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_hda_compare(double epsilon, double* r_c1, double* r_c2) {
  return wrap([&] {
    auto res = rl::hda_compare(epsilon);
    *r_c1 = res.r_c1;
    *r_c2 = res.r_c2;
  });
}

rl_status rl_diffraid_aging(const double* parity_pct, int n, char** matrix_json) {
  return wrap([&] {
    std::vector<double> pct(parity_pct, parity_pct + n);
    auto m = rl::diffraid_aging(pct, n);
    *matrix_json = dup_string(json(m).dump());
  });
}

rl_status rl_exp_mixture_mttf(const char* mixture_json, double* out) {
  return wrap([&] {
    json j = json::parse(mixture_json);
    rl::ExpMixture mix;
    for (const auto& t : j.at("terms"))
      mix.terms.push_back({t.at("weight").get<double>(), t.at("rate").get<double>()});
    *out = mix.mttf();
  });
}

/* ------------------------------------------------------------------ */
/* Queueing                                                             */

rl_status rl_mm1(double lambda, double mean_service, char** report_json) {
  return wrap([&] {
    auto res = rl::mm1(lambda, mean_service);
    json j = {{"rho", res.rho}, {"waiting", res.waiting}, {"response", res.response}};
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_mmm(double lambda, double mean_service, int servers,
                 char** report_json) {
  return wrap([&] {
    auto res = rl::mmm(lambda, mean_service, servers);
    json j = {{"rho", res.rho},
              {"erlang_c", res.erlang_c},
              {"waiting", res.waiting},
              {"response", res.response}};
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_mg1(double lambda, double m1, double m2, double m3,
                 char** report_json) {
  return wrap([&] {
    auto res = rl::mg1(lambda, {m1, m2, m3});
    json j = {{"rho", res.rho},           {"waiting", res.waiting},
              {"waiting_m2", res.waiting_m2}, {"waiting_var", res.waiting_var},
              {"response", res.response}, {"response_m2", res.response_m2},
              {"response_cv2", res.response_cv2}};
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_priority_wait(double lambda, double m1, double m2, double m3,
                           double rho_high, double* out) {
  return wrap([&] { *out = rl::priority_wait(lambda, {m1, m2, m3}, rho_high); });
}

rl_status rl_percentile(double mean_response, double p, double mean_service,
                        double* response_p, double* lambda_p) {
  return wrap([&] {
    auto res = rl::percentile_tools(mean_response, p, mean_service);
    *response_p = res.response_p;
    *lambda_p = res.lambda_p;
  });
}

rl_status rl_gim1_erlang2(double lambda, double mu, char** report_json) {
  return wrap([&] {
    auto res = rl::gim1_erlang2(lambda, mu);
    json j = {{"rho", res.rho}, {"sigma", res.sigma}, {"waiting", res.waiting}};
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_split_mm1(double lambda_total, double mean_service,
                       const double* fractions, size_t count, double* out) {
  return wrap([&] {
    std::vector<double> f(fractions, fractions + count);
    *out = rl::split_mm1_response(lambda_total, mean_service, f);
  });
}

rl_status rl_fj_response(int n, double rho, double response, double sigma,
                         const char* method, int evd_calibration, double* out) {
  return wrap([&] {
    rl::FjOptions opts;
    opts.evd_calibration = evd_calibration != 0;
    *out = rl::fj_response(n, rho, response, sigma,
                           rl::fj_method_from_string(method), opts);
  });
}

rl_status rl_fj_max_asymmetric2(double r1, int k1, double r2, int k2,
                                double* out) {
  return wrap([&] { *out = rl::fj_max_asymmetric2(r1, k1, r2, k2); });
}

rl_status rl_disk_service_moments(const char* geometry_json,
                                  const char* workload_json, const char* mode,
                                  char** report_json) {
  return wrap([&] {
    rl::DiskGeometry g = (geometry_json && *geometry_json &&
                          json::parse(geometry_json).contains("zones"))
                             ? rl::DiskGeometry::from_json(geometry_json)
                             : rl::default_geometry();
    rl::WorkloadMix w;
    if (workload_json && *workload_json) {
      json jw = json::parse(workload_json);
      w.f_r = jw.value("f_r", 1.0);
      w.f_w = jw.value("f_w", 1.0 - w.f_r);
      w.block_sectors = jw.value("block_sectors", 8);
      w.lambda_per_ms = jw.value("lambda", 0.0);
    }
    std::string m = mode ? mode : "plain";
    auto res = rl::service_moments(
        g, w, m == "raid5" ? rl::ServiceMode::Raid5Normal : rl::ServiceMode::Plain);
    auto moments_json = [](const rl::ServiceMoments& s) {
      return json{{"m1", s.m1}, {"m2", s.m2}, {"m3", s.m3}, {"variance", s.variance()}};
    };
    json j;
    j["sr"] = moments_json(res.sr);
    j["sw"] = moments_json(res.sw);
    j["disk"] = moments_json(res.disk);
    j["f_sr"] = res.f_sr;
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_seek_pmf_stats(int cylinders, double p_stay, char** report_json) {
  return wrap([&] {
    auto pmf = rl::seek_pmf(cylinders, p_stay);
    json j;
    j["mean_distance"] = rl::pmf_mean(pmf);
    double sum = 0.0;
    for (double p : pmf) sum += p;
    j["total_probability"] = sum;
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_degraded_load(int n, int g, double f_r, double read_ms,
                           double write_ms, double rmw_ms, char** report_json) {
  return wrap([&] {
    auto res = rl::degraded_load(n, g, f_r, {read_ms, write_ms, rmw_ms});
    json j = {{"load_increase", res.load_increase},
              {"rho_read_per_lambda", res.rho_read_per_lambda},
              {"rho_write_per_lambda", res.rho_write_per_lambda}};
    *report_json = dup_string(j.dump());
  });
}

rl_status rl_vsm_rebuild(const char* params_json, char** report_json) {
  return wrap([&] {
    json j = json::parse(params_json);
    rl::ServiceMoments s{j.at("service").at("m1").get<double>(),
                         j.at("service").at("m2").get<double>(),
                         j.at("service").value("m3", 0.0)};
    rl::VacationSpec v{parse_dist(j.at("vacation").at("type1")),
                       parse_dist(j.at("vacation").at("type2"))};
    auto res = rl::vsm_rebuild(j.at("lambda").get<double>(), s, v,
                               j.value("n_tracks", 10000.0), j.value("steps", 1));
    json out;
    out["rho"] = res.rho;
    out["w_mg1"] = res.w_mg1;
    out["w_vsm"] = res.w_vsm;
    out["v_residual"] = res.v_residual;
    out["n_track"] = res.n_track;
    out["t_dc"] = res.t_dc;
    out["t_cycle"] = res.t_cycle;
    out["t_rebuild"] = res.t_rebuild;
    out["vacation"] = {{"m1", res.vacation.m1}, {"m2", res.vacation.m2},
                       {"m3", res.vacation.m3}};
    *report_json = dup_string(out.dump());
  });
}

rl_status rl_rebuild_beta(double t_zero, double rho, double beta, double* out) {
  return wrap([&] { *out = rl::rebuild_beta_estimate(t_zero, rho, beta); });
}

rl_status rl_rebuild_bandwidth(const char* params_json, char** report_json) {
  return wrap([&] {
    json j = json::parse(params_json);
    rl::BandwidthRebuildParams p;
    p.lambda_per_ms = j.value("lambda", 0.0);
    p.x_disk_ms = j.value("x_disk_ms", 0.0);
    p.v_residual_ms = j.value("v_residual_ms", 0.0);
    p.seek_ms = j.value("seek_ms", 0.0);
    p.rotation_ms = j.value("rotation_ms", 4.0);
    p.ru_fraction_of_track = j.value("ru_fraction_of_track", 1.0);
    p.ru_bytes = j.value("ru_bytes", 0.0);
    p.ru_transfer_ms = j.value("ru_transfer_ms", 0.0);
    p.utilization = j.value("utilization", 1.0);
    p.capacity_bytes = j.value("capacity_bytes", 0.0);
    auto res = rl::rebuild_bandwidth_estimate(p);
    json out = {{"n_ru", res.n_ru},
                {"latency_ms", res.latency_ms},
                {"t_dc_ms", res.t_dc_ms},
                {"bandwidth_bytes_per_ms", res.bandwidth_bytes_per_ms},
                {"t_rebuild_ms", res.t_rebuild_ms}};
    *report_json = dup_string(out.dump());
  });
}

rl_status rl_pcm_vs_vsm(double lambda, double x_ru, double w_ru, double* p_vsm,
                        double* p_pcm) {
  return wrap([&] {
    auto res = rl::pcm_vs_vsm(lambda, x_ru, w_ru);
    *p_vsm = res.p_vsm;
    *p_pcm = res.p_pcm;
  });
}

rl_status rl_lfs_bso(double aso, double* bso_out) {
  return wrap([&] { *bso_out = rl::lfs_bso_from_aso(aso); });
}

rl_status rl_satf_service_time(double x_fcfs, double queue_len, double* out) {
  return wrap([&] { *out = rl::satf_service_time(x_fcfs, queue_len); });
}

rl_status rl_seek_min_max(int k, double cylinders, double* min_out,
                          double* max_out) {
  return wrap([&] {
    auto res = rl::seek_min_max(k, cylinders);
    *min_out = res.min_distance;
    *max_out = res.max_distance;
  });
}

rl_status rl_delayed_encoding_penalty(double phi_t, double r, double* out) {
  return wrap([&] { *out = rl::delayed_encoding_penalty(phi_t, r); });
}

rl_status rl_optimal_routing(const char* devices_json, double lambda_total,
                             char** report_json) {
  return wrap([&] {
    json j = json::parse(devices_json);
    std::vector<rl::ServiceMoments> devices;
    for (const auto& d : j)
      devices.push_back({d.at("m1").get<double>(), d.at("m2").get<double>(),
                         d.value("m3", 0.0)});
    auto res = rl::optimal_routing(lambda_total, devices);
    json out = {{"rates", res.rates}, {"mean_response", res.mean_response}};
    *report_json = dup_string(out.dump());
  });
}

/* ------------------------------------------------------------------ */
/* Simulation                                                           */

rl_status rl_sim_run(const char* config_json, int jobs, int include_samples,
                     char** report_json) {
  return wrap([&] {
    json j = json::parse(config_json);
    std::string kind = j.at("kind").get<std::string>();
    rl::SimReport rep;
    if (kind == "hraid") {
      rl::HraidConfig c;
      c.nodes = j.at("nodes").get<int>();
      c.disks_per_node = j.at("disks_per_node").get<int>();
      c.inter_k = j.value("inter_k", 0);
      c.intra_l = j.value("intra_l", 0);
      c.delta = j.at("delta").get<double>();
      c.gamma = j.value("gamma", 0.0);
      c.seed = j.value("seed", uint64_t(1));
      c.replications = j.value("replications", uint64_t(10000));
      rep = rl::simulate_hraid(c, jobs);
    } else if (kind == "kofn" || kind == "kofn-events") {
      rl::KofnConfig c;
      c.n = j.at("n").get<int>();
      c.k = j.at("k").get<int>();
      c.mttf_hours = j.at("mttf").get<double>();
      c.mttr_hours = j.at("mttr").get<double>();
      c.policy = j.value("policy", std::string("proportional")) == "single"
                     ? rl::RepairPolicy::SingleRepairman
                     : rl::RepairPolicy::Proportional;
      c.seed = j.value("seed", uint64_t(1));
      c.replications = j.value("replications", uint64_t(10000));
      rep = kind == "kofn" ? rl::simulate_kofn_repair(c, jobs)
                           : rl::simulate_kofn_repair_events(c, jobs);
    } else if (kind == "copyset") {
      rl::CopysetPlan plan = build_plan(j.at("plan"));
      rl::CopysetSimConfig c;
      c.node_fail_prob = j.value("fail_prob", 0.01);
      c.exact_failures = j.value("exact_failures", 0);
      c.seed = j.value("seed", uint64_t(1));
      c.replications = j.value("replications", uint64_t(10000));
      rep = rl::simulate_copyset(plan, c, jobs);
    } else if (kind == "static") {
      auto pred = parse_system(j.at("system"));
      rl::StaticLossConfig c;
      c.survive_prob = j.at("r").get<double>();
      c.seed = j.value("seed", uint64_t(1));
      c.replications = j.value("replications", uint64_t(10000));
      rep = rl::simulate_static_loss(pred.survives, pred.n, c, jobs);
    } else {
      throw std::invalid_argument("unknown simulation kind: " + kind);
    }
    *report_json = dup_string(rep.to_json(include_samples != 0));
  });
}

}  // extern "C"
