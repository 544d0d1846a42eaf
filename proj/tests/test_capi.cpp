// Exercises the shared-library C surface: handles, error codes, and the
// JSON wire formats the CLI and external consumers rely on.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <raidlab.h>

#include <cmath>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  rl_string_free(s);
  return out;
}

json take_json(char* s) { return json::parse(take(s)); }

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::string(rl_version()).find("raidlab") != std::string::npos);
  rl_layout* layout = nullptr;
  rl_status st = rl_layout_build("{\"family\":\"rdp\",\"p\":4}", &layout);
  CHECK(st == RL_EINVAL);
  CHECK(std::string(rl_last_error()).find("prime") != std::string::npos);
}

TEST_CASE("layout build, json round trip, recoverability, selftest") {
  rl_layout* layout = nullptr;
  REQUIRE(rl_layout_build("{\"family\":\"rdp\",\"p\":5}", &layout) == RL_OK);
  char* js = nullptr;
  REQUIRE(rl_layout_to_json(layout, &js) == RL_OK);
  std::string text = take(js);
  json parsed = json::parse(text);
  CHECK(parsed["rows"] == 4);
  CHECK(parsed["cols"] == 6);

  rl_layout* back = nullptr;
  REQUIRE(rl_layout_from_json(text.c_str(), &back) == RL_OK);
  char* js2 = nullptr;
  REQUIRE(rl_layout_to_json(back, &js2) == RL_OK);
  CHECK(take(js2) == text);  // byte-identical round trip

  int recoverable = -1;
  REQUIRE(rl_layout_recoverable(back, "{\"columns\":[0,1]}", &recoverable) == RL_OK);
  CHECK(recoverable == 1);
  REQUIRE(rl_layout_recoverable(back, "{\"columns\":[0,1,2]}", &recoverable) == RL_OK);
  CHECK(recoverable == 0);

  char* rep = nullptr;
  REQUIRE(rl_layout_selftest(layout, "{\"columns\":[2,4]}", 16, 7, &rep) == RL_OK);
  json selftest = take_json(rep);
  CHECK(selftest["recovered"] == true);
  CHECK(selftest["xor_ops"] == 24);

  rl_layout_free(layout);
  rl_layout_free(back);
}

TEST_CASE("repair metrics and pattern fractions through the C surface") {
  rl_layout* layout = nullptr;
  REQUIRE(rl_layout_build("{\"family\":\"azure-lrc\",\"n\":10,\"k\":6,\"r\":3}",
                          &layout) == RL_OK);
  char* rep = nullptr;
  REQUIRE(rl_layout_repair_metrics(layout, &rep) == RL_OK);
  json metrics = take_json(rep);
  CHECK(metrics["arc"]["value"] == doctest::Approx(3.6));
  CHECK(metrics["nrc"]["value"] == doctest::Approx(6.0));
  CHECK(metrics["drc"]["value"] == doctest::Approx(3.0));

  char* frac = nullptr;
  REQUIRE(rl_layout_decodable_fraction(layout, 3, &frac) == RL_OK);
  json f3 = take_json(frac);
  CHECK(f3["decodable"] == f3["total"]);
  rl_layout_free(layout);
}

TEST_CASE("clustered layouts, stripe export, bibd check") {
  rl_clustered* nrp = nullptr;
  REQUIRE(rl_clustered_build(
              "{\"kind\":\"nrp\",\"n\":10,\"g\":4,\"seed\":42,\"row_groups\":4}",
              &nrp) == RL_OK);
  char* props = nullptr;
  REQUIRE(rl_clustered_properties(nrp, &props) == RL_OK);
  json pj = take_json(props);
  CHECK(pj["single_failure_ok"] == true);
  CHECK(pj["alpha"] == doctest::Approx(3.0 / 9.0));

  char* stripe = nullptr;
  REQUIRE(rl_clustered_to_stripe_json(nrp, &stripe) == RL_OK);
  std::string stripe_text = take(stripe);
  rl_layout* as_code = nullptr;
  REQUIRE(rl_layout_from_json(stripe_text.c_str(), &as_code) == RL_OK);
  int recoverable = 0;
  REQUIRE(rl_layout_recoverable(as_code, "{\"columns\":[3]}", &recoverable) == RL_OK);
  CHECK(recoverable == 1);  // single disk failure always recoverable
  rl_layout_free(as_code);
  rl_clustered_free(nrp);

  char* bibd = nullptr;
  REQUIRE(rl_bibd_check("{\"builtin\":\"10-4\"}", &bibd) == RL_OK);
  json bj = take_json(bibd);
  CHECK(bj["valid"] == true);
  CHECK(bj["b"] == 15);
  CHECK(bj["lambda"] == 2);
}

TEST_CASE("copysets through the C surface") {
  rl_copysets* plan = nullptr;
  REQUIRE(rl_copysets_build(
              "{\"scheme\":\"random\",\"n\":9,\"r\":3,\"s\":4}", &plan) == RL_OK);
  char* info = nullptr;
  REQUIRE(rl_copysets_info(plan, &info) == RL_OK);
  CHECK(take_json(info)["copysets"] == 54);
  char* pdl = nullptr;
  REQUIRE(rl_copysets_pdl_exact(plan, 3, &pdl) == RL_OK);
  json pj = take_json(pdl);
  CHECK(pj["num"] == 9);
  CHECK(pj["den"] == 14);
  char* csv = nullptr;
  REQUIRE(rl_copysets_to_csv(plan, &csv) == RL_OK);
  std::string text = take(csv);
  rl_copysets* back = nullptr;
  REQUIRE(rl_copysets_from_csv(text.c_str(), 9, 3, &back) == RL_OK);
  char* info2 = nullptr;
  REQUIRE(rl_copysets_info(back, &info2) == RL_OK);
  CHECK(take_json(info2)["copysets"] == 54);
  rl_copysets_free(plan);
  rl_copysets_free(back);
}

TEST_CASE("ctmc: builders, json import path, absorption and transients") {
  rl_ctmc* chain = nullptr;
  REQUIRE(rl_ctmc_build(
              "{\"chain\":\"raid5\",\"n\":9,\"delta\":1e-5,\"mu\":0.05}",
              &chain) == RL_OK);
  char* js = nullptr;
  REQUIRE(rl_ctmc_to_json(chain, &js) == RL_OK);
  std::string text = take(js);
  rl_ctmc* back = nullptr;
  REQUIRE(rl_ctmc_from_json(text.c_str(), &back) == RL_OK);

  char* mtta = nullptr;
  REQUIRE(rl_ctmc_mtta(back, &mtta) == RL_OK);
  json mj = take_json(mtta);
  double closed = 0;
  REQUIRE(rl_mttdl_closed_form("raid5", 9, 0, 0, 1e5, 20.0, &closed) == RL_OK);
  CHECK(mj["hours"].get<double>() ==
        doctest::Approx(((2 * 9 + 1) * 1e-5 + 0.05) / (9 * 10 * 1e-10)).epsilon(1e-9));

  char* tr = nullptr;
  REQUIRE(rl_ctmc_transient(back, 100.0, 1e-10, &tr) == RL_OK);
  json tj = take_json(tr);
  double sum = 0;
  for (const auto& p : tj["probs"]) sum += p.get<double>();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  rl_ctmc_free(chain);
  rl_ctmc_free(back);

  rl_ctmc* bad = nullptr;
  CHECK(rl_ctmc_from_json("{\"states\":[\"a\"]}", &bad) == RL_EINVAL);
}

TEST_CASE("scalar closed forms and status codes") {
  double out = 0;
  REQUIRE(rl_kofn_no_repair(4, 1, 0.9, &out) == RL_OK);
  CHECK(out == doctest::Approx(0.9477));
  double exact = 0, approx = 0;
  REQUIRE(rl_afr_from_mttf(1e6, &exact, &approx) == RL_OK);
  CHECK(approx == doctest::Approx(0.008766));
  CHECK(rl_afr_from_mttf(-5, &exact, &approx) == RL_EINVAL);

  char* rep = nullptr;
  CHECK(rl_mm1(1.5, 1.0, &rep) == RL_EUNSTABLE);
  REQUIRE(rl_mm1(0.5, 1.0, &rep) == RL_OK);
  CHECK(take_json(rep)["waiting"] == doctest::Approx(1.0));

  double ps = 0, pf = 0;
  REQUIRE(rl_pseg("ipc", "independent", "{}", &ps) == RL_OK);
  REQUIRE(rl_puf(8, 1, ps, "{}", 300e9, &pf) == RL_OK);
  CHECK(pf == doctest::Approx(5.16e-11).epsilon(0.05));

  double det = 0, expo = 0;
  REQUIRE(rl_scrub_error_prob(1e-5, 1e-7, 1.0, &det, &expo) == RL_OK);
  CHECK(expo / det == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("polynomials and shortcut terms over the C surface") {
  char* poly = nullptr;
  REQUIRE(rl_mirror_poly("cd", 8, 0, &poly) == RL_OK);
  std::string poly_text = take(poly);
  CHECK(json::parse(poly_text)["coeffs"][2] == 20);
  char* term = nullptr;
  REQUIRE(rl_shortcut_from_poly(poly_text.c_str(), &term) == RL_OK);
  json tj = take_json(term);
  CHECK(tj["coeff"]["num"] == 8);
  CHECK(tj["power"] == 2);
  char* frac = nullptr;
  REQUIRE(rl_poly_norepair_mttdl(poly_text.c_str(), &frac) == RL_OK);
  json fj = take_json(frac);
  CHECK(fj["num"] == 379);
  CHECK(fj["den"] == 840);

  char* lsi = nullptr;
  REQUIRE(rl_enumerate_poly("{\"system\":\"lsi\",\"n\":8}", &lsi) == RL_OK);
  CHECK(take_json(lsi)["coeffs"][3] == 52);
}

TEST_CASE("queueing and rebuild analysis over the C surface") {
  double out = 0;
  REQUIRE(rl_fj_response(2, 0.0, 1.0, 1.0, "exact2", 0, &out) == RL_OK);
  CHECK(out == doctest::Approx(1.5));
  CHECK(rl_fj_response(3, 0.0, 1.0, 1.0, "exact2", 0, &out) == RL_EINVAL);

  char* rep = nullptr;
  std::string vsm_params = R"({
    "lambda": 0.05,
    "service": {"m1": 5.0, "m2": 50.0, "m3": 750.0},
    "vacation": {
      "type1": {"kind":"conv","parts":[{"kind":"det","value":3.0},
                                        {"kind":"det","value":4.0}]},
      "type2": {"kind":"det","value":4.0}},
    "n_tracks": 10000, "steps": 4})";
  REQUIRE(rl_vsm_rebuild(vsm_params.c_str(), &rep) == RL_OK);
  json vj = take_json(rep);
  CHECK(vj["w_vsm"].get<double>() > vj["w_mg1"].get<double>());
  CHECK(vj["t_rebuild"].get<double>() > 0);

  double bso = 0;
  REQUIRE(rl_lfs_bso(0.6, &bso) == RL_OK);
  CHECK(bso == doctest::Approx(0.324).epsilon(0.005));

  REQUIRE(rl_optimal_routing(
              "[{\"m1\":1.0,\"m2\":2.0},{\"m1\":1.0,\"m2\":2.0}]", 1.0, &rep) == RL_OK);
  json rj = take_json(rep);
  CHECK(rj["rates"][0].get<double>() == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("simulation config round trip and determinism at the C surface") {
  std::string cfg = R"({"kind":"kofn","n":10,"k":9,"mttf":500,"mttr":1,
                        "seed":11,"replications":2000})";
  char* rep1 = nullptr;
  REQUIRE(rl_sim_run(cfg.c_str(), 1, 1, &rep1) == RL_OK);
  char* rep2 = nullptr;
  REQUIRE(rl_sim_run(cfg.c_str(), 2, 1, &rep2) == RL_OK);
  std::string a = take(rep1), b = take(rep2);
  CHECK(a == b);  // identical including every sample
  json ja = json::parse(a);
  CHECK(ja["replications"] == 2000);
  CHECK(ja["samples"].size() == 2000);

  char* bad = nullptr;
  CHECK(rl_sim_run("{\"kind\":\"nope\"}", 1, 0, &bad) == RL_EINVAL);

  std::string hraid = R"({"kind":"hraid","nodes":4,"disks_per_node":4,
    "inter_k":1,"intra_l":1,"delta":1e-4,"gamma":1e-5,"seed":3,
    "replications":2000})";
  char* rep3 = nullptr;
  REQUIRE(rl_sim_run(hraid.c_str(), 2, 0, &rep3) == RL_OK);
  json hj = take_json(rep3);
  CHECK(hj["mean"].get<double>() > 0);
  CHECK(hj["controller_loss_fraction"].get<double>() >= 0.0);
}

TEST_CASE("hamming and xorbas endpoints") {
  int syndrome[] = {1, 2, 8};
  int pos = 0;
  REQUIRE(rl_hamming_locate(syndrome, 3, &pos) == RL_OK);
  CHECK(pos == 11);
  REQUIRE(rl_hamming_locate(nullptr, 0, &pos) == RL_OK);
  CHECK(pos == -1);

  char* rep = nullptr;
  REQUIRE(rl_xorbas_check(32, 5, &rep) == RL_OK);
  CHECK(take_json(rep)["residual_zero"] == true);
}
