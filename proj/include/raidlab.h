/* raidlab.h - C interface to the raidlab RAID engineering library.
 *
 * Conventions:
 *   - Every fallible call returns rl_status; RL_OK is 0.  On error,
 *     rl_last_error() returns a thread-local message for the failing call.
 *   - Structured inputs and outputs travel as JSON strings.  Returned
 *     strings are heap-allocated by the library; release them with
 *     rl_string_free().
 *   - Opaque handles (rl_layout, rl_clustered, rl_ctmc, rl_copysets) are
 *     created by the rl_*_build / rl_*_from_json constructors and released
 *     with the matching rl_*_free().
 *   - Rates are per hour, times in hours unless a queueing call says ms.
 */

#ifndef RAIDLAB_H
#define RAIDLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rl_status {
  RL_OK = 0,
  RL_EINVAL = 1,        /* bad argument or malformed JSON */
  RL_EUNRECOVERABLE = 2,/* erasure pattern beyond the code's tolerance */
  RL_ESINGULAR = 3,     /* singular linear system / unreachable absorption */
  RL_EUNSTABLE = 4,     /* queueing utilization at or above 1 */
  RL_ELIMIT = 5,        /* enumeration or size cap exceeded */
  RL_ESEARCH = 6,       /* coefficient search exhausted */
  RL_ERUNTIME = 7       /* other runtime failure */
} rl_status;

const char* rl_version(void);
const char* rl_last_error(void);
void rl_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Stripe layouts and erasure codes                                    */

typedef struct rl_layout rl_layout;

/* spec: {"family":"raid5","n":5,"stripes":5}
 *       {"family":"rdp","p":5} | {"family":"xcode","n":7}
 *       {"family":"hvpc","k1":3,"k2":3}
 *       {"family":"lrc","k":3,"groups":2,"globals":2}
 *       {"family":"azure-lrc","n":10,"k":6,"r":3}
 *       {"family":"sd","rows":4,"cols":7,"s":2}
 *       {"family":"lsi","n":8} | {"family":"sspiral"}                  */
rl_status rl_layout_build(const char* spec_json, rl_layout** out);
rl_status rl_layout_from_json(const char* layout_json, rl_layout** out);
rl_status rl_layout_to_json(const rl_layout* layout, char** json_out);
void rl_layout_free(rl_layout* layout);

/* erased: {"columns":[0,1],"cells":[[r,c],...]} */
rl_status rl_layout_recoverable(const rl_layout* layout, const char* erased_json,
                                int* recoverable_out);

/* Random-data encode/erase/decode round trip; report carries recovered,
 * stuck cells and the encode XOR count. */
rl_status rl_layout_selftest(const rl_layout* layout, const char* erased_json,
                             size_t block_len, uint64_t seed, char** report_json);

/* ARC/NRC/DRC/ADRC (+ARC2) as exact fractions. */
rl_status rl_layout_repair_metrics(const rl_layout* layout, char** report_json);

/* PMDS/SD classification by exhaustive enumeration (grid capped at 6x8). */
rl_status rl_layout_pmds_check(const rl_layout* layout, int m, int s,
                               char** report_json);

/* Minimum-read single-column rebuild plan for an X-code layout. */
rl_status rl_xcode_rebuild_plan(const rl_layout* layout, int failed_col,
                                char** report_json);

/* Fraction of erasure patterns of a given size that decode. */
rl_status rl_layout_decodable_fraction(const rl_layout* layout, int failures,
                                       char** report_json);

/* Xorbas implied-parity identity on random data. */
rl_status rl_xorbas_check(size_t block_len, uint64_t seed, char** report_json);

/* Sum of failing parity positions; -1 when the syndrome is empty. */
rl_status rl_hamming_locate(const int* syndrome, size_t count, int* position_out);

/* ------------------------------------------------------------------ */
/* Clustered parity placements, BIBD, copysets, mirrored organizations */

typedef struct rl_clustered rl_clustered;

/* spec: {"kind":"nrp","n":10,"g":4,"seed":42,"row_groups":4}
 *       {"kind":"shifted","n":15,"g":6,"cycles":1}
 *       {"kind":"bibd"} (built-in 10/4) | {"kind":"bibd-complete","n":5,"g":4}
 *       {"kind":"raid5","n":5,"rows":5} | {"kind":"raid4","n":5,"rows":5}   */
rl_status rl_clustered_build(const char* spec_json, rl_clustered** out);
rl_status rl_clustered_from_json(const char* json, rl_clustered** out);
rl_status rl_clustered_to_json(const rl_clustered* layout, char** json_out);
void rl_clustered_free(rl_clustered* layout);

/* Holland-style properties (i)-(vi). */
rl_status rl_clustered_properties(const rl_clustered* layout, char** report_json);

/* Export as a plain-XOR stripe layout in the codes-module JSON schema. */
rl_status rl_clustered_to_stripe_json(const rl_clustered* layout, char** json_out);

/* design: {"n":10,"k":4,"blocks":[[0,1,4,7],...]} or {"builtin":"10-4"}
 * or {"complete":{"n":5,"k":4}} */
rl_status rl_bibd_check(const char* design_json, char** report_json);

typedef struct rl_copysets rl_copysets;

/* spec: {"scheme":"permutation","n":9,"r":3,"p":2,"seed":1}
 *       {"scheme":"random","n":9,"r":3,"s":4}                         */
rl_status rl_copysets_build(const char* spec_json, rl_copysets** out);
rl_status rl_copysets_from_csv(const char* csv, int n, int r, rl_copysets** out);
rl_status rl_copysets_to_csv(const rl_copysets* plan, char** csv_out);
rl_status rl_copysets_info(const rl_copysets* plan, char** json_out);
/* Exact data-loss probability with `failed` simultaneous failures. */
rl_status rl_copysets_pdl_exact(const rl_copysets* plan, int failed,
                                char** json_out);
void rl_copysets_free(rl_copysets* plan);

/* Mirror placement map and surviving loads: org in {bm,id,grd,cd}. */
rl_status rl_mirror_map(const char* org, int n, int clusters, char** json_out);

/* ------------------------------------------------------------------ */
/* CTMC reliability                                                    */

typedef struct rl_ctmc rl_ctmc;

/* spec: {"chain":"raid5","n":9,"delta":1e-6,"mu":0.1}
 *       {"chain":"kofn-fixed"|"kofn-prop","n":10,"f":2,"delta":...,"mu":...}
 *       {"chain":"lse-raid5","n":8,"delta":...,"mu":...,"puf":...}
 *       {"chain":"lse-raid6","n":16,"delta":..,"mu1":..,"mu2":..,
 *        "puf_r":..,"puf_2":..}
 *       {"chain":"lrc","n":10,"delta":..,"p_d":0.86,"rho_single":..,
 *        "rho_multi":..}                                               */
rl_status rl_ctmc_build(const char* spec_json, rl_ctmc** out);
/* {states:[names], rates:[[...]], absorbing:[...], initial:[...]} */
rl_status rl_ctmc_from_json(const char* json, rl_ctmc** out);
rl_status rl_ctmc_to_json(const rl_ctmc* model, char** json_out);
void rl_ctmc_free(rl_ctmc* model);

rl_status rl_ctmc_mtta(const rl_ctmc* model, char** report_json);
rl_status rl_ctmc_transient(const rl_ctmc* model, double t_hours, double tol,
                            char** probs_json);

/* ------------------------------------------------------------------ */
/* Closed-form reliability                                              */

rl_status rl_afr_from_mttf(double mttf_hours, double* exact, double* approx);
rl_status rl_kofn_no_repair(int n, int k, double r, double* out);
rl_status rl_raid5_transient(int n_data, double mttf, double mttr, double t,
                             double* out);
/* method: raid5 | chen | angus (k = tolerated failures, g = group size) */
rl_status rl_mttdl_closed_form(const char* method, int n, int g, int k,
                               double mttf, double mttr, double* out);

/* lse_json ("{}" for the SATA defaults):
 * {"p_bit":1e-14,"sector_bytes":512,"segment_len":128,"interleaves":8,
 *  "burst_pmf":[...]}                                                   */
rl_status rl_pseg(const char* scheme, const char* model, const char* lse_json,
                  double* out);
rl_status rl_puf(int n, int k_failed, double p_seg, const char* lse_json,
                 double capacity_bytes, double* out);
rl_status rl_puf_raid6_degraded(int n, double p_seg, const char* lse_json,
                                double capacity_bytes, double* out);
rl_status rl_mttdl_lse_raid5(int n, double mttf, double mttr, double puf,
                             double* out);
rl_status rl_mttdl_lse_raid6(int n, double delta, double mu1, double mu2,
                             double puf_r, double puf_2, double* out);

rl_status rl_scrub_error_prob(double p_e, double h_per_hour, double ts_hours,
                              double* deterministic, double* exponential);
/* {"chunk_kb":4,"disk_kb":3e8,"scrub_kb":256,"write_fraction":0.3,
 *  "sigma_per_hour":...,"parities":1,"io_time_hours":5e-6} */
rl_status rl_scrub_min_period(const char* params_json, double* hours_out);
rl_status rl_ioe(double kb, double* out);

/* Reliability polynomials: {"n":8,"coeffs":[...]} */
rl_status rl_mirror_poly(const char* org, int n, int clusters, char** poly_json);
/* system: {"system":"bm"|"id"|"grd"|"cd"|"lsi"|"sspiral"|"kofn",
 *          "n":8,"c":2,"k":1}  (kofn survives up to k failures)        */
rl_status rl_enumerate_poly(const char* system_json, char** poly_json);
rl_status rl_poly_eval(const char* poly_json, double r, double* out);
rl_status rl_shortcut_from_poly(const char* poly_json, char** term_json);
rl_status rl_shortcut_named(const char* system, int n, int c, char** term_json);
rl_status rl_poly_norepair_mttdl(const char* poly_json, char** fraction_json);

/* kind: raid15 | raid51 */
rl_status rl_multilevel_mttdl(const char* kind, int n_or_d, double mttf,
                              double mttr, char** report_json);
rl_status rl_raid15_reliability(int n, double r, double* out);
rl_status rl_raid51_reliability(int n_pairs, double r, double* out);

/* scheme: clustered | declustered */
rl_status rl_placement_metrics(const char* scheme, int n, double c, int r,
                               double b, double delta, char** report_json);
rl_status rl_hda_compare(double epsilon, double* r_c1, double* r_c2);
rl_status rl_diffraid_aging(const double* parity_pct, int n, char** matrix_json);
/* {"terms":[{"weight":1.0,"rate":1e-5},...]} */
rl_status rl_exp_mixture_mttf(const char* mixture_json, double* out);

/* ------------------------------------------------------------------ */
/* Queueing and rebuild analysis (times in ms)                          */

rl_status rl_mm1(double lambda, double mean_service, char** report_json);
rl_status rl_mmm(double lambda, double mean_service, int servers,
                 char** report_json);
rl_status rl_mg1(double lambda, double m1, double m2, double m3,
                 char** report_json);
rl_status rl_priority_wait(double lambda, double m1, double m2, double m3,
                           double rho_high, double* out);
rl_status rl_percentile(double mean_response, double p, double mean_service,
                        double* response_p, double* lambda_p);
rl_status rl_gim1_erlang2(double lambda, double mu, char** report_json);
rl_status rl_split_mm1(double lambda_total, double mean_service,
                       const double* fractions, size_t count, double* out);

/* method: exact2 | nelson | max_exp | max_evd | max_erlang */
rl_status rl_fj_response(int n, double rho, double response, double sigma,
                         const char* method, int evd_calibration, double* out);
rl_status rl_fj_max_asymmetric2(double r1, int k1, double r2, int k2,
                                double* out);

/* geometry: {"zones":[{"cylinders":..,"sectors_per_track":..},...],
 *            "rotation_ms":4,"seek":{"a":..,"b":..,"c":..},
 *            "seek_points":[[d,ms],...],"sector_bytes":512}  ("{}" = default)
 * workload: {"f_r":0.6,"f_w":0.4,"block_sectors":8}
 * mode: plain | raid5                                                    */
rl_status rl_disk_service_moments(const char* geometry_json,
                                  const char* workload_json, const char* mode,
                                  char** report_json);
rl_status rl_seek_pmf_stats(int cylinders, double p_stay, char** report_json);

rl_status rl_degraded_load(int n, int g, double f_r, double read_ms,
                           double write_ms, double rmw_ms, char** report_json);

/* {"lambda":0.05,"service":{"m1":..,"m2":..,"m3":..},
 *  "vacation":{"type1":DIST,"type2":DIST},"n_tracks":10000,"steps":4}
 * DIST: {"kind":"det","value":..} | {"kind":"exp","mean":..}
 *       {"kind":"erlang","stages":..,"mean":..}
 *       {"kind":"conv","parts":[DIST,...]}                               */
rl_status rl_vsm_rebuild(const char* params_json, char** report_json);
rl_status rl_rebuild_beta(double t_zero, double rho, double beta, double* out);
rl_status rl_rebuild_bandwidth(const char* params_json, char** report_json);
rl_status rl_pcm_vs_vsm(double lambda, double x_ru, double w_ru, double* p_vsm,
                        double* p_pcm);

rl_status rl_lfs_bso(double aso, double* bso_out);
rl_status rl_satf_service_time(double x_fcfs, double queue_len, double* out);
rl_status rl_seek_min_max(int k, double cylinders, double* min_out,
                          double* max_out);
rl_status rl_delayed_encoding_penalty(double phi_t, double r, double* out);
/* [{"m1":..,"m2":..,"m3":..},...] */
rl_status rl_optimal_routing(const char* devices_json, double lambda_total,
                             char** report_json);

/* ------------------------------------------------------------------ */
/* Monte Carlo simulation                                              */

/* config:
 * {"kind":"hraid","nodes":4,"disks_per_node":4,"inter_k":1,"intra_l":1,
 *  "delta":1e-6,"gamma":1e-7,"seed":1,"replications":10000}
 * {"kind":"kofn"|"kofn-events","n":10,"k":9,"mttf":2000,"mttr":1,
 *  "policy":"proportional"|"single","seed":1,"replications":10000}
 * {"kind":"copyset","plan":COPYSET_SPEC,"fail_prob":0.01,
 *  "exact_failures":0,"seed":1,"replications":10000}
 * {"kind":"static","system":SYSTEM_SPEC,"r":0.975,"seed":1,
 *  "replications":10000}                                               */
rl_status rl_sim_run(const char* config_json, int jobs, int include_samples,
                     char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* RAIDLAB_H */
