// raidlab - command-line front end over the raidlab C API.
//
// Every subcommand prints a small table (table/csv/json via --format),
// diagnostics go to stderr, and the exit status is 0 only on success.
// Preconditions rejected by the library map to exit status 2.

#include <raidlab.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_format = "table";
uint64_t g_seed = 1;
int g_jobs = 1;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct Table {
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
  std::string note;  // provenance of the numbers

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void print() const {
    if (g_format == "json") {
      json j;
      j["headers"] = headers;
      j["rows"] = rows;
      if (!note.empty()) j["note"] = note;
      std::cout << j.dump() << "\n";
      return;
    }
    if (g_format == "csv") {
      auto emit = [](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
          if (i) std::cout << ',';
          std::cout << cells[i];
        }
        std::cout << '\n';
      };
      emit(headers);
      for (const auto& row : rows) emit(row);
      return;
    }
    std::vector<size_t> width(headers.size(), 0);
    auto widen = [&](const std::vector<std::string>& cells) {
      for (size_t i = 0; i < cells.size() && i < width.size(); ++i)
        width[i] = std::max(width[i], cells[i].size());
    };
    widen(headers);
    for (const auto& row : rows) widen(row);
    auto emit = [&](const std::vector<std::string>& cells) {
      for (size_t i = 0; i < cells.size(); ++i)
        std::cout << (i ? "  " : "") << cells[i]
                  << std::string(width[i] - std::min(width[i], cells[i].size()), ' ');
      std::cout << '\n';
    };
    emit(headers);
    for (const auto& row : rows) emit(row);
    if (!note.empty()) std::cout << "# " << note << '\n';
  }
};

[[noreturn]] void die(rl_status status) {
  std::cerr << "error: " << rl_last_error() << "\n";
  std::exit(status == RL_EINVAL || status == RL_ELIMIT ? 2 : 1);
}

void check(rl_status status) {
  if (status != RL_OK) die(status);
}

std::string take_string(char* s) {
  std::string out = s ? s : "";
  rl_string_free(s);
  return out;
}

json call_json(rl_status status, char** out) {
  check(status);
  return json::parse(take_string(*out));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::string erasure_json(const std::string& cols, const std::string& cells) {
  json j;
  j["columns"] = parse_int_list(cols);
  json cell_list = json::array();
  std::stringstream ss(cells);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      std::cerr << "error: cells use row:col syntax\n";
      std::exit(2);
    }
    cell_list.push_back(
        {std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1))});
  }
  j["cells"] = std::move(cell_list);
  return j.dump();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    std::exit(2);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LayoutHandle {
  rl_layout* ptr = nullptr;
  ~LayoutHandle() { rl_layout_free(ptr); }
};

void build_layout(const json& spec, LayoutHandle& h) {
  check(rl_layout_build(spec.dump().c_str(), &h.ptr));
}

json code_family_spec(const std::string& family, int n, int p, int k1, int k2,
                      int k, int groups, int globals, int r, int rows, int cols,
                      int s, int stripes) {
  json spec;
  spec["family"] = family;
  if (family == "raid5") spec.update(json{{"n", n}, {"stripes", stripes}});
  if (family == "rdp") spec["p"] = p;
  if (family == "xcode") spec["n"] = n;
  if (family == "hvpc") spec.update(json{{"k1", k1}, {"k2", k2}});
  if (family == "lrc")
    spec.update(json{{"k", k}, {"groups", groups}, {"globals", globals}});
  if (family == "azure-lrc") spec.update(json{{"n", n}, {"k", k}, {"r", r}});
  if (family == "sd") spec.update(json{{"rows", rows}, {"cols", cols}, {"s", s}});
  if (family == "lsi") spec["n"] = n;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("RAIDLAB_FORMAT")) g_format = env;
  // --config supplies defaults for format/seed/jobs; explicit flags override
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      json cfg = json::parse(read_file(argv[i + 1]));
      if (cfg.contains("format")) g_format = cfg["format"].get<std::string>();
      if (cfg.contains("seed")) g_seed = cfg["seed"].get<uint64_t>();
      if (cfg.contains("jobs")) g_jobs = cfg["jobs"].get<int>();
    }
  }

  CLI::App app{"raidlab: RAID layouts, erasure codes, reliability and queueing models"};
  app.fallthrough();
  app.add_option("--format", g_format, "output format: table, csv, json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--seed", g_seed, "random seed for stochastic commands");
  app.add_option("--jobs", g_jobs, "simulator parallelism")->check(CLI::PositiveNumber);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with default options");
  app.require_subcommand(1);

  // shared code-family options
  std::string family = "rdp";
  int opt_n = 7, opt_p = 5, opt_k1 = 3, opt_k2 = 3, opt_k = 3, opt_groups = 2,
      opt_globals = 2, opt_r = 3, opt_rows = 4, opt_cols = 7, opt_s = 2,
      opt_stripes = 1;
  size_t opt_block = 16;
  auto add_family_opts = [&](CLI::App* cmd) {
    cmd->add_option("--family", family,
                    "raid5|rdp|xcode|hvpc|lrc|azure-lrc|sd|lsi|sspiral");
    cmd->add_option("--n", opt_n, "disks / columns");
    cmd->add_option("--p", opt_p, "RDP prime");
    cmd->add_option("--k1", opt_k1, "HVPC data rows");
    cmd->add_option("--k2", opt_k2, "HVPC data columns");
    cmd->add_option("--k", opt_k, "data cells (LRC: per group)");
    cmd->add_option("--groups", opt_groups, "LRC local groups");
    cmd->add_option("--globals", opt_globals, "LRC global parities");
    cmd->add_option("--r", opt_r, "azure-lrc group size");
    cmd->add_option("--rows", opt_rows, "grid rows");
    cmd->add_option("--cols", opt_cols, "grid columns");
    cmd->add_option("--s", opt_s, "SD global parities");
    cmd->add_option("--stripes", opt_stripes, "raid5 stripes");
    cmd->add_option("--block", opt_block, "block length in bytes");
  };

  // ------------------------------------------------------------ code
  auto* code = app.add_subcommand("code", "erasure-code constructions");

  auto* code_encode = code->add_subcommand("encode", "build a layout and encode");
  add_family_opts(code_encode);
  std::string out_path;
  code_encode->add_option("--out", out_path, "write layout JSON to a file");
  code_encode->callback([&] {
    LayoutHandle h;
    build_layout(code_family_spec(family, opt_n, opt_p, opt_k1, opt_k2, opt_k,
                                  opt_groups, opt_globals, opt_r, opt_rows,
                                  opt_cols, opt_s, opt_stripes),
                 h);
    char* rep = nullptr;
    json selftest = call_json(rl_layout_selftest(h.ptr, "", opt_block, g_seed, &rep), &rep);
    char* lj = nullptr;
    check(rl_layout_to_json(h.ptr, &lj));
    std::string layout_json = take_string(lj);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << layout_json << "\n";
    }
    if (g_format == "json" && out_path.empty()) {
      std::cout << layout_json << "\n";
      return;
    }
    Table t;
    t.headers = {"family", "xor_ops", "parity_consistent"};
    t.add_row({family, std::to_string(selftest["xor_ops"].get<long long>()),
               selftest["parity_consistent"].get<bool>() ? "true" : "false"});
    t.print();
  });

  auto* code_decode = code->add_subcommand("decode", "erase and decode a random stripe");
  add_family_opts(code_decode);
  std::string erase_cols, erase_cells;
  code_decode->add_option("--erase-cols", erase_cols, "comma-separated columns");
  code_decode->add_option("--erase-cells", erase_cells, "row:col,row:col cells");
  code_decode->callback([&] {
    LayoutHandle h;
    build_layout(code_family_spec(family, opt_n, opt_p, opt_k1, opt_k2, opt_k,
                                  opt_groups, opt_globals, opt_r, opt_rows,
                                  opt_cols, opt_s, opt_stripes),
                 h);
    char* rep = nullptr;
    json selftest = call_json(rl_layout_selftest(h.ptr, erasure_json(erase_cols, erase_cells).c_str(),
                           opt_block, g_seed, &rep), &rep);
    Table t;
    t.headers = {"recovered", "stuck_cells", "xor_ops"};
    t.add_row({selftest["recovered"].get<bool>() ? "true" : "false",
               std::to_string(selftest["stuck"].size()),
               std::to_string(selftest["xor_ops"].get<long long>())});
    t.print();
  });

  auto* code_check = code->add_subcommand("check", "rank-test an erasure pattern");
  add_family_opts(code_check);
  std::string layout_path;
  code_check->add_option("--layout", layout_path, "layout JSON file");
  code_check->add_option("--erase-cols", erase_cols, "comma-separated columns");
  code_check->add_option("--erase-cells", erase_cells, "row:col cells");
  code_check->callback([&] {
    LayoutHandle h;
    if (!layout_path.empty())
      check(rl_layout_from_json(read_file(layout_path).c_str(), &h.ptr));
    else
      build_layout(code_family_spec(family, opt_n, opt_p, opt_k1, opt_k2, opt_k,
                                    opt_groups, opt_globals, opt_r, opt_rows,
                                    opt_cols, opt_s, opt_stripes),
                   h);
    int recoverable = 0;
    check(rl_layout_recoverable(
        h.ptr, erasure_json(erase_cols, erase_cells).c_str(), &recoverable));
    Table t;
    t.headers = {"recoverable"};
    t.add_row({recoverable ? "true" : "false"});
    t.print();
  });

  auto* code_metrics = code->add_subcommand("metrics", "repair-cost metrics");
  add_family_opts(code_metrics);
  code_metrics->callback([&] {
    LayoutHandle h;
    build_layout(code_family_spec(family, opt_n, opt_p, opt_k1, opt_k2, opt_k,
                                  opt_groups, opt_globals, opt_r, opt_rows,
                                  opt_cols, opt_s, opt_stripes),
                 h);
    char* rep = nullptr;
    json m = call_json(rl_layout_repair_metrics(h.ptr, &rep), &rep);
    Table t;
    t.headers = {"arc", "nrc", "drc", "adrc", "arc2"};
    t.note = "average / normalized / degraded-read repair costs";
    t.add_row({fmt(m["arc"]["value"].get<double>()),
               fmt(m["nrc"]["value"].get<double>()),
               fmt(m["drc"]["value"].get<double>()),
               fmt(m["adrc"]["value"].get<double>()),
               m.contains("arc2") ? fmt(m["arc2"]["value"].get<double>()) : "-"});
    t.print();
  });

  auto* code_pmds = code->add_subcommand("pmds", "PMDS/SD classification");
  add_family_opts(code_pmds);
  int pmds_m = 1;
  code_pmds->add_option("--m", pmds_m, "erasures per row");
  code_pmds->callback([&] {
    LayoutHandle h;
    build_layout(code_family_spec("sd", opt_n, opt_p, opt_k1, opt_k2, opt_k,
                                  opt_groups, opt_globals, opt_r, opt_rows,
                                  opt_cols, opt_s, opt_stripes),
                 h);
    char* rep = nullptr;
    json m = call_json(rl_layout_pmds_check(h.ptr, pmds_m, opt_s, &rep), &rep);
    Table t;
    t.headers = {"class", "sd", "pmds", "sd_patterns", "pmds_patterns"};
    t.add_row({m["class"].get<std::string>(), m["sd"].get<bool>() ? "true" : "false",
               m["pmds"].get<bool>() ? "true" : "false",
               std::to_string(m["sd_patterns"].get<long long>()),
               std::to_string(m["pmds_patterns"].get<long long>())});
    t.print();
  });

  auto* code_plan = code->add_subcommand("rebuild-plan", "x-code single-disk plan");
  add_family_opts(code_plan);
  int failed_col = 0;
  code_plan->add_option("--col", failed_col, "failed column");
  code_plan->callback([&] {
    LayoutHandle h;
    build_layout(json{{"family", "xcode"}, {"n", opt_n}}, h);
    char* rep = nullptr;
    json m = call_json(rl_xcode_rebuild_plan(h.ptr, failed_col, &rep), &rep);
    Table t;
    t.headers = {"col", "cost", "naive_all_p", "choices"};
    t.add_row({std::to_string(failed_col), std::to_string(m["cost"].get<long long>()),
               std::to_string(m["naive_all_p_cost"].get<long long>()),
               m["choices"].get<std::string>()});
    t.print();
  });

  auto* code_fraction = code->add_subcommand("fraction", "decodable-pattern fraction");
  add_family_opts(code_fraction);
  int failures = 4;
  code_fraction->add_option("--failures", failures, "erasure count");
  code_fraction->callback([&] {
    LayoutHandle h;
    build_layout(code_family_spec(family, opt_n, opt_p, opt_k1, opt_k2, opt_k,
                                  opt_groups, opt_globals, opt_r, opt_rows,
                                  opt_cols, opt_s, opt_stripes),
                 h);
    char* rep = nullptr;
    json m = call_json(rl_layout_decodable_fraction(h.ptr, failures, &rep), &rep);
    Table t;
    t.headers = {"failures", "decodable", "total", "fraction"};
    t.add_row({std::to_string(failures), std::to_string(m["decodable"].get<long long>()),
               std::to_string(m["total"].get<long long>()),
               fmt(m["fraction"].get<double>())});
    t.print();
  });

  auto* code_xorbas = code->add_subcommand("xorbas", "implied local parity identity");
  code_xorbas->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_xorbas_check(32, g_seed, &rep), &rep);
    Table t;
    t.headers = {"residual_zero", "overhead_without", "overhead_with"};
    t.note = "S1 + S2 + S3 = 0 so the third local parity is implied";
    t.add_row({m["residual_zero"].get<bool>() ? "true" : "false",
               fmt(m["overhead_without_implied"].get<double>()),
               fmt(m["overhead_with_implied"].get<double>())});
    t.print();
  });

  auto* code_hamming = code->add_subcommand("hamming", "locate the erroneous bit");
  std::string syndrome = "";
  code_hamming->add_option("--syndrome", syndrome, "failing parity positions");
  code_hamming->callback([&] {
    auto positions = parse_int_list(syndrome);
    int out = -1;
    check(rl_hamming_locate(positions.data(), positions.size(), &out));
    Table t;
    t.headers = {"bit_in_error"};
    t.add_row({out < 0 ? "none" : std::to_string(out)});
    t.print();
  });

  // ------------------------------------------------------------ rel
  auto* rel = app.add_subcommand("rel", "reliability models");

  auto* rel_afr = rel->add_subcommand("afr", "annual failure rate from MTTF");
  double mttf = 1e6, mttr = 10.0;
  rel_afr->add_option("--mttf", mttf, "hours")->required();
  rel_afr->callback([&] {
    double exact = 0, approx = 0;
    check(rl_afr_from_mttf(mttf, &exact, &approx));
    Table t;
    t.headers = {"mttf_hours", "afr_exact", "afr_approx"};
    t.add_row({fmt(mttf), fmt(exact), fmt(approx)});
    t.print();
  });

  auto* rel_kofn = rel->add_subcommand("kofn", "no-repair reliability");
  int kn = 10, kk = 1;
  double kr = 0.9;
  rel_kofn->add_option("--n", kn);
  rel_kofn->add_option("--k", kk, "tolerated failures");
  rel_kofn->add_option("--r", kr, "device reliability");
  rel_kofn->callback([&] {
    double out = 0;
    check(rl_kofn_no_repair(kn, kk, kr, &out));
    Table t;
    t.headers = {"n", "k", "r", "reliability"};
    t.add_row({std::to_string(kn), std::to_string(kk), fmt(kr), fmt(out)});
    t.print();
  });

  auto* rel_mttdl = rel->add_subcommand("mttdl", "closed-form MTTDL");
  std::string method = "raid5";
  int mg = 0, mk = 1, mn = 10;
  rel_mttdl->add_option("--method", method, "raid5|chen|angus");
  rel_mttdl->add_option("--n", mn);
  rel_mttdl->add_option("--g", mg, "parity group size (chen)");
  rel_mttdl->add_option("--k", mk, "tolerated failures");
  rel_mttdl->add_option("--mttf", mttf);
  rel_mttdl->add_option("--mttr", mttr);
  rel_mttdl->callback([&] {
    double out = 0;
    check(rl_mttdl_closed_form(method.c_str(), mn, mg, mk, mttf, mttr, &out));
    Table t;
    t.headers = {"method", "n", "k", "mttdl_hours"};
    t.add_row({method, std::to_string(mn), std::to_string(mk), fmt(out)});
    t.print();
  });

  auto* rel_transient = rel->add_subcommand("transient", "RAID5 reliability at t");
  double tr_t = 1000.0;
  int tr_n = 9;
  rel_transient->add_option("--n", tr_n, "data disks");
  rel_transient->add_option("--mttf", mttf);
  rel_transient->add_option("--mttr", mttr);
  rel_transient->add_option("--t", tr_t, "hours");
  rel_transient->callback([&] {
    double out = 0;
    check(rl_raid5_transient(tr_n, mttf, mttr, tr_t, &out));
    Table t;
    t.headers = {"t_hours", "reliability"};
    t.add_row({fmt(tr_t), fmt(out)});
    t.print();
  });

  auto* rel_validate = rel->add_subcommand(
      "validate-chen-angus", "closed forms vs simulation (Resch rows)");
  std::string rows_spec = "";
  std::string preset = "";
  uint64_t reps = 50000;
  double va_mttr = 1.0;
  rel_validate->add_option("--preset", preset, "resch = published rows");
  rel_validate->add_option("--rows", rows_spec, "n:k:mttf,...");
  rel_validate->add_option("--mttr", va_mttr);
  rel_validate->add_option("--reps", reps);
  rel_validate->callback([&] {
    struct Row {
      int n, k;
      double mttf;
    };
    std::vector<Row> rows;
    if (preset == "resch" || (preset.empty() && rows_spec.empty()))
      rows = {{10, 10, 2000}, {10, 9, 2000}, {10, 8, 1500}};
    if (!rows_spec.empty()) {
      std::stringstream ss(rows_spec);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto c1 = item.find(':');
        auto c2 = item.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
          std::cerr << "error: rows use n:k:mttf syntax\n";
          std::exit(2);
        }
        rows.push_back({std::stoi(item.substr(0, c1)),
                        std::stoi(item.substr(c1 + 1, c2 - c1 - 1)),
                        std::stod(item.substr(c2 + 1))});
      }
    }
    Table t;
    t.headers = {"n", "k",      "mttf",  "simul",  "ci95_lo", "ci95_hi",
                 "chen", "sim/chen", "angus", "sim/angus"};
    t.note = "k-of-n MTTDL validation; simulation uses proportional repair";
    for (const auto& row : rows) {
      json cfg = {{"kind", "kofn"},   {"n", row.n},          {"k", row.k},
                  {"mttf", row.mttf}, {"mttr", va_mttr},     {"seed", g_seed},
                  {"replications", reps}, {"policy", "proportional"}};
      char* rep = nullptr;
      json sim = call_json(rl_sim_run(cfg.dump().c_str(), g_jobs, 0, &rep), &rep);
      double chen = 0, angus = 0;
      check(rl_mttdl_closed_form("chen", row.n, row.n, row.n - row.k, row.mttf,
                                 va_mttr, &chen));
      check(rl_mttdl_closed_form("angus", row.n, 0, row.n - row.k, row.mttf,
                                 va_mttr, &angus));
      double mean = sim["mean"].get<double>();
      t.add_row({std::to_string(row.n), std::to_string(row.k), fmt(row.mttf),
                 fmt(mean), fmt(sim["ci95"][0].get<double>()),
                 fmt(sim["ci95"][1].get<double>()), fmt(chen), fmt(mean / chen),
                 fmt(angus), fmt(mean / angus)});
    }
    t.print();
  });

  auto* rel_idr = rel->add_subcommand("idr", "segment/rebuild failure tables");
  double idr_capacity = 300e9;
  int idr_n = 8;
  rel_idr->add_option("--preset", preset, "idr-sata = published parameters");
  rel_idr->add_option("--n", idr_n, "disks");
  rel_idr->add_option("--capacity", idr_capacity, "bytes per disk");
  rel_idr->callback([&] {
    Table t;
    t.headers = {"scheme", "model", "pseg", "puf"};
    t.note = "l=128 sectors, m=8, P_bit=1e-14, 512 B sectors";
    for (std::string scheme : {"none", "rs", "spc", "ipc"})
      for (std::string model : {"independent", "correlated"}) {
        double ps = 0, pf = 0;
        check(rl_pseg(scheme.c_str(), model.c_str(), "{}", &ps));
        check(rl_puf(idr_n, 1, ps, "{}", idr_capacity, &pf));
        t.add_row({scheme, model, fmt(ps), fmt(pf)});
      }
    t.print();
  });

  auto* rel_shortcut = rel->add_subcommand("shortcut", "leading unreliability terms");
  int sc_n = 8, sc_c = 2;
  rel_shortcut->add_option("--n", sc_n);
  rel_shortcut->add_option("--c", sc_c, "ID clusters");
  rel_shortcut->callback([&] {
    Table t;
    t.headers = {"system", "coeff", "power", "norepair_mttdl"};
    t.note = "leading term of 1-R and the exact no-repair MTTDL (x MTTF)";
    auto add_named = [&](const std::string& system, const char* poly_system) {
      char* term = nullptr;
      json tj = call_json(rl_shortcut_named(system.c_str(), sc_n, sc_c, &term), &term);
      std::string mttdl = "-";
      if (poly_system) {
        json spec = {{"system", poly_system}, {"n", sc_n}, {"c", sc_c}};
        if (std::string(poly_system) == "kofn") return;
        char* poly = nullptr;
        json pj = call_json(rl_enumerate_poly(spec.dump().c_str(), &poly), &poly);
        char* frac = nullptr;
        json fj = call_json(rl_poly_norepair_mttdl(pj.dump().c_str(), &frac), &frac);
        mttdl = std::to_string(fj["num"].get<long long>()) + "/" +
                std::to_string(fj["den"].get<long long>());
      }
      t.add_row({system, std::to_string(tj["coeff"]["num"].get<long long>()) + "/" +
                             std::to_string(tj["coeff"]["den"].get<long long>()),
                 std::to_string(tj["power"].get<int>()), mttdl});
    };
    add_named("raid5", nullptr);
    add_named("raid6", nullptr);
    add_named("bm", "bm");
    add_named("cd", "cd");
    add_named("grd", "grd");
    add_named("id", "id");
    add_named("lsi", "lsi");
    add_named("sspiral", "sspiral");
    t.print();
  });

  auto* rel_ctmc = rel->add_subcommand("ctmc", "CTMC absorption and transients");
  std::string ctmc_file, ctmc_build, ctmc_op = "mtta";
  double ctmc_t = 1000.0, ctmc_tol = 1e-10;
  rel_ctmc->add_option("--file", ctmc_file, "model JSON file");
  rel_ctmc->add_option("--build", ctmc_build, "builder spec JSON");
  rel_ctmc->add_option("--op", ctmc_op, "mtta|transient");
  rel_ctmc->add_option("--t", ctmc_t);
  rel_ctmc->add_option("--tol", ctmc_tol);
  rel_ctmc->callback([&] {
    rl_ctmc* model = nullptr;
    if (!ctmc_file.empty())
      check(rl_ctmc_from_json(read_file(ctmc_file).c_str(), &model));
    else if (!ctmc_build.empty())
      check(rl_ctmc_build(ctmc_build.c_str(), &model));
    else {
      std::cerr << "error: need --file or --build\n";
      std::exit(2);
    }
    if (ctmc_op == "mtta") {
      char* rep = nullptr;
      json m = call_json(rl_ctmc_mtta(model, &rep), &rep);
      Table t;
      t.headers = {"mttdl_hours"};
      std::vector<std::string> row = {fmt(m["hours"].get<double>())};
      for (auto& [state, prob] : m["absorb_prob"].items()) {
        t.headers.push_back("p_" + state);
        row.push_back(fmt(prob.get<double>()));
      }
      t.add_row(row);
      t.print();
    } else {
      char* rep = nullptr;
      json m = call_json(rl_ctmc_transient(model, ctmc_t, ctmc_tol, &rep), &rep);
      Table t;
      t.headers = {"t_hours", "probs"};
      t.add_row({fmt(ctmc_t), m["probs"].dump()});
      t.print();
    }
    rl_ctmc_free(model);
  });

  auto* rel_scrub = rel->add_subcommand("scrub", "scrubbing error probabilities");
  double pe = 1e-5, hrate = 1.0, ts = 24.0;
  rel_scrub->add_option("--pe", pe);
  rel_scrub->add_option("--rate", hrate, "access rate per hour");
  rel_scrub->add_option("--ts", ts, "scrub period hours");
  rel_scrub->callback([&] {
    double det = 0, exp = 0;
    check(rl_scrub_error_prob(pe, hrate, ts, &det, &exp));
    Table t;
    t.headers = {"deterministic", "exponential"};
    t.add_row({fmt(det), fmt(exp)});
    t.print();
  });

  auto* rel_mirror = rel->add_subcommand("mirror-poly", "mirrored-array polynomial");
  std::string org = "bm";
  int mp_n = 8, mp_c = 2;
  rel_mirror->add_option("--org", org, "bm|id|grd|cd");
  rel_mirror->add_option("--n", mp_n);
  rel_mirror->add_option("--c", mp_c);
  rel_mirror->callback([&] {
    char* poly = nullptr;
    json pj = call_json(rl_mirror_poly(org.c_str(), mp_n, mp_c, &poly), &poly);
    char* term = nullptr;
    json tj = call_json(rl_shortcut_from_poly(pj.dump().c_str(), &term), &term);
    Table t;
    t.headers = {"org", "coeffs", "lead_coeff", "lead_power"};
    t.add_row({org, pj["coeffs"].dump(),
               fmt(tj["coeff"]["value"].get<double>()),
               std::to_string(tj["power"].get<int>())});
    t.print();
  });

  auto* rel_placement = rel->add_subcommand("placement", "clustered vs declustered");
  std::string pl_scheme = "clustered";
  int pl_n = 100, pl_r = 2;
  double pl_c = 1e13, pl_b = 1e8, pl_delta = 1e-6;
  rel_placement->add_option("--scheme", pl_scheme, "clustered|declustered");
  rel_placement->add_option("--n", pl_n);
  rel_placement->add_option("--c", pl_c, "bytes per device");
  rel_placement->add_option("--r", pl_r, "replication");
  rel_placement->add_option("--b", pl_b, "rebuild bandwidth bytes/hour");
  rel_placement->add_option("--delta", pl_delta, "failure rate per hour");
  rel_placement->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_placement_metrics(pl_scheme.c_str(), pl_n, pl_c, pl_r, pl_b, pl_delta, &rep), &rep);
    Table t;
    t.headers = {"scheme", "mttdl_hours", "eafdl_per_year"};
    t.add_row({pl_scheme, fmt(m["mttdl_hours"].get<double>()),
               fmt(m["eafdl_per_year"].get<double>())});
    t.print();
  });

  auto* rel_multi = rel->add_subcommand("multilevel", "RAID1/5 vs RAID5/1");
  std::string ml_kind = "raid51";
  int ml_n = 8;
  rel_multi->add_option("--kind", ml_kind, "raid15|raid51");
  rel_multi->add_option("--n", ml_n, "arrays (raid15) or pairs per side (raid51)");
  rel_multi->add_option("--mttf", mttf);
  rel_multi->add_option("--mttr", mttr);
  rel_multi->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_multilevel_mttdl(ml_kind.c_str(), ml_n, mttf, mttr, &rep), &rep);
    Table t;
    t.headers = {"kind", "mttdl_hours"};
    t.add_row({ml_kind, fmt(m["mttdl_hours"].get<double>())});
    t.print();
  });

  auto* rel_diffraid = rel->add_subcommand("diffraid", "SSD aging ratios");
  std::string pct = "70,10,10,10";
  rel_diffraid->add_option("--pct", pct, "parity percentages");
  rel_diffraid->callback([&] {
    auto values = parse_int_list(pct);
    std::vector<double> dvals(values.begin(), values.end());
    char* rep = nullptr;
    json m = call_json(
        rl_diffraid_aging(dvals.data(), int(dvals.size()), &rep), &rep);
    Table t;
    t.headers = {"device"};
    for (size_t j = 0; j < dvals.size(); ++j)
      t.headers.push_back("a_i" + std::to_string(j + 1));
    for (size_t i = 0; i < dvals.size(); ++i) {
      std::vector<std::string> row = {std::to_string(i + 1)};
      for (size_t j = 0; j < dvals.size(); ++j)
        row.push_back(fmt(m[i][j].get<double>()));
      t.add_row(row);
    }
    t.print();
  });

  auto* rel_hda = rel->add_subcommand("hda", "vertical vs horizontal partitioning");
  double hda_eps = 0.01;
  rel_hda->add_option("--eps", hda_eps, "device unreliability");
  rel_hda->callback([&] {
    double c1 = 0, c2 = 0;
    check(rl_hda_compare(hda_eps, &c1, &c2));
    Table t;
    t.headers = {"epsilon", "r_c1", "r_c2"};
    t.add_row({fmt(hda_eps), fmt(c1), fmt(c2)});
    t.print();
  });

  // ------------------------------------------------------------ queue
  auto* queue = app.add_subcommand("queue", "queueing and rebuild analysis");

  auto* q_mm1 = queue->add_subcommand("mm1", "M/M/1 response time");
  double lambda = 0.5, xbar = 1.0;
  q_mm1->add_option("--lambda", lambda);
  q_mm1->add_option("--xbar", xbar);
  q_mm1->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_mm1(lambda, xbar, &rep), &rep);
    Table t;
    t.headers = {"rho", "waiting", "response"};
    t.add_row({fmt(m["rho"].get<double>()), fmt(m["waiting"].get<double>()),
               fmt(m["response"].get<double>())});
    t.print();
  });

  auto* q_mmm = queue->add_subcommand("mmm", "M/M/m shared queue");
  int servers = 2;
  q_mmm->add_option("--lambda", lambda);
  q_mmm->add_option("--xbar", xbar);
  q_mmm->add_option("--m", servers);
  q_mmm->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_mmm(lambda, xbar, servers, &rep), &rep);
    Table t;
    t.headers = {"rho", "erlang_c", "waiting", "response"};
    t.add_row({fmt(m["rho"].get<double>()), fmt(m["erlang_c"].get<double>()),
               fmt(m["waiting"].get<double>()), fmt(m["response"].get<double>())});
    t.print();
  });

  auto* q_mg1 = queue->add_subcommand("mg1", "M/G/1 Pollaczek-Khinchine");
  double qm1 = 1.0, qm2 = 2.0, qm3 = 6.0;
  q_mg1->add_option("--lambda", lambda);
  q_mg1->add_option("--m1", qm1);
  q_mg1->add_option("--m2", qm2);
  q_mg1->add_option("--m3", qm3);
  q_mg1->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_mg1(lambda, qm1, qm2, qm3, &rep), &rep);
    Table t;
    t.headers = {"rho", "waiting", "response", "response_cv2"};
    t.add_row({fmt(m["rho"].get<double>()), fmt(m["waiting"].get<double>()),
               fmt(m["response"].get<double>()),
               fmt(m["response_cv2"].get<double>())});
    t.print();
  });

  auto* q_fj = queue->add_subcommand("fj", "fork/join response approximations");
  int fj_n = 2;
  double fj_rho = 0.0, fj_r = -1.0, fj_sigma = -1.0;
  std::string fj_method = "exact2";
  bool fj_calibrated = false;
  q_fj->add_option("--method", fj_method, "exact2|nelson|max_exp|max_evd|max_erlang");
  q_fj->add_option("--n", fj_n);
  q_fj->add_option("--rho", fj_rho);
  q_fj->add_option("--r", fj_r, "branch mean response (default M/M/1 1/(1-rho))");
  q_fj->add_option("--sigma", fj_sigma, "branch response deviation (default = R)");
  q_fj->add_flag("--calibrated", fj_calibrated, "divide the EVD term by 1.27");
  q_fj->callback([&] {
    double r = fj_r > 0 ? fj_r : 1.0 / (1.0 - fj_rho);
    double sigma = fj_sigma > 0 ? fj_sigma : r;
    double out = 0;
    check(rl_fj_response(fj_n, fj_rho, r, sigma, fj_method.c_str(),
                         fj_calibrated ? 1 : 0, &out));
    Table t;
    t.headers = {"method", "n", "rho", "response"};
    t.add_row({fj_method, std::to_string(fj_n), fmt(fj_rho), fmt(out)});
    t.print();
  });

  auto* q_percentile = queue->add_subcommand("percentile", "response percentiles");
  double q_r = 10.0, q_p = 0.9;
  q_percentile->add_option("--r", q_r, "mean response");
  q_percentile->add_option("--p", q_p);
  q_percentile->add_option("--xbar", xbar);
  q_percentile->callback([&] {
    double rp = 0, lp = 0;
    check(rl_percentile(q_r, q_p, xbar, &rp, &lp));
    Table t;
    t.headers = {"p", "response_p", "lambda_p"};
    t.add_row({fmt(q_p), fmt(rp), fmt(lp)});
    t.print();
  });

  auto* q_gim1 = queue->add_subcommand("gim1", "round-robin GI/M/1 (Erlang-2)");
  double gim_mu = 1.0;
  q_gim1->add_option("--lambda", lambda);
  q_gim1->add_option("--mu", gim_mu);
  q_gim1->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_gim1_erlang2(lambda, gim_mu, &rep), &rep);
    Table t;
    t.headers = {"rho", "sigma", "waiting"};
    t.add_row({fmt(m["rho"].get<double>()), fmt(m["sigma"].get<double>()),
               fmt(m["waiting"].get<double>())});
    t.print();
  });

  auto* q_service = queue->add_subcommand("service-moments", "disk service time");
  std::string geometry_path;
  double q_fr = 1.0;
  std::string q_mode = "raid5";
  q_service->add_option("--geometry", geometry_path, "geometry JSON file");
  q_service->add_option("--fr", q_fr, "read fraction");
  q_service->add_option("--mode", q_mode, "plain|raid5");
  q_service->callback([&] {
    std::string geometry = geometry_path.empty() ? "{}" : read_file(geometry_path);
    json workload = {{"f_r", q_fr}, {"f_w", 1.0 - q_fr}};
    char* rep = nullptr;
    json m = call_json(rl_disk_service_moments(geometry.c_str(),
                                               workload.dump().c_str(),
                                               q_mode.c_str(), &rep), &rep);
    Table t;
    t.headers = {"f_sr", "m1_ms", "m2", "m3", "variance"};
    t.add_row({fmt(m["f_sr"].get<double>()), fmt(m["disk"]["m1"].get<double>()),
               fmt(m["disk"]["m2"].get<double>()), fmt(m["disk"]["m3"].get<double>()),
               fmt(m["disk"]["variance"].get<double>())});
    t.print();
  });

  auto* q_degraded = queue->add_subcommand("degraded", "degraded-mode load");
  int dg_n = 10, dg_g = 10;
  double dg_fr = 0.6, dg_read = 1.0, dg_write = 1.0, dg_rmw = 1.5;
  q_degraded->add_option("--n", dg_n);
  q_degraded->add_option("--g", dg_g);
  q_degraded->add_option("--fr", dg_fr);
  q_degraded->add_option("--read", dg_read);
  q_degraded->add_option("--write", dg_write);
  q_degraded->add_option("--rmw", dg_rmw);
  q_degraded->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_degraded_load(dg_n, dg_g, dg_fr, dg_read, dg_write, dg_rmw, &rep), &rep);
    Table t;
    t.headers = {"load_increase", "rho_read_per_lambda", "rho_write_per_lambda"};
    t.add_row({fmt(m["load_increase"].get<double>()),
               fmt(m["rho_read_per_lambda"].get<double>()),
               fmt(m["rho_write_per_lambda"].get<double>())});
    t.print();
  });

  auto* q_vsm = queue->add_subcommand("vsm", "vacationing-server rebuild curves");
  double vsm_m1 = 5.0, vsm_m2 = -1.0, vsm_m3 = -1.0, vsm_seek = 3.0, vsm_tr = 4.0;
  double vsm_tracks = 50000, vsm_rho_max = 0.45;
  int vsm_steps = 4, vsm_points = 5;
  q_vsm->add_option("--m1", vsm_m1, "mean service ms");
  q_vsm->add_option("--m2", vsm_m2, "second moment (default exponential)");
  q_vsm->add_option("--m3", vsm_m3, "third moment (default exponential)");
  q_vsm->add_option("--seek", vsm_seek, "rebuild seek ms");
  q_vsm->add_option("--tr", vsm_tr, "track revolution ms");
  q_vsm->add_option("--tracks", vsm_tracks);
  q_vsm->add_option("--steps", vsm_steps, "redirection load steps");
  q_vsm->add_option("--rho-max", vsm_rho_max);
  q_vsm->add_option("--points", vsm_points);
  q_vsm->callback([&] {
    Table t;
    t.headers = {"rho", "w_mg1", "w_vsm", "n_track", "t_cycle", "t_rebuild"};
    t.note = "rebuild read time under the vacationing server model";
    double m2 = vsm_m2 > 0 ? vsm_m2 : 2.0 * vsm_m1 * vsm_m1;
    double m3 = vsm_m3 > 0 ? vsm_m3 : 6.0 * vsm_m1 * vsm_m1 * vsm_m1;
    for (int i = 1; i <= vsm_points; ++i) {
      double rho = vsm_rho_max * i / vsm_points;
      json params = {
          {"lambda", rho / vsm_m1},
          {"service", {{"m1", vsm_m1}, {"m2", m2}, {"m3", m3}}},
          {"vacation",
           {{"type1",
             {{"kind", "conv"},
              {"parts", json::array({{{"kind", "det"}, {"value", vsm_seek}},
                                     {{"kind", "det"}, {"value", vsm_tr}}})}}},
            {"type2", {{"kind", "det"}, {"value", vsm_tr}}}}},
          {"n_tracks", vsm_tracks},
          {"steps", vsm_steps}};
      char* rep = nullptr;
      json m = call_json(rl_vsm_rebuild(params.dump().c_str(), &rep), &rep);
      t.add_row({fmt(rho), fmt(m["w_mg1"].get<double>()), fmt(m["w_vsm"].get<double>()),
                 fmt(m["n_track"].get<double>()), fmt(m["t_cycle"].get<double>()),
                 fmt(m["t_rebuild"].get<double>())});
    }
    t.print();
  });

  auto* q_pcm = queue->add_subcommand("pcm", "VSM vs PCM interruption");
  double pcm_xru = 4.0, pcm_wru = 2.0;
  q_pcm->add_option("--lambda", lambda);
  q_pcm->add_option("--xru", pcm_xru);
  q_pcm->add_option("--wru", pcm_wru);
  q_pcm->callback([&] {
    double pv = 0, pp = 0;
    check(rl_pcm_vs_vsm(lambda, pcm_xru, pcm_wru, &pv, &pp));
    Table t;
    t.headers = {"p_vsm", "p_pcm"};
    t.add_row({fmt(pv), fmt(pp)});
    t.print();
  });

  auto* q_misc = queue->add_subcommand("misc", "assorted closed forms");
  std::string misc_kind = "bso";
  double misc_a = 0.6, misc_b = 0.0;
  q_misc->add_option("--kind", misc_kind, "bso|satf|seek-minmax|penalty|ioe");
  q_misc->add_option("--a", misc_a, "first argument");
  q_misc->add_option("--b", misc_b, "second argument");
  q_misc->callback([&] {
    Table t;
    if (misc_kind == "bso") {
      double out = 0;
      check(rl_lfs_bso(misc_a, &out));
      t.headers = {"aso", "bso"};
      t.add_row({fmt(misc_a), fmt(out)});
    } else if (misc_kind == "satf") {
      double out = 0;
      check(rl_satf_service_time(misc_a, misc_b, &out));
      t.headers = {"x_fcfs", "queue", "x_satf"};
      t.add_row({fmt(misc_a), fmt(misc_b), fmt(out)});
    } else if (misc_kind == "seek-minmax") {
      double mn = 0, mx = 0;
      check(rl_seek_min_max(int(misc_a), misc_b, &mn, &mx));
      t.headers = {"k", "cylinders", "min", "max"};
      t.add_row({fmt(misc_a), fmt(misc_b), fmt(mn), fmt(mx)});
    } else if (misc_kind == "penalty") {
      double out = 0;
      check(rl_delayed_encoding_penalty(misc_a, misc_b, &out));
      t.headers = {"phi", "r", "penalty"};
      t.add_row({fmt(misc_a), fmt(misc_b), fmt(out)});
    } else if (misc_kind == "ioe") {
      double out = 0;
      check(rl_ioe(misc_a, &out));
      t.headers = {"kb", "ioe"};
      t.add_row({fmt(misc_a), fmt(out)});
    } else {
      std::cerr << "error: unknown misc kind\n";
      std::exit(2);
    }
    t.print();
  });

  auto* q_routing = queue->add_subcommand("routing", "optimal M/G/1 stream split");
  std::string devices_spec = "1:2;1:2";
  q_routing->add_option("--devices", devices_spec, "m1:m2[:m3];... per device");
  q_routing->add_option("--lambda", lambda);
  q_routing->callback([&] {
    json devices = json::array();
    std::stringstream ss(devices_spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (item.empty()) continue;
      std::stringstream ds(item);
      std::string part;
      std::vector<double> vals;
      while (std::getline(ds, part, ':')) vals.push_back(std::stod(part));
      if (vals.size() < 2) {
        std::cerr << "error: devices use m1:m2[:m3]\n";
        std::exit(2);
      }
      devices.push_back({{"m1", vals[0]},
                         {"m2", vals[1]},
                         {"m3", vals.size() > 2 ? vals[2] : 0.0}});
    }
    char* rep = nullptr;
    json m = call_json(rl_optimal_routing(devices.dump().c_str(), lambda, &rep), &rep);
    Table t;
    t.headers = {"device", "rate"};
    for (size_t i = 0; i < m["rates"].size(); ++i)
      t.add_row({std::to_string(i), fmt(m["rates"][i].get<double>())});
    t.note = "mean response " + fmt(m["mean_response"].get<double>());
    t.print();
  });

  // ------------------------------------------------------------ layout
  auto* layout = app.add_subcommand("layout", "clustered placements and copysets");

  auto* l_gen = layout->add_subcommand("gen", "generate a clustered layout");
  std::string l_kind = "nrp";
  int l_n = 10, l_g = 4, l_rows = 4, l_cycles = 1;
  l_gen->add_option("--kind", l_kind, "nrp|shifted|bibd|bibd-complete|raid5|raid4");
  l_gen->add_option("--n", l_n);
  l_gen->add_option("--g", l_g);
  l_gen->add_option("--row-groups", l_rows);
  l_gen->add_option("--cycles", l_cycles);
  l_gen->add_option("--out", out_path, "write layout JSON to a file");
  std::string stripe_out;
  l_gen->add_option("--stripe-out", stripe_out,
                    "write the stripe-layout JSON (codes schema) to a file");
  l_gen->callback([&] {
    json spec = {{"kind", l_kind}, {"n", l_n},          {"g", l_g},
                 {"seed", g_seed}, {"row_groups", l_rows}, {"cycles", l_cycles},
                 {"rows", l_rows}};
    rl_clustered* h = nullptr;
    check(rl_clustered_build(spec.dump().c_str(), &h));
    char* lj = nullptr;
    check(rl_clustered_to_json(h, &lj));
    std::string text = take_string(lj);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      out << text << "\n";
    }
    if (!stripe_out.empty()) {
      char* sj = nullptr;
      check(rl_clustered_to_stripe_json(h, &sj));
      std::ofstream out(stripe_out);
      out << take_string(sj) << "\n";
    }
    char* props = nullptr;
    json pj = call_json(rl_clustered_properties(h, &props), &props);
    rl_clustered_free(h);
    if (g_format == "json" && out_path.empty()) {
      std::cout << text << "\n";
      return;
    }
    Table t;
    t.headers = {"kind", "single_failure_ok", "parity_spread", "alpha"};
    t.add_row({l_kind, pj["single_failure_ok"].get<bool>() ? "true" : "false",
               std::to_string(pj["parity_spread"].get<int>()),
               fmt(pj["alpha"].get<double>())});
    t.print();
  });

  auto* l_check = layout->add_subcommand("check", "layout property report");
  std::string l_file;
  l_check->add_option("--file", l_file, "clustered layout JSON")->required();
  l_check->callback([&] {
    rl_clustered* h = nullptr;
    check(rl_clustered_from_json(read_file(l_file).c_str(), &h));
    char* props = nullptr;
    json pj = call_json(rl_clustered_properties(h, &props), &props);
    rl_clustered_free(h);
    Table t;
    t.headers = {"property", "value"};
    t.add_row({"single_failure_ok", pj["single_failure_ok"].dump()});
    t.add_row({"parity_balanced", pj["parity_balanced"].dump()});
    t.add_row({"parity_spread", pj["parity_spread"].dump()});
    t.add_row({"rebuild_balanced", pj["rebuild_balanced"].dump()});
    t.add_row({"rebuild_max_min_ratio", fmt(pj["rebuild_max_min_ratio"].get<double>())});
    t.add_row({"large_write_contiguous", pj["large_write_contiguous"].dump()});
    t.add_row({"max_read_parallelism", pj["max_read_parallelism"].dump()});
    t.print();
  });

  auto* l_bibd = layout->add_subcommand("bibd-check", "validate a BIBD design");
  std::string bibd_file, bibd_complete;
  l_bibd->add_option("--file", bibd_file, "design JSON");
  l_bibd->add_option("--complete", bibd_complete, "n:k for the complete design");
  l_bibd->callback([&] {
    std::string spec;
    if (!bibd_file.empty())
      spec = read_file(bibd_file);
    else if (!bibd_complete.empty()) {
      auto colon = bibd_complete.find(':');
      json j = {{"complete",
                 {{"n", std::stoi(bibd_complete.substr(0, colon))},
                  {"k", std::stoi(bibd_complete.substr(colon + 1))}}}};
      spec = j.dump();
    } else {
      spec = "{\"builtin\":\"10-4\"}";
    }
    char* rep = nullptr;
    json m = call_json(rl_bibd_check(spec.c_str(), &rep), &rep);
    Table t;
    t.headers = {"n", "k", "b", "r", "lambda", "valid"};
    t.add_row({m["n"].dump(), m["k"].dump(), m["b"].dump(), m["r"].dump(),
               m["lambda"].dump(), m["valid"].get<bool>() ? "true" : "false"});
    for (const auto& v : m["violations"])
      std::cerr << "violation: " << v.get<std::string>() << "\n";
    t.print();
  });

  auto* l_copysets = layout->add_subcommand("copysets", "build a copyset plan");
  std::string cs_scheme = "permutation";
  int cs_n = 9, cs_r = 3, cs_p = 2, cs_s = 4, cs_failed = 3;
  std::string csv_out;
  l_copysets->add_option("--scheme", cs_scheme, "permutation|random");
  l_copysets->add_option("--n", cs_n);
  l_copysets->add_option("--r", cs_r);
  l_copysets->add_option("--p", cs_p, "permutations");
  l_copysets->add_option("--s", cs_s, "scatter width (random scheme)");
  l_copysets->add_option("--failed", cs_failed, "failures for exact P_DL");
  l_copysets->add_option("--csv-out", csv_out, "write one copyset per line");
  l_copysets->callback([&] {
    json spec = {{"scheme", cs_scheme}, {"n", cs_n}, {"r", cs_r},
                 {"p", cs_p},           {"s", cs_s}, {"seed", g_seed}};
    rl_copysets* plan = nullptr;
    check(rl_copysets_build(spec.dump().c_str(), &plan));
    char* info = nullptr;
    json ij = call_json(rl_copysets_info(plan, &info), &info);
    char* pdl = nullptr;
    json pj = call_json(rl_copysets_pdl_exact(plan, cs_failed, &pdl), &pdl);
    if (!csv_out.empty()) {
      char* csv = nullptr;
      check(rl_copysets_to_csv(plan, &csv));
      std::ofstream out(csv_out);
      out << take_string(csv);
    }
    rl_copysets_free(plan);
    Table t;
    t.headers = {"scheme", "copysets", "scatter_width", "failed", "p_dl"};
    t.add_row({cs_scheme, ij["copysets"].dump(), ij["scatter_width"].dump(),
               std::to_string(cs_failed),
               pj["num"].dump() + "/" + pj["den"].dump() + " = " +
                   fmt(pj["value"].get<double>())});
    t.print();
  });

  auto* l_mirror = layout->add_subcommand("mirror", "mirrored placement map");
  l_mirror->add_option("--org", org, "bm|id|grd|cd");
  l_mirror->add_option("--n", mp_n);
  l_mirror->add_option("--c", mp_c);
  l_mirror->callback([&] {
    char* rep = nullptr;
    json m = call_json(rl_mirror_map(org.c_str(), mp_n, mp_c, &rep), &rep);
    if (g_format == "json") {
      std::cout << m.dump() << "\n";
      return;
    }
    Table t;
    t.headers = {"failed_disk"};
    for (int d = 0; d < mp_n; ++d) t.headers.push_back("load_" + std::to_string(d));
    for (int failed = 0; failed < mp_n; ++failed) {
      std::vector<std::string> row = {std::to_string(failed)};
      for (const auto& load : m["surviving_load"][size_t(failed)])
        row.push_back(fmt(load.get<double>()));
      t.add_row(row);
    }
    t.print();
  });

  // ------------------------------------------------------------ sim
  auto* sim = app.add_subcommand("sim", "Monte Carlo reliability simulation");
  std::string samples_out;
  sim->add_option("--samples", samples_out, "write per-replication samples CSV");

  auto run_sim = [&](const json& cfg) {
    char* rep = nullptr;
    json m = call_json(rl_sim_run(cfg.dump().c_str(), g_jobs, samples_out.empty() ? 0 : 1, &rep), &rep);
    if (!samples_out.empty()) {
      std::ofstream out(samples_out);
      out << "replication,sample\n";
      for (size_t i = 0; i < m["samples"].size(); ++i)
        out << i << ',' << fmt(m["samples"][i].get<double>()) << "\n";
      m.erase("samples");
    }
    Table t;
    t.headers = {"mean", "ci95_lo", "ci95_hi", "std_error", "replications"};
    t.add_row({fmt(m["mean"].get<double>()), fmt(m["ci95"][0].get<double>()),
               fmt(m["ci95"][1].get<double>()), fmt(m["std_error"].get<double>()),
               m["replications"].dump()});
    t.print();
  };

  auto* s_hraid = sim->add_subcommand("hraid", "hierarchical RAID MTTDL");
  int sh_nodes = 4, sh_disks = 4, sh_k = 1, sh_l = 1;
  double sh_delta = 1e-4, sh_gamma = 1e-5;
  uint64_t sh_reps = 10000;
  s_hraid->add_option("--nodes", sh_nodes);
  s_hraid->add_option("--disks", sh_disks);
  s_hraid->add_option("--k", sh_k, "inter-node tolerance");
  s_hraid->add_option("--l", sh_l, "intra-node tolerance");
  s_hraid->add_option("--delta", sh_delta);
  s_hraid->add_option("--gamma", sh_gamma);
  s_hraid->add_option("--reps", sh_reps);
  s_hraid->callback([&] {
    run_sim(json{{"kind", "hraid"},
                 {"nodes", sh_nodes},
                 {"disks_per_node", sh_disks},
                 {"inter_k", sh_k},
                 {"intra_l", sh_l},
                 {"delta", sh_delta},
                 {"gamma", sh_gamma},
                 {"seed", g_seed},
                 {"replications", sh_reps}});
  });

  auto* s_kofn = sim->add_subcommand("kofn", "k-of-n failure/repair race");
  int sk_n = 10, sk_k = 9;
  double sk_mttf = 2000, sk_mttr = 1.0;
  std::string sk_policy = "proportional";
  bool sk_events = false;
  uint64_t sk_reps = 50000;
  s_kofn->add_option("--n", sk_n);
  s_kofn->add_option("--k", sk_k);
  s_kofn->add_option("--mttf", sk_mttf);
  s_kofn->add_option("--mttr", sk_mttr);
  s_kofn->add_option("--policy", sk_policy, "proportional|single");
  s_kofn->add_flag("--events", sk_events, "event-by-event race loop");
  s_kofn->add_option("--reps", sk_reps);
  s_kofn->callback([&] {
    run_sim(json{{"kind", sk_events ? "kofn-events" : "kofn"},
                 {"n", sk_n},
                 {"k", sk_k},
                 {"mttf", sk_mttf},
                 {"mttr", sk_mttr},
                 {"policy", sk_policy},
                 {"seed", g_seed},
                 {"replications", sk_reps}});
  });

  auto* s_copyset = sim->add_subcommand("copyset", "copyset data-loss probability");
  double sc_fail = 0.01;
  int sc_exact = 0;
  uint64_t sc_reps = 10000;
  s_copyset->add_option("--scheme", cs_scheme, "permutation|random");
  s_copyset->add_option("--n", cs_n);
  s_copyset->add_option("--r", cs_r);
  s_copyset->add_option("--p", cs_p);
  s_copyset->add_option("--s", cs_s);
  s_copyset->add_option("--fail-prob", sc_fail);
  s_copyset->add_option("--exact", sc_exact, "condition on exactly this many failures");
  s_copyset->add_option("--reps", sc_reps);
  s_copyset->callback([&] {
    run_sim(json{{"kind", "copyset"},
                 {"plan",
                  {{"scheme", cs_scheme},
                   {"n", cs_n},
                   {"r", cs_r},
                   {"p", cs_p},
                   {"s", cs_s},
                   {"seed", g_seed}}},
                 {"fail_prob", sc_fail},
                 {"exact_failures", sc_exact},
                 {"seed", g_seed},
                 {"replications", sc_reps}});
  });

  auto* s_static = sim->add_subcommand("static", "static survival vs polynomial");
  std::string st_system = "bm";
  int st_n = 8, st_c = 2, st_k = 1;
  double st_r = 0.975;
  uint64_t st_reps = 10000;
  s_static->add_option("--system", st_system, "bm|id|grd|cd|lsi|sspiral|raid5|raid6|kofn");
  s_static->add_option("--n", st_n);
  s_static->add_option("--c", st_c);
  s_static->add_option("--k", st_k);
  s_static->add_option("--r", st_r, "device reliability");
  s_static->add_option("--reps", st_reps);
  s_static->callback([&] {
    run_sim(json{{"kind", "static"},
                 {"system", {{"system", st_system}, {"n", st_n}, {"c", st_c}, {"k", st_k}}},
                 {"r", st_r},
                 {"seed", g_seed},
                 {"replications", st_reps}});
  });

  // parse, honoring --config defaults
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  return 0;
}
