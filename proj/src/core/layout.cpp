#include "core/layout.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "core/fieldmatrix.hpp"
#include "core/rng.hpp"

namespace raidlab {

using nlohmann::json;

bool is_parity(RoleKind k) {
  switch (k) {
    case RoleKind::ParityRow:
    case RoleKind::ParityDiagP:
    case RoleKind::ParityDiagQ:
    case RoleKind::LocalParity:
    case RoleKind::GlobalParity:
      return true;
    default:
      return false;
  }
}

std::set<Cell> ErasurePattern::expand(int rows, int cols) const {
  std::set<Cell> out = cells;
  for (int c : columns) {
    if (c < 0 || c >= cols) throw std::invalid_argument("erased column out of grid");
    for (int r = 0; r < rows; ++r) out.insert({r, c});
  }
  return out;
}

StripeLayout::StripeLayout(int rows, int cols)
    : rows_(rows), cols_(cols), roles_(size_t(rows) * cols) {
  if (rows <= 0 || cols <= 0) throw std::invalid_argument("layout: empty grid");
}

void StripeLayout::add_group(ParityGroup g) {
  if (g.coeffs.empty()) g.coeffs.assign(g.members.size(), 1);
  groups_.push_back(std::move(g));
}

void StripeLayout::validate() const {
  for (const auto& g : groups_) {
    if (!in_grid(g.parity)) throw std::invalid_argument("group parity outside grid");
    if (g.members.size() != g.coeffs.size())
      throw std::invalid_argument("group coeff count mismatch");
    for (const auto& m : g.members)
      if (!in_grid(m)) throw std::invalid_argument("group member outside grid");
    if (role(g.parity.row, g.parity.col).kind == RoleKind::Data)
      throw std::invalid_argument("data cell used as parity");
  }
}

size_t StripeLayout::encode(std::vector<Block>& grid) const {
  if (grid.size() != roles_.size())
    throw std::invalid_argument("encode: grid size mismatch");
  size_t ops = 0;
  for (const auto& g : groups_) {
    Block& p = grid[idx(g.parity.row, g.parity.col)];
    bool first = true;
    for (size_t i = 0; i < g.members.size(); ++i) {
      const Block& src = grid[idx(g.members[i].row, g.members[i].col)];
      if (first) {
        p = src;
        if (g.coeffs[i] != 1)
          for (auto& byte : p) byte = gf::mul(g.coeffs[i], byte);
        first = false;
      } else {
        mul_add_into(p, src, g.coeffs[i]);
        ++ops;
      }
    }
    if (first) p.assign(p.size(), 0);
  }
  return ops;
}

namespace {

// Builds the linear system  sum_{erased} c_u x_u = sum_{known} c_k v_k
// restricted to equations touching at least one erased cell.
struct ErasedSystem {
  std::vector<Cell> unknowns;                  // sorted
  std::map<Cell, size_t> index;
  std::vector<std::vector<uint8_t>> rows;      // coefficient rows
  std::vector<std::vector<std::pair<Cell, uint8_t>>> known_terms;
};

ErasedSystem build_system(const StripeLayout& layout,
                          const std::set<Cell>& erased) {
  ErasedSystem sys;
  sys.unknowns.assign(erased.begin(), erased.end());
  for (size_t i = 0; i < sys.unknowns.size(); ++i) sys.index[sys.unknowns[i]] = i;
  for (const auto& g : layout.groups()) {
    std::vector<uint8_t> row(sys.unknowns.size(), 0);
    std::vector<std::pair<Cell, uint8_t>> known;
    bool touches = false;
    auto add_term = [&](const Cell& cell, uint8_t coeff) {
      auto it = sys.index.find(cell);
      if (it != sys.index.end()) {
        row[it->second] ^= coeff;
        touches = true;
      } else {
        known.emplace_back(cell, coeff);
      }
    };
    add_term(g.parity, 1);
    for (size_t i = 0; i < g.members.size(); ++i)
      add_term(g.members[i], g.coeffs[i]);
    if (touches) {
      sys.rows.push_back(std::move(row));
      sys.known_terms.push_back(std::move(known));
    }
  }
  return sys;
}

}  // namespace

bool StripeLayout::recoverable(const ErasurePattern& erased) const {
  std::set<Cell> cells = erased.expand(rows_, cols_);
  for (const auto& cell : cells)
    if (!in_grid(cell)) throw std::invalid_argument("erased cell outside grid");
  // Spare/unused cells carry no content.
  for (auto it = cells.begin(); it != cells.end();) {
    RoleKind k = role(it->row, it->col).kind;
    if (k == RoleKind::Spare || k == RoleKind::Unused)
      it = cells.erase(it);
    else
      ++it;
  }
  if (cells.empty()) return true;
  ErasedSystem sys = build_system(*this, cells);
  FieldMatrix m(sys.rows.size(), sys.unknowns.size());
  for (size_t r = 0; r < sys.rows.size(); ++r)
    for (size_t c = 0; c < sys.unknowns.size(); ++c)
      m.at(r, c) = sys.rows[r][c];
  return m.rank() == sys.unknowns.size();
}

StripeLayout::DecodeResult StripeLayout::decode(
    const std::vector<Block>& grid, const ErasurePattern& erased) const {
  if (grid.size() != roles_.size())
    throw std::invalid_argument("decode: grid size mismatch");
  DecodeResult res;
  res.grid = grid;
  std::set<Cell> unknown = erased.expand(rows_, cols_);
  for (auto it = unknown.begin(); it != unknown.end();) {
    RoleKind k = role(it->row, it->col).kind;
    if (k == RoleKind::Spare || k == RoleKind::Unused)
      it = unknown.erase(it);
    else
      ++it;
  }
  const size_t block_len = grid.empty() ? 0 : grid[0].size();
  for (const auto& cell : unknown)
    res.grid[idx(cell.row, cell.col)].assign(block_len, 0);

  // Peeling: recover the lexicographically first cell that appears in a
  // group whose other cells are all known; repeat to fixpoint.
  bool progress = true;
  while (progress && !unknown.empty()) {
    progress = false;
    for (const auto& cell : unknown) {
      for (const auto& g : groups_) {
        uint8_t coeff = 0;
        size_t missing = 0;
        if (g.parity == cell) {
          coeff = 1;
          ++missing;
        } else if (unknown.count(g.parity)) {
          ++missing;
        }
        for (size_t i = 0; i < g.members.size() && missing < 2; ++i) {
          if (g.members[i] == cell) {
            coeff ^= g.coeffs[i];
            ++missing;
          } else if (unknown.count(g.members[i])) {
            ++missing;
          }
        }
        if (missing != 1 || coeff == 0) continue;
        Block sum(block_len, 0);
        if (!(g.parity == cell))
          mul_add_into(sum, res.grid[idx(g.parity.row, g.parity.col)], 1);
        for (size_t i = 0; i < g.members.size(); ++i)
          if (!(g.members[i] == cell))
            mul_add_into(sum, res.grid[idx(g.members[i].row, g.members[i].col)],
                         g.coeffs[i]);
        if (coeff != 1) {
          uint8_t s = gf::inv(coeff);
          for (auto& byte : sum) byte = gf::mul(s, byte);
        }
        res.grid[idx(cell.row, cell.col)] = std::move(sum);
        unknown.erase(cell);
        progress = true;
        break;
      }
      if (progress) break;
    }
  }

  if (unknown.empty()) return res;

  // Fallback: solve the full linear system; fill in every unknown the
  // equations determine uniquely, report the rest as stuck.
  ErasedSystem sys = build_system(*this, unknown);
  const size_t n = sys.unknowns.size();
  std::vector<std::vector<uint8_t>> a = sys.rows;
  std::vector<Block> rhs(a.size(), Block(block_len, 0));
  for (size_t r = 0; r < a.size(); ++r)
    for (const auto& [cell, coeff] : sys.known_terms[r])
      mul_add_into(rhs[r], res.grid[idx(cell.row, cell.col)], coeff);

  // Reduced row echelon form with block right-hand sides.
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < n && rank < a.size(); ++col) {
    size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    std::swap(rhs[piv], rhs[rank]);
    uint8_t inv = gf::inv(a[rank][col]);
    if (inv != 1) {
      for (auto& v : a[rank]) v = gf::mul(inv, v);
      for (auto& byte : rhs[rank]) byte = gf::mul(inv, byte);
    }
    for (size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][col] == 0) continue;
      uint8_t f = a[r][col];
      for (size_t c = 0; c < n; ++c) a[r][c] ^= gf::mul(f, a[rank][c]);
      mul_add_into(rhs[r], rhs[rank], f);
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivot_col) is_pivot[c] = true;
  for (size_t r = 0; r < rank; ++r) {
    bool determined = true;
    for (size_t c = 0; c < n; ++c)
      if (!is_pivot[c] && a[r][c] != 0) determined = false;
    if (!determined) continue;
    const Cell& cell = sys.unknowns[pivot_col[r]];
    res.grid[idx(cell.row, cell.col)] = rhs[r];
    unknown.erase(cell);
  }
  res.stuck = unknown;
  return res;
}

bool StripeLayout::parity_consistent(const std::vector<Block>& grid) const {
  for (const auto& g : groups_) {
    Block sum = grid[idx(g.parity.row, g.parity.col)];
    for (size_t i = 0; i < g.members.size(); ++i)
      mul_add_into(sum, grid[idx(g.members[i].row, g.members[i].col)],
                   g.coeffs[i]);
    if (!is_zero(sum)) return false;
  }
  return true;
}

std::string role_to_string(const CellRole& role) {
  switch (role.kind) {
    case RoleKind::Data: return "data";
    case RoleKind::ParityRow: return "parity_row";
    case RoleKind::ParityDiagP: return "parity_diag_p";
    case RoleKind::ParityDiagQ: return "parity_diag_q";
    case RoleKind::LocalParity: return "local_parity:" + std::to_string(role.tag);
    case RoleKind::GlobalParity: return "global_parity:" + std::to_string(role.tag);
    case RoleKind::Spare: return "spare";
    case RoleKind::Unused: return "unused";
  }
  return "data";
}

CellRole role_from_string(const std::string& s) {
  auto tagged = [&](const std::string& prefix, RoleKind kind) -> std::optional<CellRole> {
    if (s.rfind(prefix, 0) == 0)
      return CellRole{kind, std::stoi(s.substr(prefix.size()))};
    return std::nullopt;
  };
  if (s == "data") return {RoleKind::Data, 0};
  if (s == "parity_row") return {RoleKind::ParityRow, 0};
  if (s == "parity_diag_p") return {RoleKind::ParityDiagP, 0};
  if (s == "parity_diag_q") return {RoleKind::ParityDiagQ, 0};
  if (s == "spare") return {RoleKind::Spare, 0};
  if (s == "unused") return {RoleKind::Unused, 0};
  if (auto r = tagged("local_parity:", RoleKind::LocalParity)) return *r;
  if (auto r = tagged("global_parity:", RoleKind::GlobalParity)) return *r;
  throw std::invalid_argument("unknown cell role: " + s);
}

std::string StripeLayout::to_json() const {
  json j;
  j["rows"] = rows_;
  j["cols"] = cols_;
  json roles = json::array();
  for (int r = 0; r < rows_; ++r) {
    json row = json::array();
    for (int c = 0; c < cols_; ++c) row.push_back(role_to_string(role(r, c)));
    roles.push_back(std::move(row));
  }
  j["roles"] = std::move(roles);
  json groups = json::array();
  for (const auto& g : groups_) {
    json jg;
    jg["parity"] = {g.parity.row, g.parity.col};
    json members = json::array();
    for (const auto& m : g.members) members.push_back({m.row, m.col});
    jg["members"] = std::move(members);
    jg["coeffs"] = g.coeffs;
    groups.push_back(std::move(jg));
  }
  j["groups"] = std::move(groups);
  return j.dump();
}

StripeLayout StripeLayout::from_json(const std::string& text) {
  json j = json::parse(text);
  StripeLayout layout(j.at("rows").get<int>(), j.at("cols").get<int>());
  const auto& roles = j.at("roles");
  for (int r = 0; r < layout.rows(); ++r)
    for (int c = 0; c < layout.cols(); ++c)
      layout.role(r, c) = role_from_string(roles.at(r).at(c).get<std::string>());
  for (const auto& jg : j.at("groups")) {
    ParityGroup g;
    g.parity = {jg.at("parity").at(0).get<int>(), jg.at("parity").at(1).get<int>()};
    for (const auto& m : jg.at("members"))
      g.members.push_back({m.at(0).get<int>(), m.at(1).get<int>()});
    for (const auto& c : jg.at("coeffs"))
      g.coeffs.push_back(static_cast<uint8_t>(c.get<int>()));
    layout.add_group(std::move(g));
  }
  layout.validate();
  return layout;
}

std::vector<Block> random_grid(int rows, int cols, size_t block_len,
                               uint64_t seed) {
  std::vector<Block> grid(size_t(rows) * cols, Block(block_len, 0));
  Xoshiro256 rng(seed);
  for (auto& block : grid)
    for (auto& byte : block) byte = static_cast<uint8_t>(rng.next_u64());
  return grid;
}

}  // namespace raidlab
