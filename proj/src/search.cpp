#include "search.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <set>

#include "counts.hpp"

namespace rf7 {

namespace {

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

u64 mix(u64 a, u64 b, u64 c) {
  return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Precomputed geometry for one (m, family) pair.
//
// Root-flat points live on indices 0..S-1 (S = m^(n-1)). `cls` is the
// feature class of each point, `members` its inverse, and `step` the
// Cayley step table w -> w + q_d. `rc[t][w][k]` is the feature class of
// iota_t applied to the k-fold coordinate shift of the layer-t vertex
// above w, which is exactly the class whose selector entry decides the
// direction of color k at (t, w). `ladder[t]` holds the per-layer
// difference constraints (c1, c2, diff) meaning sel[c1] - sel[c2] != diff
// mod 7, the condition for every row of layer t to use seven distinct
// directions across colors.
struct Geometry {
  u32 n = 7;
  u32 m = 0;
  u64 S = 0;
  u32 nclasses = 0;
  std::vector<u32> class_ids;  // feature id -> compact class, kUnseen if absent
  std::vector<u8> cls;         // S
  std::vector<std::vector<u32>> members;    // nclasses
  std::vector<u32> step;                    // S * 7
  std::vector<std::vector<u8>> rc;          // per t: S * 7
  std::vector<std::vector<std::array<u8, 3>>> ladder;  // per t

  static constexpr u32 kUnseen = 0xffffffffu;
};

bool build_geometry(u32 m, const SelectorFamily& fam, Geometry* g,
                    std::string* err) {
  g->m = m;
  const u32 n = g->n;
  g->S = ipow(m, n - 1);
  if (fam.max_features == 0 || fam.max_features > 4096) {
    if (err) *err = "selector family has no usable feature bound";
    return false;
  }
  g->class_ids.assign(fam.max_features, Geometry::kUnseen);
  g->cls.assign(g->S, 0);
  g->members.clear();

  // classes and membership from the feature function on root-flat points
  {
    Odometer od(n - 1, m);
    std::vector<u8> digits(n);
    u64 w = 0;
    do {
      u64 sum = 0;
      for (u32 i = 0; i < n - 1; ++i) {
        digits[i] = od.d[i];
        sum += od.d[i];
      }
      digits[n - 1] = static_cast<u8>((m - sum % m) % m);
      u32 f = fam.feature(digits.data(), n, m);
      if (f >= fam.max_features) {
        if (err) *err = "feature function exceeded its declared bound";
        return false;
      }
      if (g->class_ids[f] == Geometry::kUnseen) {
        g->class_ids[f] = static_cast<u32>(g->members.size());
        g->members.emplace_back();
      }
      u32 c = g->class_ids[f];
      g->cls[w] = static_cast<u8>(c);
      g->members[c].push_back(static_cast<u32>(w));
      ++w;
    } while (od.next());
  }
  g->nclasses = static_cast<u32>(g->members.size());
  if (g->nclasses > 255) {
    if (err) *err = "feature function produced more than 255 classes";
    return false;
  }

  g->step = build_rf_step_table(n, m);

  // rotated classes: x = vertex above w in layer t, y_j = x_{(j+k) mod 7},
  // then project with iota_t (subtract t from the last coordinate)
  g->rc.assign(m, {});
  std::vector<u8> x(n), y(n);
  for (u32 t = 0; t < m; ++t) {
    auto& rct = g->rc[t];
    rct.assign(g->S * 7, 0);
    Odometer od(n - 1, m);
    u64 w = 0;
    do {
      u64 sum = 0;
      for (u32 i = 0; i < n - 1; ++i) {
        x[i] = od.d[i];
        sum += od.d[i];
      }
      x[n - 1] = static_cast<u8>(((m - sum % m) % m + t) % m);
      for (u32 k = 0; k < 7; ++k) {
        for (u32 j = 0; j < n; ++j) y[j] = x[(j + k) % n];
        y[n - 1] = static_cast<u8>((y[n - 1] + m - t % m) % m);
        u32 f = fam.feature(y.data(), n, m);
        u32 c = (f < fam.max_features) ? g->class_ids[f] : Geometry::kUnseen;
        if (c == Geometry::kUnseen) {
          if (err) *err = "rotated point fell outside the feature classes";
          return false;
        }
        rct[w * 7 + k] = static_cast<u8>(c);
      }
      ++w;
    } while (od.next());
  }

  // ladder constraints: the seven directions in row (t, w) are
  // (sel[rc[t][w][k]] + k) mod 7 for k = 0..6; they collide exactly when
  // sel[c1] - sel[c2] = k2 - k1 for some pair, so forbid those differences
  g->ladder.assign(m, {});
  std::vector<bool> seen(static_cast<size_t>(g->nclasses) * g->nclasses * 7);
  for (u32 t = 0; t < m; ++t) {
    std::fill(seen.begin(), seen.end(), false);
    auto& lad = g->ladder[t];
    const auto& rct = g->rc[t];
    for (u64 w = 0; w < g->S; ++w) {
      for (u32 k1 = 0; k1 < 7; ++k1) {
        for (u32 k2 = k1 + 1; k2 < 7; ++k2) {
          u8 c1 = rct[w * 7 + k1];
          u8 c2 = rct[w * 7 + k2];
          u8 diff = static_cast<u8>((k2 - k1) % 7);
          if (c1 == c2) continue;  // distinct k makes the row entries differ
          size_t key = (static_cast<size_t>(c1) * g->nclasses + c2) * 7 + diff;
          if (seen[key]) continue;
          seen[key] = true;
          lad.push_back({c1, c2, diff});
        }
      }
    }
  }
  return true;
}

// Randomized exact cover over rows (class, direction). Choosing (c, d)
// covers the class column c and the state columns {w + q_d : w in class c};
// a full cover is precisely a selector whose color-0 layer permutes the
// root flat. Ladder constraints act as kill lists: choosing (c1, d) removes
// (c2, (d - diff) mod 7) and vice versa. Column branching is restricted to
// class columns; a leftover uncovered state column at the bottom is a dead
// end and forces backtracking.
struct CoverSolver {
  const Geometry* g = nullptr;
  u32 layer = 0;
  u32 nrows = 0;  // nclasses * 7
  std::vector<std::vector<u32>> row_state_cols;  // per row, state cols hit
  std::vector<std::vector<u32>> state_rows;      // per state col, rows hitting
  std::vector<std::vector<u32>> kill;            // per row, ladder victims

  std::vector<u8> row_alive;
  std::vector<u8> class_covered;
  std::vector<u8> state_covered;
  u64 states_left = 0;
  std::vector<u64> undo;  // (1<<40)|state for states, (2<<40)|rid for rows
  std::vector<u32> chosen;
  u64 nodes = 0;
  u64 node_budget = 0;
  std::mt19937_64* rng = nullptr;

  void init(const Geometry* geo, u32 t) {
    g = geo;
    layer = t;
    nrows = g->nclasses * 7;
    row_state_cols.assign(nrows, {});
    state_rows.assign(g->S, {});
    for (u32 c = 0; c < g->nclasses; ++c) {
      for (u32 d = 0; d < 7; ++d) {
        u32 rid = c * 7 + d;
        auto& cols = row_state_cols[rid];
        cols.reserve(g->members[c].size());
        for (u32 w : g->members[c]) {
          u32 dest = g->step[static_cast<u64>(w) * 7 + d];
          cols.push_back(dest);
          state_rows[dest].push_back(rid);
        }
      }
    }
    kill.assign(nrows, {});
    for (const auto& con : g->ladder[t]) {
      u32 c1 = con[0], c2 = con[1], diff = con[2];
      for (u32 d = 0; d < 7; ++d) {
        u32 d2 = (d + 7 - diff) % 7;
        kill[c1 * 7 + d].push_back(c2 * 7 + d2);
        kill[c2 * 7 + d2].push_back(c1 * 7 + d);
      }
    }
  }

  void kill_row(u32 rid) {
    if (!row_alive[rid]) return;
    row_alive[rid] = 0;
    undo.push_back((2ull << 40) | rid);
  }

  void cover_state(u32 s) {
    if (state_covered[s]) return;
    state_covered[s] = 1;
    --states_left;
    undo.push_back((1ull << 40) | s);
    for (u32 rid : state_rows[s]) kill_row(rid);
  }

  void unwind(size_t mark) {
    while (undo.size() > mark) {
      u64 op = undo.back();
      undo.pop_back();
      u32 id = static_cast<u32>(op & 0xffffffffull);
      if ((op >> 40) == 1) {
        state_covered[id] = 0;
        ++states_left;
      } else {
        row_alive[id] = 1;
      }
    }
  }

  bool descend() {
    if (++nodes > node_budget) return false;
    // branch on the uncovered class column with fewest alive rows
    int best = -1;
    u32 best_count = 8;
    for (u32 c = 0; c < g->nclasses; ++c) {
      if (class_covered[c]) continue;
      u32 count = 0;
      for (u32 d = 0; d < 7; ++d) count += row_alive[c * 7 + d];
      if (count == 0) return false;
      if (count < best_count) {
        best_count = count;
        best = static_cast<int>(c);
      }
    }
    if (best < 0) return states_left == 0;

    u32 c = static_cast<u32>(best);
    u32 cand[7];
    u32 ncand = 0;
    for (u32 d = 0; d < 7; ++d) {
      if (row_alive[c * 7 + d]) cand[ncand++] = c * 7 + d;
    }
    std::shuffle(cand, cand + ncand, *rng);
    for (u32 i = 0; i < ncand; ++i) {
      u32 rid = cand[i];
      if (!row_alive[rid]) continue;  // a sibling choice cannot kill it, but stay safe
      size_t mark = undo.size();
      class_covered[c] = 1;
      for (u32 d = 0; d < 7; ++d) kill_row(c * 7 + d);
      for (u32 s : row_state_cols[rid]) cover_state(s);
      for (u32 victim : kill[rid]) kill_row(victim);
      chosen.push_back(rid);
      if (descend()) return true;
      chosen.pop_back();
      class_covered[c] = 0;
      unwind(mark);
      if (nodes > node_budget) return false;
    }
    return false;
  }

  // one randomized attempt; on success fills sel (class -> direction)
  bool attempt(std::mt19937_64* r, u64 budget, std::vector<u8>* sel) {
    rng = r;
    node_budget = budget;
    nodes = 0;
    row_alive.assign(nrows, 1);
    class_covered.assign(g->nclasses, 0);
    state_covered.assign(g->S, 0);
    states_left = g->S;
    undo.clear();
    chosen.clear();
    if (!descend()) return false;
    sel->assign(g->nclasses, 0);
    for (u32 rid : chosen) (*sel)[rid / 7] = static_cast<u8>(rid % 7);
    return true;
  }
};

bool is_constant_selector(const std::vector<u8>& sel) {
  for (u8 v : sel) {
    if (v != sel[0]) return false;
  }
  return true;
}

// compose R_0 = P_{m-1} ... P_0 for a stacked choice of per-layer selectors
// and count how many colors give a primitive return; early-outs after
// color 0 unless `all_colors` is set
u32 primitive_colors(const Geometry& g,
                     const std::vector<const std::vector<u8>*>& sel,
                     bool all_colors, std::vector<u32>* scratch) {
  const u64 S = g.S;
  u32 good = 0;
  for (u32 k = 0; k < 7; ++k) {
    auto& cur = *scratch;
    cur.resize(S);
    for (u64 w = 0; w < S; ++w) cur[w] = static_cast<u32>(w);
    for (u32 t = 0; t < g.m; ++t) {
      const auto& rct = g.rc[t];
      const auto& st = *sel[t];
      for (u64 w = 0; w < S; ++w) {
        u32 p = cur[w];
        u32 d = (st[rct[static_cast<u64>(p) * 7 + k]] + k) % 7;
        cur[w] = g.step[static_cast<u64>(p) * 7 + d];
      }
    }
    // orbit of 0; bijectivity is already guaranteed by the exact cover
    u64 len = 0;
    u32 v = 0;
    do {
      v = cur[v];
      ++len;
    } while (v != 0 && len <= S);
    if (len == S) ++good;
    if (k == 0 && len != S && !all_colors) return 0;
  }
  return good;
}

Certificate certificate_from_selectors(
    const Geometry& g, const std::vector<const std::vector<u8>*>& sel) {
  Certificate cert = *Certificate::create(g.n, g.m, nullptr);
  for (u32 t = 0; t < g.m; ++t) {
    const auto& rct = g.rc[t];
    const auto& st = *sel[t];
    u8* row = cert.d.data() + static_cast<u64>(t) * g.S * g.n;
    for (u64 w = 0; w < g.S; ++w) {
      for (u32 k = 0; k < 7; ++k) {
        row[w * g.n + k] = static_cast<u8>((st[rct[w * 7 + k]] + k) % 7);
      }
    }
  }
  return cert;
}

bool full_validation(const Certificate& cert, Report* rep, std::string* why) {
  CheckReport c1 = check_row_latin(cert);
  rep->add_pass("check.c1", c1.pass);
  if (!c1.pass) {
    *why = "C1: " + c1.detail;
    return false;
  }
  CheckReport c2 = check_layer_bijective(cert);
  rep->add_pass("check.c2", c2.pass);
  if (!c2.pass) {
    *why = "C2: " + c2.detail;
    return false;
  }
  CheckReport c3 = check_primitive_return(cert);
  rep->add_pass("check.c3", c3.pass);
  for (u32 k = 0; k < c3.cycle_lengths.size(); ++k) {
    rep->add("color." + std::to_string(k) + ".cycle_len", c3.cycle_lengths[k]);
  }
  if (!c3.pass) {
    *why = "C3: " + c3.detail;
    return false;
  }
  auto arcs = lift_certificate(cert, why);
  if (!arcs) return false;
  CycleReport lift = verify_decomposition(*arcs, 1);
  rep->add_pass("lift.partition", lift.pass);
  rep->add("lift.mode", lift.mode);
  for (u32 k = 0; k < lift.lengths.size(); ++k) {
    rep->add("lift.color." + std::to_string(k) + ".len", lift.lengths[k]);
  }
  if (!lift.pass) {
    *why = "lift: " + lift.detail;
    return false;
  }
  return true;
}

}  // namespace

SelectorFamily zero_set_family() {
  SelectorFamily fam;
  fam.name = "zero-set";
  fam.max_features = 128;
  fam.feature = [](const u8* digits, u32 n, u32) -> u32 {
    u32 mask = 0;
    for (u32 i = 0; i < n; ++i) {
      if (digits[i] == 0) mask |= 1u << i;
    }
    return mask;
  };
  return fam;
}

std::optional<SearchResult> search_boundary(u32 m, const SearchOptions& opt,
                                            std::string* err) {
  if (m % 2 == 0 || m < 3) {
    if (err) *err = "search requires odd m >= 3";
    return std::nullopt;
  }
  if (m >= 7) {
    if (err) {
      *err = "m >= 7 has a direct construction; search targets the boundary "
             "cases m in {3, 5}";
    }
    return std::nullopt;
  }
  auto t0 = std::chrono::steady_clock::now();

  SearchResult out;
  out.state.m = m;
  out.state.seed = opt.seed;

  if (!opt.checkpoint_path.empty()) {
    std::ifstream probe(opt.checkpoint_path);
    if (probe.good()) {
      probe.close();
      std::string cerr2;
      auto st = read_checkpoint(opt.checkpoint_path, &cerr2);
      if (!st) {
        if (err) *err = "checkpoint: " + cerr2;
        return std::nullopt;
      }
      if (st->m != m) {
        if (err) *err = "checkpoint is for a different m";
        return std::nullopt;
      }
      out.state = *st;
      out.report.add("search.resumed", "true");
    }
  }
  const u64 seed = out.state.seed;

  SelectorFamily fam = opt.family ? *opt.family : zero_set_family();
  Geometry g;
  if (!build_geometry(m, fam, &g, err)) return std::nullopt;

  out.report.add("search.m", static_cast<u64>(m));
  out.report.add("search.seed", seed);
  out.report.add("search.family", fam.name);
  out.report.add("search.classes", static_cast<u64>(g.nclasses));

  // stage 1: per-layer selector pools. Runs to completion regardless of the
  // budget: the pools define what each stage-2 candidate index means, so they
  // must depend on (m, seed) alone or resumed streams would drift. The work
  // is bounded by attempts * node_budget, not wall clock.
  std::vector<std::vector<std::vector<u8>>> pool(m);
  {
    CoverSolver solver;
    for (u32 t = 0; t < m; ++t) {
      solver.init(&g, t);
      std::set<std::vector<u8>> dedup;
      for (u32 j = 0; j < opt.stage1_attempts; ++j) {
        if (pool[t].size() >= opt.pool_target) break;
        std::mt19937_64 rng(mix(seed, 0x5e1ec702ull * (t + 1), j));
        std::vector<u8> sel;
        if (!solver.attempt(&rng, opt.node_budget, &sel)) continue;
        if (is_constant_selector(sel)) continue;
        if (dedup.insert(sel).second) pool[t].push_back(std::move(sel));
      }
      out.report.add("search.pool." + std::to_string(t),
                     static_cast<u64>(pool[t].size()));
    }
  }
  bool any_pool = false;
  for (u32 t = 0; t < m; ++t) any_pool = any_pool || !pool[t].empty();
  if (!any_pool) {
    if (err) *err = "stage 1 produced no non-constant layer selectors";
    return std::nullopt;
  }

  // constant selectors double as fallback layers in the stacking stage
  std::vector<std::vector<u8>> constants(7);
  for (u32 d = 0; d < 7; ++d) constants[d].assign(g.nclasses, static_cast<u8>(d));

  // stage 2: seeded candidate stream; candidate i is reproducible from
  // (seed, i) alone, so resume just continues the counter
  std::vector<u32> scratch;
  std::vector<const std::vector<u8>*> sel(m);
  u64 candidate = out.state.next_candidate;
  u32 best_colors = out.state.best_colors;
  bool found = false;
  u64 tested = 0;
  while (true) {
    if ((tested & 0xff) == 0 && seconds_since(t0) > opt.budget_seconds) break;
    std::mt19937_64 rng(mix(seed, 0xca4d1da7eull, candidate));
    bool all_constant = true;
    for (u32 t = 0; t < m; ++t) {
      bool take_pool = !pool[t].empty() && (rng() % 10) < 7;
      if (take_pool) {
        sel[t] = &pool[t][rng() % pool[t].size()];
        all_constant = false;
      } else {
        sel[t] = &constants[rng() % 7];
      }
    }
    ++candidate;
    ++tested;
    if (all_constant) continue;  // a pure translation cannot be primitive

    bool probe_all = (tested & 0x3ff) == 1;
    u32 good = primitive_colors(g, sel, probe_all, &scratch);
    if (good > best_colors) best_colors = good;
    if (good < 7) continue;

    // candidate passed the return-map test for every color; build the full
    // table and accept only after the complete certificate and lift checks
    Certificate cert = certificate_from_selectors(g, sel);
    std::string why;
    if (!full_validation(cert, &out.report, &why)) {
      out.report.add("search.anomaly", "candidate " + std::to_string(candidate - 1) +
                                           " failed validation: " + why);
      continue;
    }
    out.cert = std::move(cert);
    out.report.add("search.found_candidate", candidate - 1);
    found = true;
    break;
  }

  out.state.next_candidate = candidate;
  out.state.best_colors = best_colors;
  out.state.elapsed_seconds += seconds_since(t0);
  out.report.add("search.candidates", candidate);
  out.report.add("search.best_colors", static_cast<u64>(best_colors));
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", out.state.elapsed_seconds);
    out.report.add("search.elapsed_s", std::string(buf));
  }
  out.report.add("search.result", found ? "found" : "budget-exhausted");

  if (!found && !opt.checkpoint_path.empty()) {
    std::string werr;
    if (!write_checkpoint(out.state, opt.checkpoint_path, &werr)) {
      if (err) *err = "checkpoint write: " + werr;
      return std::nullopt;
    }
    out.report.add("search.checkpoint", opt.checkpoint_path);
  }
  return out;
}

bool write_checkpoint(const SearchState& st, const std::string& path,
                      std::string* err) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    if (err) *err = "cannot open " + path + " for writing";
    return false;
  }
  out << "rootflat-search-checkpoint v1\n";
  out << "m " << st.m << "\n";
  out << "seed " << st.seed << "\n";
  out << "candidate " << st.next_candidate << "\n";
  out << "best_colors " << st.best_colors << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", st.elapsed_seconds);
  out << "elapsed_s " << buf << "\n";
  out.flush();
  if (!out) {
    if (err) *err = "short write to " + path;
    return false;
  }
  return true;
}

std::optional<SearchState> read_checkpoint(const std::string& path,
                                           std::string* err) {
  std::ifstream in(path);
  if (!in) {
    if (err) *err = "cannot open " + path;
    return std::nullopt;
  }
  std::string line;
  if (!std::getline(in, line) || line != "rootflat-search-checkpoint v1") {
    if (err) *err = "bad checkpoint header in " + path;
    return std::nullopt;
  }
  SearchState st;
  bool have_m = false, have_seed = false, have_cand = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    char key[32];
    char val[64];
    if (std::sscanf(line.c_str(), "%31s %63s", key, val) != 2) {
      if (err) *err = "unparseable checkpoint line: " + line;
      return std::nullopt;
    }
    if (std::strcmp(key, "m") == 0) {
      st.m = static_cast<u32>(std::strtoul(val, nullptr, 10));
      have_m = true;
    } else if (std::strcmp(key, "seed") == 0) {
      st.seed = std::strtoull(val, nullptr, 10);
      have_seed = true;
    } else if (std::strcmp(key, "candidate") == 0) {
      st.next_candidate = std::strtoull(val, nullptr, 10);
      have_cand = true;
    } else if (std::strcmp(key, "best_colors") == 0) {
      st.best_colors = static_cast<u32>(std::strtoul(val, nullptr, 10));
    } else if (std::strcmp(key, "elapsed_s") == 0) {
      st.elapsed_seconds = std::strtod(val, nullptr);
    } else {
      if (err) *err = std::string("unknown checkpoint key: ") + key;
      return std::nullopt;
    }
  }
  if (!have_m || !have_seed || !have_cand) {
    if (err) *err = "checkpoint is missing m, seed, or candidate";
    return std::nullopt;
  }
  return st;
}

std::optional<Report> obstruction_witness(u32 m, std::string* err) {
  if (m % 2 == 0 || m < 3) {
    if (err) *err = "the obstruction report requires odd m >= 3";
    return std::nullopt;
  }
  if (m >= 7) {
    if (err) *err = "m >= 7 is above the boundary; the construction applies";
    return std::nullopt;
  }
  Report rep;
  rep.add("obstruction.m", static_cast<u64>(m));
  rep.add("obstruction.zeros_needed", static_cast<u64>(7));
  rep.add("obstruction.zeros_available", static_cast<u64>(m));

  // Counting side: each of the seven colors needs at least one zero symbol
  // in its word (every count matrix has N_0 >= 1 in every row), but a
  // schedule of m layers hands out exactly m zero symbols in total, one per
  // layer row. With m < 7 some color's word has no zero symbol at all.
  //
  // Concrete side: the cyclic Latin schedule mu_t(k) = symbol[(k + t) mod 7]
  // with all thresholds zero. Color k receives the zero symbol only in
  // layers t = -k mod 7, so for m < 7 at least one color receives none;
  // measure its return map and record the shattered cycle structure.
  std::array<Symbol, 7> base = {Symbol::Zero, Symbol::Delta, Symbol::N2,
                                Symbol::N3,   Symbol::N4,    Symbol::N5,
                                Symbol::N6};
  Schedule sched;
  sched.m = m;
  sched.mu.resize(m);
  sched.tau.assign(m, 0);
  for (u32 t = 0; t < m; ++t) {
    for (u32 k = 0; k < 7; ++k) sched.mu[t][k] = base[(k + t) % 7];
  }

  int witness_color = -1;
  for (u32 k = 0; k < 7 && witness_color < 0; ++k) {
    bool has_zero = false;
    for (u32 t = 0; t < m; ++t) {
      if (sched.mu[t][k] == Symbol::Zero) has_zero = true;
    }
    if (!has_zero) witness_color = static_cast<int>(k);
  }
  if (witness_color < 0) {
    if (err) *err = "internal: every color received a zero symbol";
    return std::nullopt;
  }
  rep.add("obstruction.witness_color", static_cast<u64>(witness_color));

  Word word = color_word(sched, static_cast<u32>(witness_color));
  auto counts = word_counts(word);
  for (u32 j = 0; j < 7; ++j) {
    rep.add("obstruction.witness_n" + std::to_string(j),
            static_cast<u64>(counts[j]));
  }

  std::string werr;
  auto perm = word_return_map(word, 6, m, &werr);
  if (!perm) {
    if (err) *err = "witness word evaluation failed: " + werr;
    return std::nullopt;
  }
  auto single = is_single_cycle(*perm, &werr);
  if (!single) {
    if (err) *err = "witness return map is not a permutation: " + werr;
    return std::nullopt;
  }
  rep.add_pass("obstruction.witness_single_cycle", *single);
  if (*single) {
    if (err) *err = "internal: witness word unexpectedly gave a single cycle";
    return std::nullopt;
  }
  // record the orbit structure of the failed return map
  {
    std::vector<u8> seen(perm->size(), 0);
    u64 cycles = 0;
    u64 shortest = perm->size();
    for (u64 s = 0; s < perm->size(); ++s) {
      if (seen[s]) continue;
      u64 len = 0;
      u64 v = s;
      while (!seen[v]) {
        seen[v] = 1;
        v = (*perm)[v];
        ++len;
      }
      ++cycles;
      shortest = std::min(shortest, len);
    }
    rep.add("obstruction.witness_cycles", cycles);
    rep.add("obstruction.witness_shortest_cycle", shortest);
  }
  rep.add("obstruction.conclusion",
          "schedule families cannot reach m < 7; boundary cases need the "
          "searched certificates");
  return rep;
}

std::optional<Certificate> import_external_certificate(const std::string& path,
                                                       Report* rep,
                                                       std::string* err) {
  std::string rerr;
  auto cert = read_certificate(path, &rerr);
  if (!cert) {
    if (err) *err = rerr;
    return std::nullopt;
  }
  rep->add("import.path", path);
  rep->add("import.n", static_cast<u64>(cert->n));
  rep->add("import.m", static_cast<u64>(cert->m));

  CheckReport c1 = check_row_latin(*cert);
  rep->add_pass("check.c1", c1.pass);
  if (!c1.pass) {
    if (err) *err = "imported table fails C1: " + c1.detail;
    return std::nullopt;
  }
  CheckReport c2 = check_layer_bijective(*cert);
  rep->add_pass("check.c2", c2.pass);
  if (!c2.pass) {
    if (err) *err = "imported table fails C2: " + c2.detail;
    return std::nullopt;
  }
  CheckReport c3 = check_primitive_return(*cert);
  rep->add_pass("check.c3", c3.pass);
  for (u32 k = 0; k < c3.cycle_lengths.size(); ++k) {
    rep->add("color." + std::to_string(k) + ".cycle_len", c3.cycle_lengths[k]);
  }
  if (!c3.pass) {
    if (err) *err = "imported table fails C3: " + c3.detail;
    return std::nullopt;
  }
  return cert;
}

}  // namespace rf7
