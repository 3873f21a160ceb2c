#include "counts.hpp"

#include <numeric>

namespace rf7 {

namespace {

CountMatrix matrix_m7() {
  CountMatrix cm;
  cm.m = 7;
  cm.rows = {{{1, 2, 0, 0, 0, 0, 4},
              {1, 2, 0, 0, 0, 3, 1},
              {1, 1, 0, 0, 3, 2, 0},
              {1, 1, 0, 3, 2, 0, 0},
              {1, 1, 3, 2, 0, 0, 0},
              {1, 0, 2, 1, 1, 1, 1},
              {1, 0, 2, 1, 1, 1, 1}}};
  return cm;
}

CountMatrix matrix_6s1(int s) {
  CountMatrix cm;
  cm.m = static_cast<u32>(6 * s + 1);
  cm.rows = {{{1, s + 1, s - 1, s - 1, s - 1, s - 1, s + 3},
              {1, s + 1, s - 1, s - 1, s - 1, s - 1, s + 3},
              {1, s + 1, s - 1, s - 1, s - 1, s + 2, s},
              {1, s, s + 1, s + 1, s + 1, s - 1, s - 2},
              {2, s - 1, s, s, s + 1, s + 1, s - 2},
              {2, s - 1, s + 1, s + 1, s, s, s - 2},
              {6 * s - 7, 0, 2, 2, 2, 1, 1}}};
  return cm;
}

CountMatrix matrix_6s3(int s) {
  CountMatrix cm;
  cm.m = static_cast<u32>(6 * s + 3);
  cm.rows = {{{1, s + 2, s, s, s, s, s},
              {1, s + 2, s, s, s, s, s},
              {1, s + 2, s, s, s, s, s},
              {1, s - 1, s, s, s + 1, s + 1, s + 1},
              {2, s - 1, s, s, s, s + 1, s + 1},
              {2, s - 1, s + 1, s + 1, s, s, s},
              {6 * s - 5, 0, 2, 2, 2, 1, 1}}};
  return cm;
}

CountMatrix matrix_6s5(int s) {
  CountMatrix cm;
  cm.m = static_cast<u32>(6 * s + 5);
  cm.rows = {{{1, s + 2, s, s, s, s + 1, s + 1},
              {1, s + 2, s, s, s, s + 1, s + 1},
              {1, s + 2, s, s, s, s + 1, s + 1},
              {1, s, s + 1, s + 1, s + 1, s - 1, s + 2},
              {2, s, s + 1, s + 1, s + 1, s + 1, s - 1},
              {2, s - 1, s + 1, s + 1, s + 1, s + 1, s},
              {6 * s - 3, 0, 2, 2, 2, 1, 1}}};
  return cm;
}

}  // namespace

const char* matrix_family_name(u32 m) {
  if (m == 7) return "m=7";
  switch (m % 6) {
    case 1: return "6s+1";
    case 3: return "6s+3";
    case 5: return "6s+5";
  }
  return "none";
}

std::optional<CountMatrix> count_matrix_for(u32 m, std::string* err) {
  if (m % 2 == 0) {
    if (err) *err = "m must be odd";
    return std::nullopt;
  }
  if (m < 7) {
    if (err)
      *err = "boundary obstruction: a schedule has only m zero-symbol slots "
             "but all 7 colors need one; impossible for m < 7";
    return std::nullopt;
  }
  if (m == 7) return matrix_m7();
  int s = static_cast<int>(m) / 6;
  switch (m % 6) {
    case 1: return matrix_6s1(s);  // s >= 2 here since m >= 13
    case 3: return matrix_6s3(s);
    case 5: return matrix_6s5(s);
  }
  if (err) *err = "unreachable residue";
  return std::nullopt;
}

bool check_count_matrix(const CountMatrix& cm, std::string* why) {
  int m = static_cast<int>(cm.m);
  for (int r = 0; r < 7; ++r) {
    int sum = 0;
    for (int c = 0; c < 7; ++c) {
      if (cm.rows[r][c] < 0) {
        if (why) *why = "negative entry at row " + std::to_string(r);
        return false;
      }
      sum += cm.rows[r][c];
    }
    if (sum != m) {
      if (why) *why = "row " + std::to_string(r) + " sums to " + std::to_string(sum);
      return false;
    }
  }
  for (int c = 0; c < 7; ++c) {
    int sum = 0;
    for (int r = 0; r < 7; ++r) sum += cm.rows[r][c];
    if (sum != m) {
      if (why) *why = "column " + std::to_string(c) + " sums to " + std::to_string(sum);
      return false;
    }
  }
  return true;
}

bool check_count_criterion(const std::array<int, 7>& row, u32 m) {
  int mi = static_cast<int>(m);
  auto unit = [mi](int v) {
    v %= mi;
    if (v < 0) v += mi;
    return std::gcd(v, mi) == 1;
  };
  if (!unit(row[0])) return false;
  for (int k = 2; k <= 6; ++k)
    if (!unit(row[k] - row[1])) return false;
  return true;
}

u32 apply_word_symbol(WordSymbol xi, u32 tau, u8* z, u32 r, u32 m) {
  u32 label;
  if (xi == WordSymbol::Zero) {
    return 0;
  } else if (xi == WordSymbol::T) {
    label = r;
  } else {
    u32 rv = r;
    for (u32 i = 0; i < r; ++i)
      if (z[i] == tau) { rv = i + 1; break; }
    if (xi == WordSymbol::Delta) {
      label = rv;
    } else {
      u32 a = static_cast<u32>(xi);
      label = rv < a ? a : a - 1;
    }
  }
  for (u32 i = 0; i < label; ++i)
    z[i] = static_cast<u8>(z[i] == 0 ? m - 1 : z[i] - 1);
  return label;
}

std::optional<std::vector<u32>> word_return_map(const Word& w, u32 r, u32 m,
                                                std::string* err) {
  for (const WordStep& st : w) {
    if (st.xi != WordSymbol::T && st.xi != WordSymbol::Zero &&
        st.xi != WordSymbol::Delta && static_cast<u32>(st.xi) > r) {
      if (err)
        *err = "symbol " + std::to_string(static_cast<int>(st.xi)) +
               " exceeds dimension " + std::to_string(r);
      return std::nullopt;
    }
  }
  u64 size = ipow(m, r);
  std::vector<u32> perm(size);
  std::vector<u8> z(r);
  Odometer od(r, m);
  for (u64 idx = 0; idx < size; ++idx) {
    std::copy(od.d.begin(), od.d.end(), z.begin());
    for (const WordStep& st : w) apply_word_symbol(st.xi, st.tau, z.data(), r, m);
    u64 out = 0;
    for (u32 i = 0; i < r; ++i) out = out * m + z[i];
    perm[idx] = static_cast<u32>(out);
    od.next();
  }
  return perm;
}

std::optional<bool> is_single_cycle(const std::vector<u32>& perm, std::string* err) {
  u64 size = perm.size();
  std::vector<bool> seen(size, false);
  for (u64 i = 0; i < size; ++i) {
    if (perm[i] >= size || seen[perm[i]]) {
      if (err) *err = "not a permutation: duplicate or out-of-range image at " +
                      std::to_string(i);
      return std::nullopt;
    }
    seen[perm[i]] = true;
  }
  u64 len = 0, x = 0;
  do {
    x = perm[x];
    ++len;
  } while (x != 0 && len <= size);
  return len == size;
}

std::optional<bool> skew_product_cycle_check(const std::vector<u32>& base_perm,
                                             const std::vector<u32>& drift,
                                             u32 m, std::string* err) {
  auto single = is_single_cycle(base_perm, err);
  if (!single) return std::nullopt;
  if (!*single) {
    if (err) *err = "base permutation is not a single cycle";
    return std::nullopt;
  }
  if (drift.size() != base_perm.size()) {
    if (err) *err = "drift size mismatch";
    return std::nullopt;
  }
  u64 s = 0;
  for (u32 d : drift) s += d % m;
  return std::gcd(s % m, static_cast<u64>(m)) == 1;
}

std::optional<std::vector<std::array<Symbol, 7>>> matching_decomposition(
    const CountMatrix& cm, std::string* err) {
  std::string why;
  if (!check_count_matrix(cm, &why)) {
    if (err) *err = "invalid count matrix: " + why;
    return std::nullopt;
  }
  auto residual = cm.rows;
  std::vector<std::array<Symbol, 7>> layers;
  layers.reserve(cm.m);
  for (u32 round = 0; round < cm.m; ++round) {
    // Kuhn augmenting paths on the 7+7 bipartite graph of positive residuals
    std::array<int, 7> sym_owner;  // symbol -> matched color
    sym_owner.fill(-1);
    for (int c = 0; c < 7; ++c) {
      std::array<bool, 7> used{};
      // recursive augment with deterministic lowest-symbol scan
      auto augment = [&](auto&& self, int color) -> bool {
        for (int s = 0; s < 7; ++s) {
          if (residual[color][s] <= 0 || used[s]) continue;
          used[s] = true;
          if (sym_owner[s] < 0 || self(self, sym_owner[s])) {
            sym_owner[s] = color;
            return true;
          }
        }
        return false;
      };
      if (!augment(augment, c)) {
        if (err) *err = "no perfect matching in round " + std::to_string(round);
        return std::nullopt;
      }
    }
    std::array<Symbol, 7> layer{};
    for (int s = 0; s < 7; ++s) {
      layer[sym_owner[s]] = static_cast<Symbol>(s);
      --residual[sym_owner[s]][s];
    }
    layers.push_back(layer);
  }
  return layers;
}

std::optional<Schedule> build_schedule(u32 m, const std::vector<u32>* thresholds,
                                       std::string* err) {
  auto cm = count_matrix_for(m, err);
  if (!cm) return std::nullopt;
  auto layers = matching_decomposition(*cm, err);
  if (!layers) return std::nullopt;
  Schedule s;
  s.m = m;
  s.mu = std::move(*layers);
  if (thresholds) {
    if (thresholds->size() != m) {
      if (err) *err = "threshold list must have length m";
      return std::nullopt;
    }
    s.tau = *thresholds;
    for (u32& t : s.tau) t %= m;
  } else {
    s.tau.assign(m, 0);
  }
  return s;
}

Word color_word(const Schedule& s, u32 color) {
  Word w;
  w.reserve(s.m);
  for (u32 t = 0; t < s.m; ++t)
    w.push_back({to_word_symbol(s.mu[t][color]), s.tau[t]});
  return w;
}

std::array<int, 7> word_counts(const Word& w) {
  std::array<int, 7> counts{};
  for (const WordStep& st : w)
    if (st.xi != WordSymbol::T) ++counts[static_cast<int>(st.xi)];
  return counts;
}

}  // namespace rf7
