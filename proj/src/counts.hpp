#pragma once

#include <optional>
#include <string>

#include "prefix.hpp"

// Count-matrix families, the gcd symbol-count criterion, the skew-product
// oracle, the matching decomposition into per-layer symbol bijections, and
// word-level return maps over Q_r.

namespace rf7 {

// 7x7 color-by-symbol occurrence matrix, columns in symbol order (0,D,2..6)
struct CountMatrix {
  u32 m = 0;
  std::array<std::array<int, 7>, 7> rows{};
};

// word alphabet = schedule symbols plus the full-translation T used only by
// the induction oracle (T subtracts p_r on Q_r regardless of threshold)
enum class WordSymbol : u8 {
  Zero = 0, Delta = 1, N2 = 2, N3 = 3, N4 = 4, N5 = 5, N6 = 6, T = 7
};

inline WordSymbol to_word_symbol(Symbol s) { return static_cast<WordSymbol>(s); }

struct WordStep {
  WordSymbol xi = WordSymbol::Zero;
  u32 tau = 0;
};
using Word = std::vector<WordStep>;  // length m

// per layer t: a color -> symbol bijection and the layer threshold
struct Schedule {
  u32 m = 0;
  std::vector<std::array<Symbol, 7>> mu;
  std::vector<u32> tau;
};

// the published matrix family for odd m >= 7; for m in {3,5} fails with the
// boundary-obstruction explanation
std::optional<CountMatrix> count_matrix_for(u32 m, std::string* err);

// row/column sums and nonnegativity
bool check_count_matrix(const CountMatrix& cm, std::string* why);

// gcd(N_0, m) = 1 and gcd(N_k - N_Delta, m) = 1 for k = 2..6
bool check_count_criterion(const std::array<int, 7>& row, u32 m);

// name of the family a modulus falls in ("m=7", "6s+1", "6s+3", "6s+5")
const char* matrix_family_name(u32 m);

// applies one word symbol in place on z (length r); returns the prefix label
// used, i.e. the number of leading coordinates decremented (T uses r)
u32 apply_word_symbol(WordSymbol xi, u32 tau, u8* z, u32 r, u32 m);

// R_W as a dense permutation of Q_r indices (z_1 most significant);
// null if some numeric symbol exceeds r
std::optional<std::vector<u32>> word_return_map(const Word& w, u32 r, u32 m,
                                                std::string* err);

// true iff perm is a permutation forming one cycle; *err set on non-permutation
std::optional<bool> is_single_cycle(const std::vector<u32>& perm, std::string* err);

// base_perm must be a single cycle on X; decides whether the skew product
// (x,y) -> (base(x), y + drift[x]) is a single cycle on X x Z_m, which holds
// iff the total drift around the base cycle is a unit mod m
std::optional<bool> skew_product_cycle_check(const std::vector<u32>& base_perm,
                                             const std::vector<u32>& drift,
                                             u32 m, std::string* err);

// m color->symbol bijections whose multiset union reproduces cm exactly;
// deterministic (lowest color, then lowest symbol tie-breaking)
std::optional<std::vector<std::array<Symbol, 7>>> matching_decomposition(
    const CountMatrix& cm, std::string* err);

// count matrix -> matching decomposition -> schedule; thresholds default to 0
std::optional<Schedule> build_schedule(u32 m, const std::vector<u32>* thresholds,
                                       std::string* err);

// the length-m word color kappa follows through a schedule
Word color_word(const Schedule& s, u32 color);

// symbol counts of a word, T excluded from the 7 columns (oracle-only symbol)
std::array<int, 7> word_counts(const Word& w);

}  // namespace rf7
