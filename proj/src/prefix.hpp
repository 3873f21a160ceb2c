#pragma once

#include <array>

#include "torus.hpp"

// Prefix coordinates: the suffix-sum chart of the 7-dimensional root flat,
// the threshold function rho, and the seven one-layer symbol maps with their
// explicit inverses.
//
// Labels are 1-based (rho convention); label 0 belongs to the identity
// symbol. The single site converting a label to a Cayley direction (6 - label)
// is certificate_from_schedule.

namespace rf7 {

// symbol alphabet; enum value doubles as the count-matrix column index
enum class Symbol : u8 { Zero = 0, Delta = 1, N2 = 2, N3 = 3, N4 = 4, N5 = 5, N6 = 6 };

constexpr std::array<Symbol, 7> kAllSymbols = {
    Symbol::Zero, Symbol::Delta, Symbol::N2, Symbol::N3,
    Symbol::N4,   Symbol::N5,    Symbol::N6};

const char* symbol_name(Symbol s);

// point of Q_r = (Z_m)^r, r = z.size() <= 6; z[i] is the 1-based prefix
// coordinate z_{i+1}
struct PrefixPoint {
  u32 m = 0;
  std::vector<u8> z;

  PrefixPoint() = default;
  PrefixPoint(u32 r, u32 m_) : m(m_), z(r, 0) {}
  u32 r() const { return static_cast<u32>(z.size()); }
  bool operator==(const PrefixPoint& o) const { return m == o.m && z == o.z; }
};

// suffix-sum chart, n = 7 only: phi(w)_j = w_{7-j} + ... + w_6
PrefixPoint phi(const ModVec& w);
ModVec phi_inv(const PrefixPoint& z);

// first 1-based index i <= r with z_i = tau, else r
u32 rho(u32 tau, const PrefixPoint& z);

// the label a symbol uses at a state with rho value rv (Zero -> 0, Delta -> rv,
// numeric a -> a if rv < a else a - 1)
u32 symbol_label(Symbol xi, u32 rv);

// numeric symbol a requires dimension r >= a
bool symbol_in_dim(Symbol xi, u32 r);

struct SymbolApply {
  PrefixPoint point;
  u32 label = 0;  // prefix label actually used, in [0, r]
};

// the one-layer map M^xi_tau together with the label it used
SymbolApply apply_symbol(Symbol xi, u32 tau, const PrefixPoint& z);

// unique preimage under apply_symbol
PrefixPoint invert_symbol(Symbol xi, u32 tau, const PrefixPoint& y);

// labels used by the seven symbols at z (r = 6); contract: a permutation of 0..6
std::array<u32, 7> layer_label_census(u32 tau, const PrefixPoint& z);

}  // namespace rf7
