#include "prefix.hpp"

#include <cassert>

namespace rf7 {

const char* symbol_name(Symbol s) {
  switch (s) {
    case Symbol::Zero: return "0";
    case Symbol::Delta: return "D";
    case Symbol::N2: return "2";
    case Symbol::N3: return "3";
    case Symbol::N4: return "4";
    case Symbol::N5: return "5";
    case Symbol::N6: return "6";
  }
  return "?";
}

PrefixPoint phi(const ModVec& w) {
  assert(w.n() == 7);
  PrefixPoint p(6, w.m);
  u32 acc = 0;
  for (u32 j = 1; j <= 6; ++j) {
    acc = (acc + w.e[7 - j]) % w.m;
    p.z[j - 1] = static_cast<u8>(acc);
  }
  return p;
}

ModVec phi_inv(const PrefixPoint& p) {
  assert(p.r() == 6);
  u32 m = p.m;
  ModVec w(7, m);
  w.e[6] = p.z[0];
  for (u32 i = 1; i <= 5; ++i)
    w.e[i] = static_cast<u8>((p.z[6 - i] + m - p.z[5 - i]) % m);
  w.e[0] = static_cast<u8>((m - p.z[5]) % m);
  return w;
}

u32 rho(u32 tau, const PrefixPoint& z) {
  u32 r = z.r();
  for (u32 i = 0; i < r; ++i)
    if (z.z[i] == tau) return i + 1;
  return r;
}

u32 symbol_label(Symbol xi, u32 rv) {
  if (xi == Symbol::Zero) return 0;
  if (xi == Symbol::Delta) return rv;
  u32 a = static_cast<u32>(xi);
  return rv < a ? a : a - 1;
}

bool symbol_in_dim(Symbol xi, u32 r) {
  if (xi == Symbol::Zero || xi == Symbol::Delta) return true;
  return static_cast<u32>(xi) <= r;
}

static void sub_prefix(PrefixPoint& z, u32 k) {
  // subtract p_k = (1,...,1,0,...,0) with k ones
  for (u32 i = 0; i < k; ++i)
    z.z[i] = static_cast<u8>(z.z[i] == 0 ? z.m - 1 : z.z[i] - 1);
}

SymbolApply apply_symbol(Symbol xi, u32 tau, const PrefixPoint& z) {
  assert(symbol_in_dim(xi, z.r()));
  SymbolApply out{z, 0};
  if (xi == Symbol::Zero) return out;
  out.label = symbol_label(xi, rho(tau, z));
  sub_prefix(out.point, out.label);
  return out;
}

PrefixPoint invert_symbol(Symbol xi, u32 tau, const PrefixPoint& y) {
  assert(symbol_in_dim(xi, y.r()));
  if (xi == Symbol::Zero) return y;
  u32 m = y.m;
  PrefixPoint z = y;
  if (xi == Symbol::Delta) {
    u32 k = rho((tau + m - 1) % m, y);
    for (u32 i = 0; i < k; ++i) z.z[i] = static_cast<u8>((z.z[i] + 1) % m);
    return z;
  }
  u32 a = static_cast<u32>(xi);
  bool hit = false;
  for (u32 i = 0; i + 1 < a; ++i) {
    if (y.z[i] == (tau + m - 1) % m) hit = true;
    z.z[i] = static_cast<u8>((z.z[i] + 1) % m);
  }
  if (hit) z.z[a - 1] = static_cast<u8>((z.z[a - 1] + 1) % m);
  return z;
}

std::array<u32, 7> layer_label_census(u32 tau, const PrefixPoint& z) {
  assert(z.r() == 6);
  std::array<u32, 7> labels{};
  u32 rv = rho(tau, z);
  for (u32 s = 0; s < 7; ++s) labels[s] = symbol_label(kAllSymbols[s], rv);
  return labels;
}

}  // namespace rf7
