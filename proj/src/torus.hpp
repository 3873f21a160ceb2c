#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Modular-vector arithmetic, the root flat, the layer function, and the
// index codecs shared by every other module.
//
// Conventions fixed here and used everywhere else:
//   - a root-flat point w has coordinate sum 0 mod m; its dense index is the
//     mixed-radix value of (w_0, ..., w_{n-2}) base m, w_0 most significant;
//     the dependent coordinate is the last one, w_{n-1} = -(w_0+...+w_{n-2}).
//   - a vertex index is the mixed-radix value over all n coordinates, again
//     w_0 most significant.
//   - direction i < n-1 steps a root-flat point by q_i = e_i - e_{n-1};
//     direction n-1 is the zero step.

namespace rf7 {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

// length-n vector over Z_m; entries kept canonical in [0, m)
struct ModVec {
  u32 m = 0;
  std::vector<u8> e;

  ModVec() = default;
  ModVec(u32 n, u32 m_) : m(m_), e(n, 0) {}

  u32 n() const { return static_cast<u32>(e.size()); }

  static ModVec basis(u32 n, u32 m, u32 i);

  ModVec add(const ModVec& o) const;
  ModVec sub(const ModVec& o) const;
  bool operator==(const ModVec& o) const { return m == o.m && e == o.e; }
};

u64 ipow(u64 base, u32 exp);

// layer function: coordinate sum mod m
u32 sigma(const ModVec& x);

// root-flat chart for layer t: iota(t, x) = x - t*e_{n-1}; requires sigma(x) == t
std::optional<ModVec> iota(u32 t, const ModVec& x);
ModVec iota_inv(u32 t, const ModVec& w);

// w + q_i (q_{n-1} = 0); works on any ModVec, root-flat membership is preserved
ModVec step_direction(const ModVec& w, u32 i);

// dense root-flat index over the first n-1 coordinates
u64 rf_index(const ModVec& w);
ModVec rf_point(u32 n, u32 m, u64 index);
bool is_root_flat(const ModVec& w);

// dense vertex index over all n coordinates
u64 vertex_index(const ModVec& x);
ModVec vertex_point(u32 n, u32 m, u64 index);

// mixed-radix odometer over k digits base m, digit 0 most significant;
// next() advances and reports false exactly on wrap-around to all zeros
struct Odometer {
  u32 m = 0;
  std::vector<u8> d;

  Odometer(u32 k, u32 m_) : m(m_), d(k, 0) {}
  bool next() {
    for (u32 i = static_cast<u32>(d.size()); i-- > 0;) {
      if (++d[i] < m) return true;
      d[i] = 0;
    }
    return false;
  }
};

// dense step table over root-flat indices: entry [w*n + i] = index of w + q_i.
// Intended for small state counts (the boundary search); the big checkers use
// odometer scans instead.
std::vector<u32> build_rf_step_table(u32 n, u32 m);

}  // namespace rf7
