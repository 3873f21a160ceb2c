#include "torus.hpp"

#include <cassert>

namespace rf7 {

ModVec ModVec::basis(u32 n, u32 m, u32 i) {
  ModVec v(n, m);
  v.e[i] = static_cast<u8>(1 % m);
  return v;
}

ModVec ModVec::add(const ModVec& o) const {
  assert(m == o.m && e.size() == o.e.size());
  ModVec r(n(), m);
  for (u32 i = 0; i < n(); ++i) {
    u32 s = static_cast<u32>(e[i]) + o.e[i];
    r.e[i] = static_cast<u8>(s >= m ? s - m : s);
  }
  return r;
}

ModVec ModVec::sub(const ModVec& o) const {
  assert(m == o.m && e.size() == o.e.size());
  ModVec r(n(), m);
  for (u32 i = 0; i < n(); ++i) {
    u32 s = static_cast<u32>(e[i]) + m - o.e[i];
    r.e[i] = static_cast<u8>(s >= m ? s - m : s);
  }
  return r;
}

u64 ipow(u64 base, u32 exp) {
  u64 r = 1;
  while (exp--) r *= base;
  return r;
}

u32 sigma(const ModVec& x) {
  u32 s = 0;
  for (u8 v : x.e) s += v;
  return s % x.m;
}

std::optional<ModVec> iota(u32 t, const ModVec& x) {
  if (sigma(x) != t % x.m) return std::nullopt;
  ModVec w = x;
  u32 last = w.n() - 1;
  u32 v = static_cast<u32>(w.e[last]) + x.m - (t % x.m);
  w.e[last] = static_cast<u8>(v % x.m);
  return w;
}

ModVec iota_inv(u32 t, const ModVec& w) {
  ModVec x = w;
  u32 last = x.n() - 1;
  x.e[last] = static_cast<u8>((x.e[last] + t) % x.m);
  return x;
}

ModVec step_direction(const ModVec& w, u32 i) {
  u32 last = w.n() - 1;
  if (i == last) return w;
  ModVec r = w;
  r.e[i] = static_cast<u8>(r.e[i] + 1u == w.m ? 0 : r.e[i] + 1);
  r.e[last] = static_cast<u8>(r.e[last] == 0 ? w.m - 1 : r.e[last] - 1);
  return r;
}

u64 rf_index(const ModVec& w) {
  u64 idx = 0;
  for (u32 i = 0; i + 1 < w.n(); ++i) idx = idx * w.m + w.e[i];
  return idx;
}

ModVec rf_point(u32 n, u32 m, u64 index) {
  ModVec w(n, m);
  u32 sum = 0;
  for (u32 i = n - 1; i-- > 0;) {
    w.e[i] = static_cast<u8>(index % m);
    sum += w.e[i];
    index /= m;
  }
  w.e[n - 1] = static_cast<u8>((m - sum % m) % m);
  return w;
}

bool is_root_flat(const ModVec& w) { return sigma(w) == 0; }

u64 vertex_index(const ModVec& x) {
  u64 idx = 0;
  for (u32 i = 0; i < x.n(); ++i) idx = idx * x.m + x.e[i];
  return idx;
}

ModVec vertex_point(u32 n, u32 m, u64 index) {
  ModVec x(n, m);
  for (u32 i = n; i-- > 0;) {
    x.e[i] = static_cast<u8>(index % m);
    index /= m;
  }
  return x;
}

std::vector<u32> build_rf_step_table(u32 n, u32 m) {
  u64 states = ipow(m, n - 1);
  std::vector<u32> step(states * n);
  std::vector<u64> pw(n - 1);
  for (u32 i = 0; i < n - 1; ++i) pw[i] = ipow(m, n - 2 - i);
  Odometer od(n - 1, m);
  for (u64 w = 0; w < states; ++w) {
    for (u32 i = 0; i < n - 1; ++i) {
      u64 img = (od.d[i] + 1u == m) ? w - (m - 1) * pw[i] : w + pw[i];
      step[w * n + i] = static_cast<u32>(img);
    }
    step[w * n + (n - 1)] = static_cast<u32>(w);
    od.next();
  }
  return step;
}

}  // namespace rf7
