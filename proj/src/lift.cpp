#include "lift.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <thread>

namespace rf7 {

namespace {

// incremental walker over vertex indices: keeps the digit vector, the vertex
// index, the root-flat index of iota_sigma(x) x (= mixed radix of the first
// n-1 digits, since iota only touches the last coordinate), and sigma
struct Walker {
  const Certificate* c;
  u32 n, m;
  u64 states;
  std::vector<u64> pw;    // vertex digit weights
  std::vector<u64> pwrf;  // root-flat digit weights (first n-1 digits)
  std::vector<u8> x;
  u64 v = 0, rf = 0;
  u32 t = 0;

  explicit Walker(const Certificate& cert)
      : c(&cert), n(cert.n), m(cert.m), states(cert.states()), pw(n), pwrf(n - 1), x(n, 0) {
    for (u32 i = 0; i < n; ++i) pw[i] = ipow(m, n - 1 - i);
    for (u32 i = 0; i + 1 < n; ++i) pwrf[i] = ipow(m, n - 2 - i);
  }

  void seed(u64 vertex) {
    v = vertex;
    rf = vertex / m;
    u32 sum = 0;
    for (u32 i = n; i-- > 0;) {
      x[i] = static_cast<u8>(vertex % m);
      sum += x[i];
      vertex /= m;
    }
    t = sum % m;
  }

  u8 dir(u32 k) const { return c->d[(t * states + rf) * n + k]; }

  void step(u8 d) {
    if (x[d] + 1u == m) {
      x[d] = 0;
      v -= (m - 1) * pw[d];
      if (d + 1u < n) rf -= (m - 1) * pwrf[d];
    } else {
      ++x[d];
      v += pw[d];
      if (d + 1u < n) rf += pwrf[d];
    }
    t = (t + 1u == m) ? 0 : t + 1;
  }
};

struct Bitmap {
  std::vector<u64> bits;
  explicit Bitmap(u64 size) : bits((size + 63) / 64, 0) {}
  bool test_and_set(u64 i) {
    u64& word = bits[i >> 6];
    u64 bit = 1ull << (i & 63);
    if (word & bit) return true;
    word |= bit;
    return false;
  }
};

template <typename F>
void run_per_color(u32 n, u32 threads, F&& fn) {
  if (threads <= 1) {
    for (u32 k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<u32> next{0};
  std::vector<std::thread> pool;
  for (u32 i = 0; i < std::min(threads, n); ++i)
    pool.emplace_back([&] {
      for (u32 k; (k = next.fetch_add(1)) < n;) fn(k);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::optional<ArcColoring> lift_certificate(const Certificate& c, std::string* err) {
  u64 bytes = ipow(c.m, c.n) * c.n;
  if (bytes > (256ull << 20)) {
    if (err)
      *err = "arc-coloring table would need " + std::to_string(bytes >> 20) +
             " MiB; use streaming verification";
    return std::nullopt;
  }
  ArcColoring a;
  a.n = c.n;
  a.m = c.m;
  a.dir.resize(bytes);
  u64 states = c.states();
  Odometer od(c.n - 1, c.m);
  u32 digit_sum = 0;
  for (u64 rfi = 0; rfi < states; ++rfi) {
    for (u32 x_last = 0; x_last < c.m; ++x_last) {
      u32 t = (digit_sum + x_last) % c.m;
      std::memcpy(&a.dir[(rfi * c.m + x_last) * c.n], c.row(t, rfi), c.n);
    }
    for (u32 i = c.n - 1; i-- > 0;) {
      if (++od.d[i] < c.m) { ++digit_sum; break; }
      od.d[i] = 0;
      digit_sum -= c.m - 1;
    }
  }
  return a;
}

CycleReport verify_decomposition(const ArcColoring& a, u32 threads) {
  CycleReport rep;
  rep.mode = "table";
  u64 verts = a.vertices();
  rep.vertices = verts;
  for (u64 v = 0; v < verts; ++v) {
    u32 mask = 0;
    for (u32 k = 0; k < a.n; ++k) {
      u8 d = a.dir[v * a.n + k];
      if (d >= a.n || (mask & (1u << d))) {
        rep.pass = rep.arc_partition = false;
        rep.detail = "direction reuse at vertex " + std::to_string(v);
        return rep;
      }
      mask |= 1u << d;
    }
  }
  rep.lengths.assign(a.n, 0);
  std::vector<std::string> fail(a.n);
  std::vector<u64> pw(a.n);
  for (u32 i = 0; i < a.n; ++i) pw[i] = ipow(a.m, a.n - 1 - i);
  run_per_color(a.n, threads, [&](u32 k) {
    Bitmap seen(verts);
    std::vector<u8> x(a.n, 0);
    u64 v = 0, len = 0;
    while (!seen.test_and_set(v)) {
      u8 d = a.dir[v * a.n + k];
      if (x[d] + 1u == a.m) {
        x[d] = 0;
        v -= (a.m - 1) * pw[d];
      } else {
        ++x[d];
        v += pw[d];
      }
      ++len;
    }
    rep.lengths[k] = len;
    if (len != verts || v != 0)
      fail[k] = "color " + std::to_string(k) + " cycle closed after " +
                std::to_string(len) + " steps at vertex " + std::to_string(v);
  });
  for (u32 k = 0; k < a.n; ++k) {
    if (!fail[k].empty()) {
      rep.pass = rep.covered = false;
      rep.detail = fail[k];
      break;
    }
  }
  return rep;
}

CycleReport verify_lift_streaming(const Certificate& c, u32 threads) {
  CycleReport rep;
  rep.mode = "stream";
  u64 verts = ipow(c.m, c.n);
  rep.vertices = verts;
  u64 states = c.states();
  // arc partition: one odometer pass over vertices, no per-vertex storage
  {
    Odometer od(c.n - 1, c.m);
    u32 digit_sum = 0;
    for (u64 rfi = 0; rfi < states; ++rfi) {
      for (u32 x_last = 0; x_last < c.m; ++x_last) {
        u32 t = (digit_sum + x_last) % c.m;
        const u8* row = c.row(t, rfi);
        u32 mask = 0;
        for (u32 k = 0; k < c.n; ++k) {
          u8 d = row[k];
          if (d >= c.n || (mask & (1u << d))) {
            rep.pass = rep.arc_partition = false;
            rep.detail = "direction reuse at vertex " + std::to_string(rfi * c.m + x_last);
            return rep;
          }
          mask |= 1u << d;
        }
      }
      for (u32 i = c.n - 1; i-- > 0;) {
        if (++od.d[i] < c.m) { ++digit_sum; break; }
        od.d[i] = 0;
        digit_sum -= c.m - 1;
      }
    }
  }
  rep.lengths.assign(c.n, 0);
  std::vector<std::string> fail(c.n);
  run_per_color(c.n, threads, [&](u32 k) {
    Bitmap seen(verts);
    Walker walk(c);
    walk.seed(0);
    u64 len = 0;
    while (!seen.test_and_set(walk.v)) {
      walk.step(walk.dir(k));
      ++len;
    }
    rep.lengths[k] = len;
    if (len != verts || walk.v != 0)
      fail[k] = "color " + std::to_string(k) + " cycle closed after " +
                std::to_string(len) + " steps at vertex " + std::to_string(walk.v);
  });
  for (u32 k = 0; k < c.n; ++k) {
    if (!fail[k].empty()) {
      rep.pass = rep.covered = false;
      rep.detail = fail[k];
      break;
    }
  }
  return rep;
}

CycleReport verify_lift(const Certificate& c, u32 threads) {
  if (ipow(c.m, c.n) * c.n <= (256ull << 20)) {
    std::string err;
    auto coloring = lift_certificate(c, &err);
    if (coloring) return verify_decomposition(*coloring, threads);
  }
  return verify_lift_streaming(c, threads);
}

std::vector<u64> cycle_multiset(const std::vector<u32>& perm) {
  std::vector<u64> lens;
  std::vector<bool> seen(perm.size(), false);
  for (u64 s = 0; s < perm.size(); ++s) {
    if (seen[s]) continue;
    u64 len = 0, x = s;
    while (!seen[x]) {
      seen[x] = true;
      x = perm[x];
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

std::vector<u64> cayley_cycle_multiset(const Certificate& c, u32 kappa) {
  u64 verts = ipow(c.m, c.n);
  Bitmap seen(verts);
  std::vector<u64> lens;
  Walker walk(c);
  for (u64 s = 0; s < verts; ++s) {
    if (seen.test_and_set(s)) continue;
    walk.seed(s);
    u64 len = 0;
    do {
      walk.step(walk.dir(kappa));
      ++len;
      if (walk.v != s) seen.test_and_set(walk.v);
      // walks that never close happen only when the color subgraph is not a
      // permutation; record an impossible length 0 instead of spinning
      if (len > verts) {
        lens.push_back(0);
        len = 0;
        break;
      }
    } while (walk.v != s);
    if (len) lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end());
  return lens;
}

CrosscheckReport return_structure_crosscheck(const Certificate& c) {
  CrosscheckReport rep;
  CheckReport rf2 = check_layer_bijective(c);
  if (!rf2.pass) {
    rep.pass = false;
    rep.detail = "layer bijectivity failed; structure cross-check needs permutations (" +
                 rf2.detail + ")";
    return rep;
  }
  rep.return_multisets.resize(c.n);
  rep.cayley_multisets.resize(c.n);
  for (u32 k = 0; k < c.n; ++k) {
    rep.return_multisets[k] = cycle_multiset(return_map(c, k));
    rep.cayley_multisets[k] = cayley_cycle_multiset(c, k);
    std::vector<u64> scaled = rep.return_multisets[k];
    for (u64& len : scaled) len *= c.m;
    if (scaled != rep.cayley_multisets[k]) {
      rep.pass = false;
      rep.detail = "color " + std::to_string(k) +
                   ": Cayley cycle lengths differ from m * return-map cycle lengths";
    }
  }
  return rep;
}

bool export_cycles(const Certificate& c, u32 kappa, const std::string& path,
                   std::string* err) {
  u64 verts = ipow(c.m, c.n);
  std::ofstream f(path);
  if (!f) {
    if (err) *err = "cannot open " + path + " for writing";
    return false;
  }
  f << "cycle n=" << c.n << " m=" << c.m << " color=" << kappa << " len=" << verts
    << "\n";
  Walker walk(c);
  walk.seed(0);
  std::string buf;
  u64 len = 0;
  do {
    for (u32 i = 0; i < c.n; ++i) {
      if (i) buf += ' ';
      buf += std::to_string(static_cast<u32>(walk.x[i]));
    }
    buf += '\n';
    if (buf.size() > (1u << 16)) {
      f << buf;
      buf.clear();
    }
    walk.step(walk.dir(kappa));
    ++len;
  } while (walk.v != 0 && len < verts);
  f << buf;
  f.flush();
  if (walk.v != 0 || len != verts) {
    if (err)
      *err = "color " + std::to_string(kappa) + " is not a full Hamilton cycle (length " +
             std::to_string(len) + ")";
    return false;
  }
  if (!f) {
    if (err) *err = "write failed for " + path;
    return false;
  }
  return true;
}

bool export_direction_string(const Certificate& c, u32 kappa,
                             const std::string& path, std::string* err) {
  u64 verts = ipow(c.m, c.n);
  std::ofstream f(path);
  if (!f) {
    if (err) *err = "cannot open " + path + " for writing";
    return false;
  }
  Walker walk(c);
  walk.seed(0);
  std::string buf;
  u64 len = 0;
  do {
    u8 d = walk.dir(kappa);
    buf += static_cast<char>('0' + d);
    if (buf.size() > (1u << 16)) {
      f << buf;
      buf.clear();
    }
    walk.step(d);
    ++len;
  } while (walk.v != 0 && len < verts);
  f << buf << "\n";
  f.flush();
  if (walk.v != 0 || len != verts) {
    if (err)
      *err = "color " + std::to_string(kappa) + " is not a full Hamilton cycle (length " +
             std::to_string(len) + ")";
    return false;
  }
  return !!f;
}

}  // namespace rf7
