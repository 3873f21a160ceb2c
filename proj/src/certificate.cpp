#include "certificate.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace rf7 {

std::optional<Certificate> Certificate::create(u32 n, u32 m, std::string* err) {
  if (n < 2 || n > 8) {
    if (err) *err = "n must be in [2, 8]";
    return std::nullopt;
  }
  if (m < 2 || m > 99) {
    if (err) *err = "m must be in [2, 99]";
    return std::nullopt;
  }
  u64 bytes = ipow(m, n - 1) * m * n;
  if (bytes > (3ull << 30)) {
    if (err)
      *err = "certificate would need " + std::to_string(bytes >> 20) +
             " MiB; refusing (practical ceiling is m = 15 for n = 7)";
    return std::nullopt;
  }
  Certificate c;
  c.n = n;
  c.m = m;
  c.d.assign(bytes, 0);
  return c;
}

CheckReport check_row_latin(const Certificate& c) {
  CheckReport rep;
  u64 states = c.states();
  for (u32 t = 0; t < c.m; ++t) {
    const u8* p = c.row(t, 0);
    for (u64 w = 0; w < states; ++w, p += c.n) {
      u32 mask = 0;
      for (u32 k = 0; k < c.n; ++k) {
        u8 dir = p[k];
        if (dir >= c.n || (mask & (1u << dir))) {
          rep.pass = false;
          rep.t = t;
          rep.w = w;
          rep.kappa = k;
          rep.detail = "row not Latin at t=" + std::to_string(t) +
                       " w=" + std::to_string(w) + " color=" + std::to_string(k);
          return rep;
        }
        mask |= 1u << dir;
      }
    }
  }
  return rep;
}

void layer_permutation(const Certificate& c, u32 t, u32 k, std::vector<u32>& out) {
  u64 states = c.states();
  out.resize(states);
  u32 nd = c.n - 1;
  std::vector<u64> pw(nd);
  for (u32 i = 0; i < nd; ++i) pw[i] = ipow(c.m, nd - 1 - i);
  Odometer od(nd, c.m);
  const u8* base = c.row(t, 0);
  for (u64 w = 0; w < states; ++w) {
    u8 dir = base[w * c.n + k];
    u64 img = w;
    if (dir < nd) img = (od.d[dir] + 1u == c.m) ? w - (c.m - 1) * pw[dir] : w + pw[dir];
    out[w] = static_cast<u32>(img);
    od.next();
  }
}

CheckReport check_layer_bijective(const Certificate& c) {
  CheckReport rep;
  u64 states = c.states();
  std::vector<u32> image;
  std::vector<u32> preimage(states);
  constexpr u32 kNone = 0xffffffffu;
  for (u32 t = 0; t < c.m; ++t) {
    for (u32 k = 0; k < c.n; ++k) {
      layer_permutation(c, t, k, image);
      std::fill(preimage.begin(), preimage.end(), kNone);
      for (u64 w = 0; w < states; ++w) {
        u32 img = image[w];
        if (preimage[img] != kNone) {
          rep.pass = false;
          rep.t = t;
          rep.kappa = k;
          rep.w = w;
          rep.detail = "layer not bijective at t=" + std::to_string(t) +
                       " color=" + std::to_string(k) + ": states " +
                       std::to_string(preimage[img]) + " and " + std::to_string(w) +
                       " both map to " + std::to_string(img);
          return rep;
        }
        preimage[img] = static_cast<u32>(w);
      }
    }
  }
  return rep;
}

std::vector<u32> return_map(const Certificate& c, u32 k) {
  u64 states = c.states();
  std::vector<u32> cur(states), layer;
  for (u64 w = 0; w < states; ++w) cur[w] = static_cast<u32>(w);
  for (u32 t = 0; t < c.m; ++t) {
    layer_permutation(c, t, k, layer);
    for (u64 w = 0; w < states; ++w) cur[w] = layer[cur[w]];
  }
  return cur;
}

CheckReport check_primitive_return(const Certificate& c) {
  CheckReport rep;
  CheckReport rf2 = check_layer_bijective(c);
  if (!rf2.pass) {
    rep.pass = false;
    rep.detail = "layer bijectivity failed; return check not run (" + rf2.detail + ")";
    return rep;
  }
  u64 states = c.states();
  rep.cycle_lengths.assign(c.n, 0);
  for (u32 k = 0; k < c.n; ++k) {
    std::vector<u32> r = return_map(c, k);
    u64 len = 0, x = 0;
    do {
      x = r[x];
      ++len;
    } while (x != 0 && len <= states);
    rep.cycle_lengths[k] = len;
    if (len != states && rep.pass) {
      rep.pass = false;
      rep.kappa = k;
      rep.detail = "return map of color " + std::to_string(k) + " has a cycle of length " +
                   std::to_string(len) + " instead of " + std::to_string(states);
    }
  }
  return rep;
}

std::optional<Certificate> certificate_from_schedule(const Schedule& s,
                                                     std::string* err) {
  auto cert = Certificate::create(7, s.m, err);
  if (!cert) return std::nullopt;
  u32 m = s.m;
  u64 states = cert->states();
  // direction for (rho value, symbol): 6 - label
  u8 dir_of[7][7];  // rho value 1..6 used; index 0 unused
  for (u32 rv = 1; rv <= 6; ++rv)
    for (u32 sy = 0; sy < 7; ++sy)
      dir_of[rv][sy] = static_cast<u8>(6 - symbol_label(static_cast<Symbol>(sy), rv));
  for (u32 t = 0; t < m; ++t) {
    u32 tau = s.tau[t];
    const std::array<Symbol, 7>& mu = s.mu[t];
    u8* out = &cert->d[t * states * 7];
    Odometer od(6, m);
    u32 digit_sum = 0;  // of od.d, maintained incrementally below
    for (u64 w = 0; w < states; ++w) {
      // z = suffix sums of (w_0..w_5, w_6) with w_6 the dependent coordinate
      u32 w6 = (m - digit_sum % m) % m;
      u32 acc = w6;
      u32 rv = (acc == tau) ? 1 : 0;
      if (!rv) {
        for (u32 j = 2; j <= 6; ++j) {
          acc += od.d[7 - j];  // z_j = z_{j-1} + w_{7-j}
          if (acc >= m) acc -= m;
          if (acc == tau) { rv = j; break; }
        }
        if (!rv) rv = 6;
      }
      for (u32 k = 0; k < 7; ++k)
        out[w * 7 + k] = dir_of[rv][static_cast<u32>(mu[k])];
      // odometer step with digit-sum maintenance
      for (u32 i = 6; i-- > 0;) {
        if (++od.d[i] < m) { ++digit_sum; break; }
        od.d[i] = 0;
        digit_sum -= m - 1;
      }
    }
    // re-verify the chart identity phi(w + q_d) = M(phi(w)) on a sample
    u64 stride = states > 64 ? states / 64 : 1;
    for (u64 w = 0; w < states; w += stride) {
      ModVec wp = rf_point(7, m, w);
      PrefixPoint z = phi(wp);
      for (u32 k = 0; k < 7; ++k) {
        SymbolApply a = apply_symbol(mu[k], tau, z);
        u8 dir = out[w * 7 + k];
        if (!(phi(step_direction(wp, dir)) == a.point) || dir != 6 - a.label) {
          if (err)
            *err = "chart identity violated at t=" + std::to_string(t) +
                   " w=" + std::to_string(w) + " color=" + std::to_string(k);
          return std::nullopt;
        }
      }
    }
  }
  return cert;
}

bool write_certificate_text(const Certificate& c, const std::string& path,
                            std::string* err) {
  std::ofstream f(path);
  if (!f) {
    if (err) *err = "cannot open " + path + " for writing";
    return false;
  }
  f << "rootflat-certificate v1\n";
  f << "n " << c.n << "\n";
  f << "m " << c.m << "\n";
  u64 states = c.states();
  std::string line;
  for (u32 t = 0; t < c.m; ++t) {
    f << "layer " << t << "\n";
    const u8* p = c.row(t, 0);
    for (u64 w = 0; w < states; ++w) {
      line.clear();
      for (u32 k = 0; k < c.n; ++k) {
        if (k) line += ' ';
        line += static_cast<char>('0' + p[w * c.n + k]);
      }
      line += '\n';
      f << line;
    }
  }
  f.flush();
  if (!f) {
    if (err) *err = "write failed for " + path;
    return false;
  }
  return true;
}

bool write_certificate_binary(const Certificate& c, const std::string& path,
                              std::string* err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    if (err) *err = "cannot open " + path + " for writing";
    return false;
  }
  u8 header[16] = {'R', 'F', 'C', '1'};
  auto put_u32 = [&](u32 off, u32 v) {
    header[off] = static_cast<u8>(v);
    header[off + 1] = static_cast<u8>(v >> 8);
    header[off + 2] = static_cast<u8>(v >> 16);
    header[off + 3] = static_cast<u8>(v >> 24);
  };
  put_u32(4, c.n);
  put_u32(8, c.m);
  put_u32(12, 0);
  f.write(reinterpret_cast<const char*>(header), 16);
  f.write(reinterpret_cast<const char*>(c.d.data()),
          static_cast<std::streamsize>(c.d.size()));
  f.flush();
  if (!f) {
    if (err) *err = "write failed for " + path;
    return false;
  }
  return true;
}

namespace {

std::optional<Certificate> read_binary(std::ifstream& f, const std::string& path,
                                       std::string* err) {
  u8 header[16];
  f.read(reinterpret_cast<char*>(header), 16);
  if (f.gcount() != 16) {
    if (err) *err = path + ": truncated header";
    return std::nullopt;
  }
  auto get_u32 = [&](u32 off) {
    return static_cast<u32>(header[off]) | (static_cast<u32>(header[off + 1]) << 8) |
           (static_cast<u32>(header[off + 2]) << 16) |
           (static_cast<u32>(header[off + 3]) << 24);
  };
  u32 n = get_u32(4), m = get_u32(8);
  auto cert = Certificate::create(n, m, err);
  if (!cert) {
    if (err) *err = path + ": bad header: " + *err;
    return std::nullopt;
  }
  f.read(reinterpret_cast<char*>(cert->d.data()),
         static_cast<std::streamsize>(cert->d.size()));
  if (static_cast<u64>(f.gcount()) != cert->d.size()) {
    if (err)
      *err = path + ": expected " + std::to_string(cert->d.size()) +
             " direction bytes, got " + std::to_string(f.gcount());
    return std::nullopt;
  }
  char extra;
  if (f.read(&extra, 1), f.gcount() != 0) {
    if (err) *err = path + ": trailing bytes after table";
    return std::nullopt;
  }
  for (u64 i = 0; i < cert->d.size(); ++i) {
    if (cert->d[i] >= n) {
      if (err)
        *err = path + ": direction byte " + std::to_string(cert->d[i]) +
               " out of range at offset " + std::to_string(16 + i);
      return std::nullopt;
    }
  }
  return cert;
}

std::optional<Certificate> read_text(std::ifstream& f, const std::string& path,
                                     std::string* err) {
  auto fail = [&](u64 lineno, const std::string& msg) {
    if (err) *err = path + ":" + std::to_string(lineno) + ": " + msg;
  };
  std::string line;
  u64 lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(f, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line() || line != "rootflat-certificate v1") {
    fail(lineno, "expected header 'rootflat-certificate v1'");
    return std::nullopt;
  }
  u32 n = 0, m = 0;
  if (!next_line() || sscanf(line.c_str(), "n %u", &n) != 1) {
    fail(lineno, "expected 'n <dimension>'");
    return std::nullopt;
  }
  if (!next_line() || sscanf(line.c_str(), "m %u", &m) != 1) {
    fail(lineno, "expected 'm <modulus>'");
    return std::nullopt;
  }
  auto cert = Certificate::create(n, m, err);
  if (!cert) {
    fail(lineno, *err);
    return std::nullopt;
  }
  u64 states = cert->states();
  for (u32 t = 0; t < m; ++t) {
    u32 got_t = 0;
    if (!next_line() || sscanf(line.c_str(), "layer %u", &got_t) != 1 || got_t != t) {
      fail(lineno, "expected 'layer " + std::to_string(t) + "'");
      return std::nullopt;
    }
    for (u64 w = 0; w < states; ++w) {
      if (!next_line()) {
        fail(lineno, "truncated: expected " + std::to_string(states) +
                         " rows in layer " + std::to_string(t) + ", got " +
                         std::to_string(w));
        return std::nullopt;
      }
      const char* p = line.c_str();
      for (u32 k = 0; k < n; ++k) {
        while (*p == ' ') ++p;
        if (*p < '0' || *p > '9') {
          fail(lineno, "expected digit for color " + std::to_string(k));
          return std::nullopt;
        }
        u32 dir = 0;
        while (*p >= '0' && *p <= '9') dir = dir * 10 + static_cast<u32>(*p++ - '0');
        if (dir >= n) {
          fail(lineno, "direction " + std::to_string(dir) + " out of range");
          return std::nullopt;
        }
        cert->set(t, w, k, static_cast<u8>(dir));
      }
      while (*p == ' ') ++p;
      if (*p) {
        fail(lineno, "trailing characters after " + std::to_string(n) + " entries");
        return std::nullopt;
      }
    }
  }
  if (next_line()) {
    fail(lineno, "unexpected content after final layer");
    return std::nullopt;
  }
  return cert;
}

}  // namespace

std::optional<Certificate> read_certificate(const std::string& path,
                                            std::string* err) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    if (err) *err = "cannot open " + path;
    return std::nullopt;
  }
  char magic[4] = {0, 0, 0, 0};
  f.read(magic, 4);
  f.seekg(0);
  if (f.gcount() == 4 && std::memcmp(magic, "RFC1", 4) == 0)
    return read_binary(f, path, err);
  f.clear();
  f.seekg(0);
  return read_text(f, path, err);
}

}  // namespace rf7
