#pragma once

#include <optional>
#include <string>

#include "counts.hpp"

// The root-flat certificate: per-layer direction tables d_t(w, kappa), the
// three validity checks (row Latinness, layer bijectivity, primitive
// returns), construction from a schedule, and the file formats.
//
// The checker is generic in n (n >= 2); the constructive pipeline is n = 7.

namespace rf7 {

struct Certificate {
  u32 n = 0;
  u32 m = 0;
  // dense direction bytes in (t, w, kappa) order, the binary file order
  std::vector<u8> d;

  u64 states() const { return ipow(m, n - 1); }

  u8 at(u32 t, u64 w, u32 k) const { return d[(t * states() + w) * n + k]; }
  void set(u32 t, u64 w, u32 k, u8 dir) { d[(t * states() + w) * n + k] = dir; }

  // row pointer for fixed (t, w): n direction bytes, one per color
  const u8* row(u32 t, u64 w) const { return &d[(t * states() + w) * n]; }

  static std::optional<Certificate> create(u32 n, u32 m, std::string* err);
};

// result of one validity check; locus fields identify the first violation in
// canonical (t, w, kappa) order
struct CheckReport {
  bool pass = true;
  std::string detail;
  u32 t = 0;
  u64 w = 0;
  u32 kappa = 0;
  std::vector<u64> cycle_lengths;  // primitive-return check: orbit of 0 per color
};

// C1: for every (t, w) the n colors use n distinct directions
CheckReport check_row_latin(const Certificate& c);

// C2: every P_{t,kappa}(w) = w + q_{d_t(w,kappa)} is a permutation
CheckReport check_layer_bijective(const Certificate& c);

// C3: every color's return map is a single cycle of length m^(n-1);
// refuses to run (pass = false, detail says so) if C2 fails
CheckReport check_primitive_return(const Certificate& c);

// materialize P_{t,kappa} as a dense image array (out resized to states())
void layer_permutation(const Certificate& c, u32 t, u32 k, std::vector<u32>& out);

// compose the m layer permutations of one color: R = P_{m-1} ... P_0
std::vector<u32> return_map(const Certificate& c, u32 k);

// schedule -> certificate via the prefix chart; the chart identity
// phi(w + q_d) = M(phi(w)) is re-verified on a sample of states per layer
std::optional<Certificate> certificate_from_schedule(const Schedule& s,
                                                     std::string* err);

bool write_certificate_text(const Certificate& c, const std::string& path,
                            std::string* err);
bool write_certificate_binary(const Certificate& c, const std::string& path,
                              std::string* err);

// reads either format (sniffs the magic); validates header ranges, table
// size, and direction entries before constructing
std::optional<Certificate> read_certificate(const std::string& path,
                                            std::string* err);

}  // namespace rf7
