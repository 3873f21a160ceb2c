#pragma once

#include "certificate.hpp"

// Lift a certificate to an arc-coloring of the full torus and verify the
// Hamilton decomposition by direct traversal of the Cayley digraph. The
// verification deliberately works on vertex indices over all n coordinates
// and never reuses root-flat machinery beyond reading directions.
//
// Two modes: a materialized (vertex, color) table for small m, and a
// streaming mode that reads directions off the certificate per visited
// vertex, with a visited bitmap per color.

namespace rf7 {

struct ArcColoring {
  u32 n = 0;
  u32 m = 0;
  std::vector<u8> dir;  // [vertex * n + color] = outgoing direction

  u64 vertices() const { return ipow(m, n); }
};

// direction(x, kappa) = d_sigma(x)(iota_sigma(x) x, kappa) for every vertex;
// fails if the table would exceed the memory guard
std::optional<ArcColoring> lift_certificate(const Certificate& c, std::string* err);

struct CycleReport {
  bool pass = true;
  std::string detail;
  u64 vertices = 0;
  bool arc_partition = true;
  bool covered = true;
  std::vector<u64> lengths;  // per color: walk length from vertex 0
  std::string mode;          // "table" or "stream"
};

// independent oracle on a materialized coloring: per-vertex direction
// partition plus one walk per color with a visited bitmap
CycleReport verify_decomposition(const ArcColoring& a, u32 threads = 1);

// same contract, streaming directions from the certificate (for m beyond the
// table guard); the arc-partition check is a separate full odometer pass
CycleReport verify_lift_streaming(const Certificate& c, u32 threads = 1);

// table mode when it fits, streaming otherwise
CycleReport verify_lift(const Certificate& c, u32 threads = 1);

// sorted cycle-length multiset of a dense permutation
std::vector<u64> cycle_multiset(const std::vector<u32>& perm);

// sorted cycle-length multiset of color kappa's subgraph on the full torus
std::vector<u64> cayley_cycle_multiset(const Certificate& c, u32 kappa);

struct CrosscheckReport {
  bool pass = true;
  std::string detail;
  std::vector<std::vector<u64>> return_multisets;  // per color
  std::vector<std::vector<u64>> cayley_multisets;  // per color
};

// cross-checks that each color's torus cycle multiset is exactly its
// return-map multiset scaled by m; requires layer bijectivity, works for
// certificates with broken returns
CrosscheckReport return_structure_crosscheck(const Certificate& c);

// writes color kappa's cycle from vertex 0: header line then one vertex per
// line; expects (and reports otherwise) a full m^n cycle
bool export_cycles(const Certificate& c, u32 kappa, const std::string& path,
                   std::string* err);

// compact form: single line of m^n direction characters '0'..'6'
bool export_direction_string(const Certificate& c, u32 kappa,
                             const std::string& path, std::string* err);

}  // namespace rf7
