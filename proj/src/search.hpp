#pragma once

#include <functional>

#include "lift.hpp"
#include "report.hpp"

// Boundary-certificate search for m in {3, 5}, plus the executable
// boundary obstruction and the import path for externally produced tables.
//
// The naive family (independently stacked zero-set layers that are 7-color
// Latin per class) finds single layers instantly but essentially never makes
// all seven return maps primitive at once; measurements are in the README.
// The engine therefore searches a rotation-equivariant refinement: one
// color-0 selector per layer (a direction per zero-set class, tiling the
// root flat), with the other six colors derived through the coordinate-shift
// automorphism of the torus. Row Latinness then becomes a per-state
// condition on each layer, enforced during the exact-cover stage as
// difference constraints, and one color's primitive return implies all
// seven. Stage 2 stacks per-layer selectors and tests the color-0 return.

namespace rf7 {

// feature function on root-flat points; candidate tables are constant on
// feature classes (default feature: the zero-set bitmask of w)
struct SelectorFamily {
  std::string name;
  // maps a root-flat point (as digits, length n) to a small feature id;
  // ids must be < max_features
  std::function<u32(const u8* digits, u32 n, u32 m)> feature;
  u32 max_features = 0;
};

SelectorFamily zero_set_family();

struct SearchOptions {
  u64 seed = 1;
  double budget_seconds = 600.0;
  std::string checkpoint_path;  // load if present, write on budget exhaustion
  u32 pool_target = 24;         // stage-1 selectors per layer
  u32 stage1_attempts = 2000;   // randomized exact-cover attempts per layer
  u64 node_budget = 200000;     // backtrack nodes per attempt
  const SelectorFamily* family = nullptr;  // default zero_set_family()
};

struct SearchState {
  u32 m = 0;
  u64 seed = 0;
  u64 next_candidate = 0;
  u32 best_colors = 0;
  double elapsed_seconds = 0;
};

struct SearchResult {
  std::optional<Certificate> cert;
  SearchState state;
  Report report;
};

// two-stage seeded search; the candidate stream is fully determined by
// (m, seed), so the returned certificate is reproducible; a wall-clock
// budget only truncates the stream
std::optional<SearchResult> search_boundary(u32 m, const SearchOptions& opt,
                                            std::string* err);

bool write_checkpoint(const SearchState& st, const std::string& path,
                      std::string* err);
std::optional<SearchState> read_checkpoint(const std::string& path,
                                           std::string* err);

// the counting obstruction for m < 7 made executable: the report contains
// the zero-symbol budget argument plus a concrete schedule with a measured
// non-primitive return
std::optional<Report> obstruction_witness(u32 m, std::string* err);

// read + full validation; report records the source path and check outcomes;
// invalid tables are rejected (with per-color cycle lengths on C3 failure)
std::optional<Certificate> import_external_certificate(const std::string& path,
                                                       Report* rep,
                                                       std::string* err);

}  // namespace rf7
