#include "rootflat7.h"

#include <cstring>
#include <exception>
#include <new>

#include "search.hpp"

// Thin extern-C shell over the core modules. Exceptions never cross the
// boundary; every entry point catches and converts to RF7_E_INTERNAL.

struct rf7_certificate {
  rf7::Certificate impl;
};

struct rf7_report {
  rf7::Report impl;
};

namespace {

thread_local std::string g_last_error;

rf7_status fail(rf7_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

void hand_out(rf7_report** slot, rf7::Report&& rep) {
  if (!slot) return;
  *slot = new rf7_report{std::move(rep)};
}

void add_check(rf7::Report& rep, const char* key, const rf7::CheckReport& cr) {
  rep.add_pass(key, cr.pass);
  if (!cr.pass) rep.add(std::string(key) + ".detail", cr.detail);
}

void add_cycle_lengths(rf7::Report& rep, const rf7::CheckReport& cr) {
  for (rf7::u32 k = 0; k < cr.cycle_lengths.size(); ++k) {
    rep.add("color." + std::to_string(k) + ".cycle_len", cr.cycle_lengths[k]);
  }
}

std::string join_multiset(const std::vector<rf7::u64>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// parameter gate shared by the constructive entry points
rf7_status gate_modulus(rf7::u32 m) {
  if (m < 3) return fail(RF7_E_ARGUMENT, "m must be at least 3");
  if (m % 2 == 0) {
    return fail(RF7_E_PARITY,
                "even m: opposite layers collide and no certificate exists");
  }
  return RF7_OK;
}

}  // namespace

extern "C" {

const char* rf7_status_name(rf7_status s) {
  switch (s) {
    case RF7_OK: return "ok";
    case RF7_E_ARGUMENT: return "argument";
    case RF7_E_PARITY: return "parity";
    case RF7_E_BOUNDARY: return "boundary";
    case RF7_E_IO: return "io";
    case RF7_E_FORMAT: return "format";
    case RF7_E_CHECK_ROW_LATIN: return "check-row-latin";
    case RF7_E_CHECK_LAYER_BIJECTIVE: return "check-layer-bijective";
    case RF7_E_CHECK_PRIMITIVE_RETURN: return "check-primitive-return";
    case RF7_E_VERIFY: return "verify";
    case RF7_E_BUDGET: return "budget";
    case RF7_E_UNSUPPORTED: return "unsupported";
    case RF7_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* rf7_last_error(void) { return g_last_error.c_str(); }

const char* rf7_version(void) { return "1.0.0"; }

rf7_status rf7_certificate_build(uint32_t m, const uint32_t* thresholds,
                                 uint32_t n_thresholds, rf7_certificate** out) {
  if (!out) return fail(RF7_E_ARGUMENT, "out handle is null");
  *out = nullptr;
  try {
    rf7_status gate = gate_modulus(m);
    if (gate != RF7_OK) return gate;
    if (m < 7) {
      return fail(RF7_E_BOUNDARY,
                  "m in {3,5} is below the constructive range; use rf7_search "
                  "or import a certificate");
    }
    std::vector<rf7::u32> tvec;
    const std::vector<rf7::u32>* tptr = nullptr;
    if (thresholds) {
      if (n_thresholds != m) {
        return fail(RF7_E_ARGUMENT, "thresholds must supply exactly m values");
      }
      tvec.assign(thresholds, thresholds + n_thresholds);
      tptr = &tvec;
    }
    std::string err;
    auto sched = rf7::build_schedule(m, tptr, &err);
    if (!sched) return fail(RF7_E_ARGUMENT, err);
    auto cert = rf7::certificate_from_schedule(*sched, &err);
    if (!cert) return fail(RF7_E_UNSUPPORTED, err);
    *out = new rf7_certificate{std::move(*cert)};
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_certificate_read(const char* path, rf7_certificate** out) {
  if (!path || !out) return fail(RF7_E_ARGUMENT, "null path or out handle");
  *out = nullptr;
  try {
    std::string err;
    auto cert = rf7::read_certificate(path, &err);
    if (!cert) {
      bool io = err.find("cannot open") != std::string::npos;
      return fail(io ? RF7_E_IO : RF7_E_FORMAT, err);
    }
    *out = new rf7_certificate{std::move(*cert)};
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_certificate_write(const rf7_certificate* c, const char* path,
                                 int binary) {
  if (!c || !path) return fail(RF7_E_ARGUMENT, "null certificate or path");
  try {
    std::string err;
    bool ok = binary ? rf7::write_certificate_binary(c->impl, path, &err)
                     : rf7::write_certificate_text(c->impl, path, &err);
    return ok ? RF7_OK : fail(RF7_E_IO, err);
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

void rf7_certificate_free(rf7_certificate* c) { delete c; }

rf7_status rf7_certificate_dims(const rf7_certificate* c, uint32_t* n,
                                uint32_t* m) {
  if (!c) return fail(RF7_E_ARGUMENT, "null certificate");
  if (n) *n = c->impl.n;
  if (m) *m = c->impl.m;
  return RF7_OK;
}

rf7_status rf7_certificate_check(const rf7_certificate* c, rf7_report** rep) {
  if (!c) return fail(RF7_E_ARGUMENT, "null certificate");
  try {
    rf7::Report out;
    rf7::CheckReport c1 = rf7::check_row_latin(c->impl);
    add_check(out, "check.c1", c1);
    if (!c1.pass) {
      hand_out(rep, std::move(out));
      return fail(RF7_E_CHECK_ROW_LATIN, c1.detail);
    }
    rf7::CheckReport c2 = rf7::check_layer_bijective(c->impl);
    add_check(out, "check.c2", c2);
    if (!c2.pass) {
      hand_out(rep, std::move(out));
      return fail(RF7_E_CHECK_LAYER_BIJECTIVE, c2.detail);
    }
    rf7::CheckReport c3 = rf7::check_primitive_return(c->impl);
    add_check(out, "check.c3", c3);
    add_cycle_lengths(out, c3);
    hand_out(rep, std::move(out));
    if (!c3.pass) return fail(RF7_E_CHECK_PRIMITIVE_RETURN, c3.detail);
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_certificate_verify_lift(const rf7_certificate* c,
                                       uint32_t threads, rf7_report** rep) {
  if (!c) return fail(RF7_E_ARGUMENT, "null certificate");
  try {
    rf7::CycleReport cr = rf7::verify_lift(c->impl, threads ? threads : 1);
    rf7::Report out;
    out.add("lift.mode", cr.mode);
    out.add("lift.vertices", cr.vertices);
    out.add_pass("lift.partition", cr.arc_partition);
    out.add_pass("lift.covered", cr.covered);
    for (rf7::u32 k = 0; k < cr.lengths.size(); ++k) {
      out.add("lift.color." + std::to_string(k) + ".len", cr.lengths[k]);
    }
    out.add_pass("lift.pass", cr.pass);
    if (!cr.pass) out.add("lift.detail", cr.detail);
    hand_out(rep, std::move(out));
    return cr.pass ? RF7_OK : fail(RF7_E_VERIFY, cr.detail);
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_structure_crosscheck(const rf7_certificate* c, rf7_report** rep) {
  if (!c) return fail(RF7_E_ARGUMENT, "null certificate");
  try {
    rf7::CrosscheckReport cr = rf7::return_structure_crosscheck(c->impl);
    rf7::Report out;
    out.add_pass("crosscheck.pass", cr.pass);
    if (!cr.detail.empty()) out.add("crosscheck.detail", cr.detail);
    for (size_t k = 0; k < cr.return_multisets.size(); ++k) {
      out.add("crosscheck.color." + std::to_string(k) + ".return",
              join_multiset(cr.return_multisets[k]));
    }
    for (size_t k = 0; k < cr.cayley_multisets.size(); ++k) {
      out.add("crosscheck.color." + std::to_string(k) + ".torus",
              join_multiset(cr.cayley_multisets[k]));
    }
    hand_out(rep, std::move(out));
    return cr.pass ? RF7_OK : fail(RF7_E_VERIFY, cr.detail);
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_export_cycle(const rf7_certificate* c, uint32_t kappa,
                            const char* path) {
  if (!c || !path) return fail(RF7_E_ARGUMENT, "null certificate or path");
  if (kappa >= c->impl.n) return fail(RF7_E_ARGUMENT, "color out of range");
  try {
    std::string err;
    if (!rf7::export_cycles(c->impl, kappa, path, &err)) {
      bool io = err.find("cannot open") != std::string::npos;
      return fail(io ? RF7_E_IO : RF7_E_VERIFY, err);
    }
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_matrix_report(uint32_t m, rf7_report** rep) {
  try {
    rf7_status gate = gate_modulus(m);
    if (gate != RF7_OK) return gate;
    std::string err;
    auto cm = rf7::count_matrix_for(m, &err);
    if (!cm) return fail(RF7_E_BOUNDARY, err);
    rf7::Report out;
    out.add("matrix.m", static_cast<rf7::u64>(m));
    out.add("matrix.family", rf7::matrix_family_name(m));
    for (rf7::u32 k = 0; k < 7; ++k) {
      std::string row;
      for (rf7::u32 j = 0; j < 7; ++j) {
        if (j) row += ' ';
        row += std::to_string(cm->rows[k][j]);
      }
      out.add("matrix.row." + std::to_string(k), row);
    }
    std::string why;
    out.add_pass("matrix.sums", rf7::check_count_matrix(*cm, &why));
    for (rf7::u32 k = 0; k < 7; ++k) {
      out.add_pass("matrix.criterion." + std::to_string(k),
                   rf7::check_count_criterion(cm->rows[k], m));
    }
    auto layers = rf7::matching_decomposition(*cm, &err);
    out.add_pass("matrix.matching", layers.has_value());
    if (layers) out.add("matrix.layers", static_cast<rf7::u64>(layers->size()));
    hand_out(rep, std::move(out));
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_obstruction_report(uint32_t m, rf7_report** rep) {
  try {
    rf7_status gate = gate_modulus(m);
    if (gate != RF7_OK) return gate;
    if (m >= 7) {
      return fail(RF7_E_ARGUMENT,
                  "the obstruction applies to m in {3,5}; m >= 7 has the "
                  "direct construction");
    }
    std::string err;
    auto witness = rf7::obstruction_witness(m, &err);
    if (!witness) return fail(RF7_E_INTERNAL, err);
    hand_out(rep, std::move(*witness));
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

rf7_status rf7_search(uint32_t m, uint64_t seed, double budget_seconds,
                      const char* checkpoint_path, rf7_certificate** out,
                      rf7_report** rep) {
  if (!out) return fail(RF7_E_ARGUMENT, "out handle is null");
  *out = nullptr;
  try {
    rf7_status gate = gate_modulus(m);
    if (gate != RF7_OK) return gate;
    if (m >= 7) {
      return fail(RF7_E_ARGUMENT,
                  "search targets the boundary cases m in {3,5}; use "
                  "rf7_certificate_build for m >= 7");
    }
    rf7::SearchOptions opt;
    opt.seed = seed;
    opt.budget_seconds = budget_seconds;
    if (checkpoint_path) opt.checkpoint_path = checkpoint_path;
    std::string err;
    auto res = rf7::search_boundary(m, opt, &err);
    if (!res) return fail(RF7_E_IO, err);
    bool found = res->cert.has_value();
    if (found) *out = new rf7_certificate{std::move(*res->cert)};
    hand_out(rep, std::move(res->report));
    if (!found) {
      return fail(RF7_E_BUDGET, "budget exhausted after " +
                                    std::to_string(res->state.next_candidate) +
                                    " candidates");
    }
    return RF7_OK;
  } catch (const std::bad_alloc&) {
    return fail(RF7_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RF7_E_INTERNAL, e.what());
  }
}

size_t rf7_report_size(const rf7_report* r) {
  return r ? r->impl.items.size() : 0;
}

const char* rf7_report_key(const rf7_report* r, size_t i) {
  if (!r || i >= r->impl.items.size()) return nullptr;
  return r->impl.items[i].first.c_str();
}

const char* rf7_report_value(const rf7_report* r, size_t i) {
  if (!r || i >= r->impl.items.size()) return nullptr;
  return r->impl.items[i].second.c_str();
}

const char* rf7_report_get(const rf7_report* r, const char* key) {
  if (!r || !key) return nullptr;
  const std::string* v = r->impl.find(key);
  return v ? v->c_str() : nullptr;
}

void rf7_report_free(rf7_report* r) { delete r; }

}  // extern "C"
