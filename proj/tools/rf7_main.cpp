// rf7: build, search, verify, and export directed Hamilton decompositions
// of the 7-dimensional equal-side directed torus with odd side m.
//
// All structured output goes to stdout as stable key=value lines (or one
// JSON object with --json); human diagnostics go to stderr. Exit codes:
//   0 success
//   1 usage error, I/O failure, or unsupported request
//   2 certificate fails C1 (row Latinness)
//   3 certificate fails C2 (layer bijectivity)
//   4 certificate fails C3 (primitive returns)
//   5 torus-level verification or boundary obstruction outcome
//   6 search budget exhausted (checkpoint written when requested)

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rootflat7.h"

namespace {

int status_exit(rf7_status s) {
  switch (s) {
    case RF7_OK: return 0;
    case RF7_E_CHECK_ROW_LATIN: return 2;
    case RF7_E_CHECK_LAYER_BIJECTIVE: return 3;
    case RF7_E_CHECK_PRIMITIVE_RETURN: return 4;
    case RF7_E_VERIFY: return 5;
    case RF7_E_BUDGET: return 6;
    default: return 1;
  }
}

int complain(rf7_status s) {
  std::fprintf(stderr, "rf7: %s: %s\n", rf7_status_name(s), rf7_last_error());
  return status_exit(s);
}

struct Emitter {
  bool json = false;
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();

  void take(rf7_report* rep) {
    if (!rep) return;
    size_t size = rf7_report_size(rep);
    for (size_t i = 0; i < size; ++i) {
      const char* k = rf7_report_key(rep, i);
      const char* v = rf7_report_value(rep, i);
      if (json) {
        obj[k] = v;
      } else {
        std::printf("%s=%s\n", k, v);
      }
    }
    rf7_report_free(rep);
  }

  void kv(const std::string& k, const std::string& v) {
    if (json) {
      obj[k] = v;
    } else {
      std::printf("%s=%s\n", k.c_str(), v.c_str());
    }
  }

  void flush() {
    if (json) std::printf("%s\n", obj.dump(2).c_str());
  }
};

bool parse_thresholds(const std::string& text, std::vector<uint32_t>* out) {
  out->clear();
  if (text.empty()) return true;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) return false;
    char* end = nullptr;
    unsigned long v = std::strtoul(tok.c_str(), &end, 10);
    if (!end || *end != '\0') return false;
    out->push_back(static_cast<uint32_t>(v));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

uint64_t pow_u64(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// shared tail of decompose/search: run the certificate conditions and,
// when asked, the full torus traversal; prints everything it learns
int check_and_verify(rf7_certificate* cert, bool run_lift, uint32_t threads,
                     Emitter* em) {
  rf7_report* rep = nullptr;
  rf7_status s = rf7_certificate_check(cert, &rep);
  em->take(rep);
  if (s != RF7_OK) return complain(s);
  if (run_lift) {
    rep = nullptr;
    s = rf7_certificate_verify_lift(cert, threads, &rep);
    em->take(rep);
    if (s != RF7_OK) return complain(s);
  }
  return 0;
}

int write_cert(rf7_certificate* cert, const std::string& path, bool text,
               Emitter* em) {
  rf7_status s = rf7_certificate_write(cert, path.c_str(), text ? 0 : 1);
  if (s != RF7_OK) return complain(s);
  em->kv("certificate.path", path);
  em->kv("certificate.format", text ? "text" : "binary");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "rf7: directed Hamilton decompositions of the 7-dimensional "
      "equal-side directed torus, odd side m"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit one JSON object instead of key=value lines");

  // decompose
  auto* dec = app.add_subcommand(
      "decompose", "construct a decomposition certificate and verify it");
  uint32_t dec_m = 7;
  std::string dec_out, dec_cert_in, dec_thresholds, dec_checkpoint;
  uint64_t dec_seed = 1;
  double dec_budget = 600.0;
  uint32_t dec_threads = 1;
  bool dec_text = false, dec_full = false, dec_skip_lift = false;
  dec->add_option("--m", dec_m, "odd side length (>= 3)")->required();
  dec->add_option("--out", dec_out, "certificate output path");
  dec->add_option("--cert", dec_cert_in,
                  "import an existing certificate (boundary m in {3,5})");
  dec->add_option("--thresholds", dec_thresholds,
                  "comma-separated m layer thresholds (default all zero)");
  dec->add_option("--seed", dec_seed, "search seed for boundary m");
  dec->add_option("--budget", dec_budget, "search budget seconds for boundary m");
  dec->add_option("--checkpoint", dec_checkpoint,
                  "search checkpoint file for boundary m");
  dec->add_option("--threads", dec_threads, "verification worker threads");
  dec->add_flag("--text", dec_text, "write the text format instead of binary");
  dec->add_flag("--full-verify", dec_full,
                "run the torus traversal even when it is expensive (m = 15)");
  dec->add_flag("--skip-lift", dec_skip_lift,
                "skip the torus traversal (certificate conditions still run)");

  // verify
  auto* ver = app.add_subcommand("verify", "validate a certificate file");
  std::string ver_cert;
  uint32_t ver_threads = 1;
  bool ver_full = false;
  ver->add_option("--cert", ver_cert, "certificate path")->required();
  ver->add_option("--threads", ver_threads, "verification worker threads");
  ver->add_flag("--full-verify", ver_full,
                "also lift to the torus and traverse every color");

  // matrix
  auto* mat = app.add_subcommand(
      "matrix", "show the count matrix; for m in {3,5} the obstruction");
  uint32_t mat_m = 7;
  mat->add_option("--m", mat_m, "odd side length (>= 3)")->required();

  // search
  auto* sea = app.add_subcommand(
      "search", "seeded certificate search for the boundary cases m in {3,5}");
  uint32_t sea_m = 3;
  uint64_t sea_seed = 1;
  double sea_budget = 600.0;
  std::string sea_out, sea_checkpoint;
  bool sea_text = false;
  sea->add_option("--m", sea_m, "boundary side length (3 or 5)")->required();
  sea->add_option("--seed", sea_seed, "stream seed; same (m, seed) = same result");
  sea->add_option("--budget", sea_budget, "wall-clock budget in seconds");
  sea->add_option("--out", sea_out, "certificate output path");
  sea->add_option("--checkpoint", sea_checkpoint,
                  "resume from / write exhaustion checkpoint here");
  sea->add_flag("--text", sea_text, "write the text format instead of binary");

  // export
  auto* exp = app.add_subcommand("export", "write one color's torus cycle");
  std::string exp_cert, exp_out;
  uint32_t exp_color = 0;
  exp->add_option("--cert", exp_cert, "certificate path")->required();
  exp->add_option("--color", exp_color, "color class (0..6)");
  exp->add_option("--out", exp_out, "output path")->required();

  // info
  auto* inf = app.add_subcommand("info", "sizes and limits for a given m");
  uint32_t inf_m = 0;
  std::string inf_cert;
  inf->add_option("--m", inf_m, "side length to describe");
  inf->add_option("--cert", inf_cert, "describe an existing certificate file");

  CLI11_PARSE(app, argc, argv);

  Emitter em;
  em.json = json;

  int rc = 0;
  if (dec->parsed()) {
    if (dec_m % 2 == 0 || dec_m < 3) {
      std::fprintf(stderr, "rf7: decompose needs odd m >= 3 (got %u)\n", dec_m);
      return 1;
    }
    if (dec_m > 15) {
      std::fprintf(stderr,
                   "rf7: m = %u is outside the supported envelope; the "
                   "certificate alone would take %.1f GB\n",
                   dec_m, 7.0 * std::pow(dec_m, 7) / 1e9);
      return 1;
    }
    if (dec_m == 15 && !dec_full && !dec_skip_lift) {
      std::fprintf(stderr,
                   "rf7: m = 15 verification walks 7 cycles of 15^7 = "
                   "170859375 vertices each (several minutes, ~1.2 GB table); "
                   "rerun with --full-verify to proceed or --skip-lift to "
                   "stop after the certificate conditions\n");
      return 1;
    }
    bool run_lift = !dec_skip_lift;
    rf7_certificate* cert = nullptr;
    if (dec_m < 7) {
      if (!dec_cert_in.empty()) {
        rf7_status s = rf7_certificate_read(dec_cert_in.c_str(), &cert);
        if (s != RF7_OK) return complain(s);
        em.kv("certificate.imported", dec_cert_in);
      } else {
        rf7_report* rep = nullptr;
        rf7_status s = rf7_search(dec_m, dec_seed, dec_budget,
                                  dec_checkpoint.empty() ? nullptr
                                                         : dec_checkpoint.c_str(),
                                  &cert, &rep);
        em.take(rep);
        if (s != RF7_OK) {
          em.flush();
          return complain(s);
        }
      }
    } else {
      std::vector<uint32_t> thr;
      if (!parse_thresholds(dec_thresholds, &thr)) {
        std::fprintf(stderr, "rf7: --thresholds wants comma-separated integers\n");
        return 1;
      }
      rf7_status s = rf7_certificate_build(dec_m, thr.empty() ? nullptr : thr.data(),
                                           static_cast<uint32_t>(thr.size()), &cert);
      if (s != RF7_OK) return complain(s);
    }
    rc = check_and_verify(cert, run_lift, dec_threads, &em);
    if (rc == 0) {
      std::string out = dec_out;
      if (out.empty())
        out = "d7_m" + std::to_string(dec_m) + (dec_text ? ".rft" : ".rfc");
      rc = write_cert(cert, out, dec_text, &em);
    }
    rf7_certificate_free(cert);
  } else if (ver->parsed()) {
    rf7_certificate* cert = nullptr;
    rf7_status s = rf7_certificate_read(ver_cert.c_str(), &cert);
    if (s != RF7_OK) return complain(s);
    uint32_t n = 0, m = 0;
    rf7_certificate_dims(cert, &n, &m);
    em.kv("certificate.n", std::to_string(n));
    em.kv("certificate.m", std::to_string(m));
    rc = check_and_verify(cert, ver_full, ver_threads, &em);
    rf7_certificate_free(cert);
  } else if (mat->parsed()) {
    if (mat_m >= 7) {
      rf7_report* rep = nullptr;
      rf7_status s = rf7_matrix_report(mat_m, &rep);
      em.take(rep);
      if (s != RF7_OK) rc = complain(s);
    } else {
      rf7_report* rep = nullptr;
      rf7_status s = rf7_obstruction_report(mat_m, &rep);
      em.take(rep);
      rc = (s == RF7_OK) ? 5 : complain(s);
      if (s == RF7_OK) {
        std::fprintf(stderr,
                     "rf7: m = %u sits below the constructive boundary; "
                     "report shows the counting obstruction\n", mat_m);
      }
    }
  } else if (sea->parsed()) {
    rf7_certificate* cert = nullptr;
    rf7_report* rep = nullptr;
    rf7_status s = rf7_search(sea_m, sea_seed, sea_budget,
                              sea_checkpoint.empty() ? nullptr
                                                     : sea_checkpoint.c_str(),
                              &cert, &rep);
    em.take(rep);
    if (s != RF7_OK) {
      em.flush();
      return complain(s);
    }
    if (!sea_out.empty()) {
      rc = write_cert(cert, sea_out, sea_text, &em);
    }
    rf7_certificate_free(cert);
  } else if (exp->parsed()) {
    rf7_certificate* cert = nullptr;
    rf7_status s = rf7_certificate_read(exp_cert.c_str(), &cert);
    if (s != RF7_OK) return complain(s);
    s = rf7_export_cycle(cert, exp_color, exp_out.c_str());
    rf7_certificate_free(cert);
    if (s != RF7_OK) return complain(s);
    em.kv("cycle.path", exp_out);
    em.kv("cycle.color", std::to_string(exp_color));
  } else if (inf->parsed()) {
    em.kv("version", rf7_version());
    uint32_t n = 7, m = inf_m;
    if (!inf_cert.empty()) {
      rf7_certificate* cert = nullptr;
      rf7_status s = rf7_certificate_read(inf_cert.c_str(), &cert);
      if (s != RF7_OK) return complain(s);
      rf7_certificate_dims(cert, &n, &m);
      rf7_certificate_free(cert);
      em.kv("certificate.path", inf_cert);
    } else if (m == 0) {
      std::fprintf(stderr, "rf7: info wants --m or --cert\n");
      return 1;
    }
    em.kv("n", std::to_string(n));
    em.kv("m", std::to_string(m));
    uint64_t states = pow_u64(m, n - 1);
    uint64_t vertices = pow_u64(m, n);
    em.kv("states", std::to_string(states));
    em.kv("vertices", std::to_string(vertices));
    em.kv("certificate.bytes", std::to_string(vertices * n));
    em.kv("verify.mode", vertices * n <= (256ull << 20) ? "table" : "stream");
    if (m >= 3 && m % 2 == 1) {
      em.kv("route", m >= 7 ? "schedule" : "search-or-import");
    } else {
      em.kv("route", "none (even or degenerate m)");
    }
  }
  em.flush();
  return rc;
}
