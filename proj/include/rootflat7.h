#ifndef ROOTFLAT7_H
#define ROOTFLAT7_H

/* C interface to librootflat7: construction and verification of directed
 * Hamilton decompositions of the 7-dimensional equal-side directed torus
 * with odd side m.
 *
 * All functions return an rf7_status; RF7_OK is 0. Output handles are
 * written only on success and must be released with the matching _free
 * call. On failure rf7_last_error() describes what went wrong (the string
 * is thread-local and valid until the next failing call on that thread).
 * Functions taking an rf7_report** accept NULL when the caller does not
 * want the key=value details; when non-NULL, a report may be returned on
 * failure too (whenever there is something structured to say, e.g. which
 * check failed and where).
 */

#include <stdint.h>
#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rf7_certificate rf7_certificate;
typedef struct rf7_report rf7_report;

typedef enum rf7_status {
  RF7_OK = 0,
  RF7_E_ARGUMENT = 1,           /* bad parameter or null handle */
  RF7_E_PARITY = 2,             /* even m: the torus has no decomposition here */
  RF7_E_BOUNDARY = 3,           /* m in {3,5}: below the constructive range */
  RF7_E_IO = 4,                 /* file could not be read or written */
  RF7_E_FORMAT = 5,             /* certificate file malformed */
  RF7_E_CHECK_ROW_LATIN = 6,    /* condition C1 violated */
  RF7_E_CHECK_LAYER_BIJECTIVE = 7, /* condition C2 violated */
  RF7_E_CHECK_PRIMITIVE_RETURN = 8, /* condition C3 violated */
  RF7_E_VERIFY = 9,             /* torus-level verification failed */
  RF7_E_BUDGET = 10,            /* search budget exhausted without a find */
  RF7_E_UNSUPPORTED = 11,       /* request outside implemented limits */
  RF7_E_INTERNAL = 12           /* invariant breach or allocation failure */
} rf7_status;

/* stable name for a status code, e.g. "ok", "check-row-latin" */
const char* rf7_status_name(rf7_status s);

/* thread-local message for the most recent failure on this thread */
const char* rf7_last_error(void);

/* library version string */
const char* rf7_version(void);

/* ---- certificates ---------------------------------------------------- */

/* Build the layer-direction certificate for odd m >= 7 from the published
 * count-matrix schedule. `thresholds` may be NULL for all-zero layer
 * thresholds, otherwise it must hold `n_thresholds` == m values (taken
 * mod m). m in {3,5} returns RF7_E_BOUNDARY; see rf7_search. */
rf7_status rf7_certificate_build(uint32_t m, const uint32_t* thresholds,
                                 uint32_t n_thresholds, rf7_certificate** out);

/* Read a certificate file, either format (binary is sniffed by magic).
 * Performs structural validation only (header, sizes, digit ranges); run
 * rf7_certificate_check for the mathematical conditions. */
rf7_status rf7_certificate_read(const char* path, rf7_certificate** out);

/* Write a certificate; binary != 0 selects the compact format. */
rf7_status rf7_certificate_write(const rf7_certificate* c, const char* path,
                                 int binary);

void rf7_certificate_free(rf7_certificate* c);

rf7_status rf7_certificate_dims(const rf7_certificate* c, uint32_t* n,
                                uint32_t* m);

/* Run the three certificate conditions in order (C1 row Latinness, C2
 * layer bijectivity, C3 primitive returns). The status identifies the
 * first failing condition; the report carries pass/fail per condition,
 * the violation locus, and per-color return-cycle lengths. */
rf7_status rf7_certificate_check(const rf7_certificate* c, rf7_report** rep);

/* Independent verification on the full torus: lift the certificate to an
 * arc coloring and traverse every color class, checking the out-direction
 * partition and that each color is one cycle through all m^7 vertices.
 * `threads` = 0 or 1 runs sequentially. */
rf7_status rf7_certificate_verify_lift(const rf7_certificate* c,
                                       uint32_t threads, rf7_report** rep);

/* Cross-check of the structure correspondence: for every color, the cycle
 * lengths of the lifted color class must equal the return-map cycle
 * lengths scaled by m. Works on certificates that fail C3, which is the
 * interesting case; requires C2. */
rf7_status rf7_structure_crosscheck(const rf7_certificate* c, rf7_report** rep);

/* Write color `kappa`'s torus cycle as text: a header line followed by one
 * vertex (n digits) per line. */
rf7_status rf7_export_cycle(const rf7_certificate* c, uint32_t kappa,
                            const char* path);

/* ---- reports on the combinatorics ------------------------------------ */

/* Count matrix for odd m >= 7: the matrix rows, the per-row gcd criterion,
 * and the per-layer matching decomposition outcome. */
rf7_status rf7_matrix_report(uint32_t m, rf7_report** rep);

/* The counting obstruction for odd m < 7, made executable: zero-symbol
 * budget versus demand, plus a concrete schedule whose witness color has a
 * measured non-primitive return. */
rf7_status rf7_obstruction_report(uint32_t m, rf7_report** rep);

/* ---- boundary search -------------------------------------------------- */

/* Seeded randomized search for a certificate at m in {3,5}. Deterministic:
 * the result depends only on (m, seed), the wall-clock budget merely
 * truncates the candidate stream. If `checkpoint_path` is non-NULL, an
 * existing checkpoint there resumes the stream and RF7_E_BUDGET writes an
 * updated one. A found certificate has already passed the full conditions
 * and the torus-level verification. */
rf7_status rf7_search(uint32_t m, uint64_t seed, double budget_seconds,
                      const char* checkpoint_path, rf7_certificate** out,
                      rf7_report** rep);

/* ---- reports ----------------------------------------------------------- */

size_t rf7_report_size(const rf7_report* r);
const char* rf7_report_key(const rf7_report* r, size_t i);
const char* rf7_report_value(const rf7_report* r, size_t i);
/* NULL when the key is absent */
const char* rf7_report_get(const rf7_report* r, const char* key);
void rf7_report_free(rf7_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ROOTFLAT7_H */
