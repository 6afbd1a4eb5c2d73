/* cwframes — verification toolkit for controlled operator-valued frames and
 * their weavings on finite-dimensional complex spaces.
 *
 * The library computes optimal frame bounds spectrally, decides wovenness by
 * subset enumeration or seeded sampling, and checks the hypotheses and
 * claimed conclusions of the supported sufficiency/equivalence statements
 * against brute-force certificates.
 *
 * Conventions:
 *   - Every function that can fail returns a cwf_status and writes its
 *     out-parameter only on CWF_OK.
 *   - A failing call stores a human-readable message retrievable with
 *     cwf_last_error() (thread-local, overwritten by the next failure).
 *   - Strings returned through char** out-parameters are heap copies owned
 *     by the caller; release them with cwf_string_free().
 */
#ifndef CWFRAMES_H
#define CWFRAMES_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cwf_instance cwf_instance;
typedef struct cwf_report cwf_report;

typedef enum cwf_status {
  CWF_OK = 0,
  CWF_ERR_PARSE = 2,    /* malformed document */
  CWF_ERR_VALIDATE = 3, /* well-formed but mathematically inadmissible */
  CWF_ERR_CAP = 4,      /* size or enumeration cap exceeded */
  CWF_ERR_ARGUMENT = 5, /* null pointer, unknown identifier, bad option */
  CWF_ERR_NUMERIC = 6   /* solver failure or materially indefinite input */
} cwf_status;

/* Pass NULL anywhere a cwf_tolerances* is expected to get the defaults
 * (psd 1e-9 relative, bisect 1e-10 absolute, commute 1e-8 relative). */
typedef struct cwf_tolerances {
  double psd_tol;
  double bisect_tol;
  double commute_tol;
} cwf_tolerances;

const char* cwf_last_error(void);

/* ── instances ──────────────────────────────────────────────────────────── */
/* Documents follow the JSON problem format (see the project README): a
 * single controlled family, or a weaving pair when an "omega" family is
 * present, optionally carrying scalar-expansion or atom data. */
cwf_status cwf_instance_from_json(const char* text, const cwf_tolerances* tol,
                                  cwf_instance** out);
cwf_status cwf_instance_from_file(const char* path, const cwf_tolerances* tol,
                                  cwf_instance** out);

/* Built-in banded pair on a dim-dimensional space (dim >= 6), including its
 * scalar-expansion table. */
cwf_status cwf_instance_example(int dim, const cwf_tolerances* tol,
                                cwf_instance** out);

/* Seeded random weaving pair whose operators share one eigenbasis, so the
 * standing commutation assumption holds for every braid. */
cwf_status cwf_instance_random(uint64_t seed, int dim, int members,
                               const cwf_tolerances* tol, cwf_instance** out);

cwf_status cwf_instance_to_json(const cwf_instance* inst, char** out_text);

/* 1 when the instance is a weaving pair, 0 for a single family. */
int cwf_instance_is_pair(const cwf_instance* inst);
int cwf_instance_dim(const cwf_instance* inst);
int cwf_instance_members(const cwf_instance* inst);
void cwf_instance_free(cwf_instance* inst);

/* ── analysis ───────────────────────────────────────────────────────────── */
/* Optimal frame bounds of a single family (for a pair: both components, with
 * the report's lower/upper the worse of the two sides). */
cwf_status cwf_check_bounds(const cwf_instance* inst, const cwf_tolerances* tol,
                            cwf_report** out);

/* Universal weaving bounds over all 2^m braids (pairs only; m is capped). */
cwf_status cwf_weave_exhaustive(const cwf_instance* inst,
                                const cwf_tolerances* tol, cwf_report** out);

/* Same reduction over a seeded braid sample; the verdict is evidence, not an
 * exhaustive proof, and the report says so. */
cwf_status cwf_weave_sampled(const cwf_instance* inst, uint64_t trials,
                             uint64_t seed, const cwf_tolerances* tol,
                             cwf_report** out);

/* Hypothesis/conclusion check of one named statement on a weaving pair.
 * theorem_id is one of
 *   "bessel-sum" | "characterization" | "perturbation" | "cross-synthesis" |
 *   "atomic" | "positive-gap"
 * options_json may be NULL/empty or an object with (all optional)
 *   "candidate"  number | "auto"        characterization lower scale
 *   "direction"  "forward" | "backward" atomic transfer direction
 *   "mode"       "per-index" | "all-subsets"   positive-gap variant
 *   "atoms"      "identity" | "stored"  atomic local frames
 * The report verdict is true when the hypotheses hold and the brute-force
 * certificate agrees with the claimed interval. */
cwf_status cwf_check_theorem(const cwf_instance* inst, const char* theorem_id,
                             const char* options_json, const cwf_tolerances* tol,
                             cwf_report** out);

/* ── reports ────────────────────────────────────────────────────────────── */
int cwf_report_verdict(const cwf_report* report);
/* Lower may be +infinity when K vanishes (vacuous lower condition). */
double cwf_report_lower(const cwf_report* report);
double cwf_report_upper(const cwf_report* report);
cwf_status cwf_report_json(const cwf_report* report, char** out_text);
void cwf_report_free(cwf_report* report);

void cwf_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* CWFRAMES_H */
