/* C interface to the tld-forge toolchain.
 *
 * Every entry point returns a tldf_status. Results are owned by the caller
 * and released with tldf_result_free; strings they return live as long as
 * the result. A workspace is immutable after loading apart from
 * tldf_workspace_load_dump, so concurrent read-only calls on one workspace
 * are safe.
 */

#ifndef TLDFORGE_H
#define TLDFORGE_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TLDF_API __declspec(dllexport)
#else
#define TLDF_API __attribute__((visibility("default")))
#endif

typedef struct tldf_workspace tldf_workspace;
typedef struct tldf_result tldf_result;

typedef enum tldf_status {
  TLDF_OK = 0,
  TLDF_ERR_DIAGNOSTICS = 1, /* input has errors; see the result's diagnostics */
  TLDF_ERR_USAGE = 2,       /* bad argument */
  TLDF_ERR_NOT_FOUND = 3,   /* unknown predicate or parameter */
  TLDF_ERR_INTERNAL = 4
} tldf_status;

typedef enum tldf_target { TLDF_TARGET_PROLOG = 0, TLDF_TARGET_MERCURY = 1 } tldf_target;

typedef enum tldf_level { TLDF_LEVEL_PAPER_COMPAT = 0, TLDF_LEVEL_NONE = 1 } tldf_level;

typedef enum tldf_stage {
  TLDF_STAGE_CODE = 0,
  TLDF_STAGE_TYPED = 1,
  TLDF_STAGE_UNTYPED = 2,
  TLDF_STAGE_NORMALIZED = 3,
  TLDF_STAGE_ORDERED = 4,
  TLDF_STAGE_ELIMINATED = 5
} tldf_stage;

typedef enum tldf_variant {
  TLDF_VARIANT_FAITHFUL = 0,
  TLDF_VARIANT_NO_NEGATION_CHECK = 1
} tldf_variant;

typedef struct tldf_options {
  int target;      /* tldf_target */
  int level;       /* tldf_level */
  int stage;       /* tldf_stage; CODE runs the whole pipeline */
  int cuts;        /* nonzero: cut introduction (Prolog) */
  int split;       /* nonzero: one version per directionality on conflict */
  int comments;    /* nonzero: relation text as comments */
  int dir_index;   /* 0-based directionality whose order is emitted */
} tldf_options;

TLDF_API void tldf_options_init(tldf_options* opts);

TLDF_API const char* tldf_version(void);
TLDF_API const char* tldf_status_string(tldf_status status);

/* Output pointers are set to NULL on entry, so a failed call never leaves a
 * stale result behind. On failure *out is NULL and *diagnostics (if
 * non-NULL) explains why. */
TLDF_API tldf_status tldf_workspace_load(const char* manifest_path,
                                         tldf_workspace** out,
                                         tldf_result** diagnostics);
TLDF_API void tldf_workspace_free(tldf_workspace* ws);

/* Replaces a predicate with a stage dump written by tldf_run. */
TLDF_API tldf_status tldf_workspace_load_dump(tldf_workspace* ws,
                                              const char* dump_text,
                                              tldf_result** out);

/* Names of the workspace's descriptions, one per line, in file order. */
TLDF_API tldf_status tldf_predicates(const tldf_workspace* ws, tldf_result** out);

/* Diagnostics of loading (warnings included). */
TLDF_API tldf_status tldf_check(const tldf_workspace* ws, tldf_result** out);

TLDF_API tldf_status tldf_skeleton(const tldf_workspace* ws, const char* predicate,
                                   const char* induction_param, tldf_result** out);

/* predicate may be NULL for every description in the workspace. */
TLDF_API tldf_status tldf_run(const tldf_workspace* ws, const char* predicate,
                              const tldf_options* opts, tldf_result** out);

TLDF_API tldf_status tldf_oracle_equiv(const tldf_workspace* ws, const char* predicate,
                                       int depth, int unfold, int variant,
                                       tldf_result** out);

TLDF_API const char* tldf_result_output(const tldf_result* r);
TLDF_API const char* tldf_result_report(const tldf_result* r);
TLDF_API const char* tldf_result_diagnostics(const tldf_result* r);
TLDF_API int tldf_result_error_count(const tldf_result* r);
TLDF_API void tldf_result_free(tldf_result* r);

#ifdef __cplusplus
}
#endif

#endif /* TLDFORGE_H */
