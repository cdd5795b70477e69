#ifndef TAME_TAME_H
#define TAME_TAME_H

/* C interface to the tame-cgda engine. Every call returns a status; on
   failure tame_last_error() holds a message for the calling thread. Reports
   are JSON documents owned by the library until tame_report_free. */

#include <stddef.h>
#include <stdint.h>

#if defined(TAME_BUILDING_LIBRARY)
#define TAME_API __attribute__((visibility("default")))
#else
#define TAME_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tame_status {
  TAME_OK = 0,
  TAME_INVALID_ARGUMENT,
  TAME_PARSE_ERROR,
  TAME_TAG_MISMATCH,
  TAME_NOT_IN_RING,
  TAME_NON_INVERTIBLE_DENOMINATOR,
  TAME_NOT_A_PID,
  TAME_GENERATOR_NAME_COLLISION,
  TAME_DIFFERENTIAL_NOT_SQUARE_ZERO,
  TAME_FILTRATION_VIOLATION,
  TAME_TWISTING_NOT_COCHAIN_MAP,
  TAME_NOT_COCHAIN_MAP,
  TAME_NOT_A_COCYCLE,
  TAME_TWIST_NOT_CONGRUENT_TO_M,
  TAME_DEFORMATION_NOT_SQUARE_ZERO,
  TAME_CERTIFICATE_FAILURE,
  TAME_NOT_FINITE_DIMENSIONAL,
  TAME_SEARCH_BUDGET_EXCEEDED,
  TAME_SCHEDULE_DEGREE_TOO_TAME,
  TAME_SIMPLICIAL_IDENTITY_VIOLATION,
  TAME_INTERNAL,
  TAME_OUT_OF_MEMORY
} tame_status;

typedef struct tame_algebra tame_algebra;
typedef struct tame_space tame_space;
typedef struct tame_report tame_report;

TAME_API const char* tame_version(void);
TAME_API const char* tame_status_name(tame_status status);
TAME_API const char* tame_last_error(void);

/* Algebras: JSON with "ring", "generators" and "differential". */
TAME_API tame_status tame_algebra_parse(const char* json, tame_algebra** out);
TAME_API void tame_algebra_free(tame_algebra* a);
TAME_API tame_status tame_algebra_json(const tame_algebra* a, tame_report** out);

/* Spaces: a built-in name ("circle", "torus", "simplex:2", "bz-mod-l:3:4", ...) or JSON text. */
TAME_API tame_status tame_space_load(const char* name_or_json, tame_space** out);
TAME_API void tame_space_free(tame_space* x);

/* level < 0: no filtration slice. l = 0: the prime of an F_l ring. */
TAME_API tame_status tame_cohomology(const tame_algebra* a, int level, uint32_t l, int max_degree, int with_basis,
                                     tame_report** out);
TAME_API tame_status tame_coboundary(const tame_algebra* a, const char* expr, int level, uint32_t l, int max_degree,
                                     tame_report** out);

/* The filtration function at t >= 1, or -1. */
TAME_API int tame_filtration_bar(int t);
/* table[t-1] = f(t). optimality_tmax = 0 skips the optimality sweep. */
TAME_API tame_status tame_filtration(const int* table, size_t n, int optimality_tmax, int slack, tame_report** out);

/* field = 0 compares over the local ring Q_q itself. */
TAME_API tame_status tame_cenkl(const tame_space* x, int q, uint64_t field, int max_degree, tame_report** out);
TAME_API tame_status tame_massey(unsigned l, int skeleton, tame_report** out);

/* dims: "3,5". twist_json = NULL uses the diagonal twist. */
TAME_API tame_status tame_rank(const char* dims, int r, uint32_t p, const char* twist_json, tame_report** out);

typedef struct tame_search_options {
  const char* dims;
  int r;
  uint32_t p;
  int random;        /* 0: exhaustive */
  uint64_t seed;
  uint64_t samples;
  uint64_t budget;   /* 0: default */
  unsigned threads;  /* 0: hardware, capped by TAME_CGDA_THREADS */
  int tau_closed;
} tame_search_options;

TAME_API void tame_search_options_init(tame_search_options* o);
TAME_API tame_status tame_rank_search(const tame_search_options* o, tame_report** out);

/* schedule_json: [{"name": "sigma1", "degree": 3}, ...] or NULL for the
   automatic schedule; twist_json: {"name": "expression"} over Z_(l) or NULL. */
TAME_API tame_status tame_tower(const char* dims, int r, uint32_t l, const char* schedule_json,
                                const char* twist_json, int max_degree, tame_report** out);

TAME_API const char* tame_report_json(const tame_report* r);
/* 1 when the report's main check holds. */
TAME_API int tame_report_passed(const tame_report* r);
/* One-line summary for terminals. */
TAME_API const char* tame_report_summary(const tame_report* r);
TAME_API void tame_report_free(tame_report* r);

#ifdef __cplusplus
}
#endif

#endif
