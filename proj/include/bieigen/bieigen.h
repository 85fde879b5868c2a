/* bieigen: classification of maps into spheres (harmonic, biharmonic,
 * eigen, bi-eigen and buckling eigenmaps) from symbolic manifests.
 *
 * All functions are thread-safe. Strings returned through char** must be
 * released with bieigen_string_free. On any status other than BIEIGEN_OK,
 * BIEIGEN_FAIL and BIEIGEN_NOT_APPLICABLE, bieigen_last_error() describes the
 * problem; the message is thread-local and valid until the next call on the
 * same thread.
 */
#ifndef BIEIGEN_BIEIGEN_H
#define BIEIGEN_BIEIGEN_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BIEIGEN_BUILDING_LIBRARY)
#    define BIEIGEN_API __declspec(dllexport)
#  else
#    define BIEIGEN_API __declspec(dllimport)
#  endif
#else
#  define BIEIGEN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes (0..5). */
typedef enum bieigen_status {
  BIEIGEN_OK = 0,
  BIEIGEN_FAIL = 1,             /* theorem check failed */
  BIEIGEN_E_MANIFEST = 2,       /* malformed manifest, parse error, unknown name */
  BIEIGEN_E_EVAL = 3,           /* singular metric, domain error, failed self-check */
  BIEIGEN_NOT_APPLICABLE = 4,   /* theorem or equation preconditions unmet */
  BIEIGEN_E_DENSITY = 5,        /* me1 requested on a non-constant density */
  BIEIGEN_E_ARGUMENT = 6,       /* null pointer, unknown option value */
  BIEIGEN_E_INTERNAL = 7
} bieigen_status;

typedef enum bieigen_format {
  BIEIGEN_FORMAT_TEXT = 0,
  BIEIGEN_FORMAT_JSON = 1,
  BIEIGEN_FORMAT_CSV = 2
} bieigen_format;

typedef struct bieigen_options {
  size_t samples;          /* target sample count, default 64 */
  double tol_abs;          /* default 1e-8 */
  double tol_rel;          /* default 1e-8 */
  double inset;            /* fraction kept off non-periodic ends, default 1e-3 */
  bieigen_format format;   /* default text */
} bieigen_options;

typedef struct bieigen_map bieigen_map;

BIEIGEN_API void bieigen_options_init(bieigen_options* options);

BIEIGEN_API const char* bieigen_version(void);
BIEIGEN_API const char* bieigen_last_error(void);
BIEIGEN_API const char* bieigen_status_name(int status);

BIEIGEN_API int bieigen_map_from_file(const char* path, bieigen_map** out);
BIEIGEN_API int bieigen_map_from_json(const char* json, bieigen_map** out);
BIEIGEN_API int bieigen_map_from_catalog(const char* name, bieigen_map** out);
BIEIGEN_API void bieigen_map_free(bieigen_map* map);

BIEIGEN_API const char* bieigen_map_name(const bieigen_map* map);
BIEIGEN_API int bieigen_map_dimension(const bieigen_map* map);
BIEIGEN_API size_t bieigen_map_ambient(const bieigen_map* map);
/* Canonical manifest JSON, loadable by bieigen_map_from_json. */
BIEIGEN_API int bieigen_map_export(const bieigen_map* map, char** out);

BIEIGEN_API size_t bieigen_catalog_size(void);
/* NULL when index is out of range. */
BIEIGEN_API const char* bieigen_catalog_name(size_t index);
BIEIGEN_API const char* bieigen_catalog_note(size_t index);

/* Full report in options->format. BIEIGEN_OK whatever the verdicts. */
BIEIGEN_API int bieigen_classify(const bieigen_map* map, const bieigen_options* options,
                                 char** out);

/* theorem: "takahashi", "t1", "t2", "t3" or "t4". Returns BIEIGEN_OK (PASS),
 * BIEIGEN_FAIL or BIEIGEN_NOT_APPLICABLE, with the verdict in *out. */
BIEIGEN_API int bieigen_verify(const bieigen_map* map, const char* theorem,
                               const bieigen_options* options, char** out);

/* equation: "eq102", "mf" or "me1". Per-point sup-norm table with max and
 * RMS. BIEIGEN_NOT_APPLICABLE when the target is not the unit sphere (or, for
 * eq102, the map is not isometric); BIEIGEN_E_DENSITY for me1 on a map
 * without constant energy density. */
BIEIGEN_API int bieigen_residual(const bieigen_map* map, const char* equation,
                                 const bieigen_options* options, char** out);

/* Chart-domain bienergy 1/2 int |tau|^2 dv by the midpoint rule with `grid`
 * cells per axis. out may be NULL. */
BIEIGEN_API int bieigen_bienergy(const bieigen_map* map, size_t grid,
                                 const bieigen_options* options, double* value,
                                 char** out);

/* Point values at chart coordinates p[0..dim): energy density and the
 * Euclidean norms of phi, Lap phi and the tension field. Any output pointer
 * may be NULL. */
BIEIGEN_API int bieigen_evaluate_point(const bieigen_map* map, const double* p, size_t n,
                                       double* density, double* phi_norm,
                                       double* lap_phi_norm, double* tension_norm);

BIEIGEN_API void bieigen_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BIEIGEN_BIEIGEN_H */
