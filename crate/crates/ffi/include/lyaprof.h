#ifndef LYAPROF_H
#define LYAPROF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LpBackend {
  LP_BACKEND_EXACT = 0,
  LP_BACKEND_LOG_DOMAIN = 1,
} LpBackend;

typedef enum LpBoundary {
  LP_BOUNDARY_FIXED_ZERO = 0,
  LP_BOUNDARY_FIXED_ONE = 1,
  LP_BOUNDARY_PERIODIC = 2,
} LpBoundary;

typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_INVALID_ARGUMENT = 1,
  LP_STATUS_NULL_POINTER = 2,
  LP_STATUS_OUT_OF_RANGE = 3,
  LP_STATUS_RUNTIME = 4,
  LP_STATUS_BUFFER_TOO_SMALL = 5,
  LP_STATUS_EMPTY_CONE = 6,
  LP_STATUS_PANIC = 7,
} LpStatus;

/*
 Opaque result of a finished run.
 */
typedef struct LpRun LpRun;

/*
 Parameters of one run. Start from `lp_config_default`.
 */
typedef struct LpRunConfig {
  int64_t rule;
  size_t width;
  uint64_t steps;
  uint64_t seed;
  enum LpBoundary boundary;
  enum LpBackend backend;
  /*
   First and last initially defective cell. A negative `defect_lo`
   selects the center cell.
   */
  int64_t defect_lo;
  int64_t defect_hi;
  /*
   Record a heatmap row every `heatmap_stride` steps; 0 disables.
   */
  uint64_t heatmap_stride;
} LpRunConfig;

typedef struct LpGeometry {
  double left_speed;
  double right_speed;
  size_t cone_width;
  int64_t argmax_offset;
} LpGeometry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failing call on this thread, or NULL. The pointer
 stays valid until the next failing call on the same thread.
 */
const char *lp_last_error_message(void);

/*
 Static, NUL-terminated library version.
 */
const char *lp_version(void);

/*
 Fills `out` with the reference protocol: rule 110, 10001 cells,
 5000 steps, seed 1, fixed-zero boundary, log-domain counts, centered defect.

 # Safety
 `out` must be NULL or point to writable memory for one `LpRunConfig`.
 */
enum LpStatus lp_config_default(struct LpRunConfig *out);

/*
 Runs one experiment. On success `*out` owns a handle to release with
 `lp_run_free`.

 # Safety
 `config` must point to a valid `LpRunConfig` and `out` to writable
 memory for one pointer.
 */
enum LpStatus lp_run_new(const struct LpRunConfig *config, struct LpRun **out);

/*
 # Safety
 `run` must be NULL or a handle from `lp_run_new` not freed before.
 */
void lp_run_free(struct LpRun *run);

/*
 Number of lattice cells, which is the length of the profile arrays.

 # Safety
 `run` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_run_width(const struct LpRun *run, size_t *out);

/*
 Index of the cell reported as offset 0.

 # Safety
 `run` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_run_origin(const struct LpRun *run, size_t *out);

/*
 Copies the normalized profile into `buf`. Unreached cells are `-INFINITY`.
 `*written` (if not NULL) receives the profile length even when the
 buffer is too small.

 # Safety
 `buf` must be writable for `len` doubles.
 */
enum LpStatus lp_run_normalized(const struct LpRun *run, double *buf, size_t len, size_t *written);

/*
 Copies the raw profile `(1/T) ln eps` into `buf`; see `lp_run_normalized`.

 # Safety
 `buf` must be writable for `len` doubles.
 */
enum LpStatus lp_run_raw(const struct LpRun *run, double *buf, size_t len, size_t *written);

/*
 Largest raw profile entry (`-INFINITY` if every cell is unreached).

 # Safety
 `run` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_run_mle(const struct LpRun *run, double *out);

/*
 Front speeds and extent of the defect cone.

 # Safety
 `run` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_run_geometry(const struct LpRun *run, struct LpGeometry *out);

/*
 Result document as JSON. Free with `lp_string_free`.

 # Safety
 `run` must be a live handle; `out` must be writable.
 */
enum LpStatus lp_run_to_json(const struct LpRun *run, bool include_raw, char **out);

/*
 # Safety
 `s` must be NULL or a string returned by this library, freed once.
 */
void lp_string_free(char *s);

/*
 Renders the recorded heatmap as a binary PGM. Requires a non-zero
 `heatmap_stride`. Free the buffer with `lp_bytes_free`.

 # Safety
 `run` must be a live handle; `out` and `out_len` must be writable.
 */
enum LpStatus lp_run_render_pgm(const struct LpRun *run, uint8_t **out, size_t *out_len);

/*
 # Safety
 `bytes` and `len` must come from one `lp_run_render_pgm` call, freed once.
 */
void lp_bytes_free(uint8_t *bytes, size_t len);

/*
 Upper bound `ln C(T, 0) / T` on any per-cell exponent after `steps` steps.

 # Safety
 `out` must be writable.
 */
enum LpStatus lp_max_lyapunov_bound(uint64_t steps, double *out);

/*
 Smallest rule number equivalent to `rule` under reflection and complement.

 # Safety
 `out` must be writable.
 */
enum LpStatus lp_minimal_representative(int64_t rule, uint8_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LYAPROF_H */
