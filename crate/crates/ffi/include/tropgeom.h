#ifndef TROPGEOM_H
#define TROPGEOM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  /**
   * The computation is undefined for these inputs (singular data, coaxial lines, ...).
   */
  TG_STATUS_DOMAIN_ERROR = 1,
  /**
   * The input could not be parsed.
   */
  TG_STATUS_INVALID_INPUT = 2,
  TG_STATUS_NULL_POINTER = 3,
  TG_STATUS_UTF8 = 4,
  TG_STATUS_PANIC = 5,
} TgStatus;

/**
 * Where a point sits relative to a line.
 */
typedef enum TgIncidence {
  TG_INCIDENCE_NOT_ON_LINE = -1,
  TG_INCIDENCE_VERTEX = 0,
  TG_INCIDENCE_RAY_LEFT = 1,
  TG_INCIDENCE_RAY_DOWN = 2,
  TG_INCIDENCE_RAY_DIAG = 3,
} TgIncidence;

/**
 * Opaque plane tropical line.
 */
typedef struct TgLine TgLine;

/**
 * Opaque tropical matrix.
 */
typedef struct TgMatrix TgMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message for the most recent failure on this thread, or null. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *tg_last_error_message(void);

/**
 * # Safety
 * `s` is null or a string returned by this library that was not freed yet.
 */
void tg_string_free(char *s);

/**
 * Runs one CLI subcommand (`"stable-line"`, `"tdet"`, ...) on a JSON
 * document and stores the JSON (or SVG) result in `*out`. `convention` may
 * be null for max-plus.
 *
 * # Safety
 * String arguments are null or NUL-terminated; `out` is writable.
 */
enum TgStatus tg_run_json(const char *command,
                          const char *input,
                          const char *convention,
                          char **out);

/**
 * `a ⊙ x ⊕ b ⊙ y ⊕ c` with finite rational coefficients.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is writable.
 */
enum TgStatus tg_line_from_coeffs(const char *a, const char *b, const char *c, struct TgLine **out);

/**
 * # Safety
 * String arguments are NUL-terminated; `out` is writable.
 */
enum TgStatus tg_line_from_vertex(const char *x, const char *y, struct TgLine **out);

/**
 * The stable line through `(px, py)` and `(qx, qy)`.
 *
 * # Safety
 * String arguments are NUL-terminated; `out` is writable.
 */
enum TgStatus tg_stable_line(const char *px,
                             const char *py,
                             const char *qx,
                             const char *qy,
                             struct TgLine **out);

/**
 * # Safety
 * `line` is a live handle; `out_x` and `out_y` are writable.
 */
enum TgStatus tg_line_vertex(const struct TgLine *line, char **out_x, char **out_y);

/**
 * # Safety
 * `line` is a live handle; `x`, `y` are NUL-terminated; `out` is writable.
 */
enum TgStatus tg_line_incidence(const struct TgLine *line,
                                const char *x,
                                const char *y,
                                enum TgIncidence *out);

/**
 * The stable intersection point of two distinct lines.
 *
 * # Safety
 * Both handles are live; `out_x` and `out_y` are writable.
 */
enum TgStatus tg_stable_intersect(const struct TgLine *l1,
                                  const struct TgLine *l2,
                                  char **out_x,
                                  char **out_y);

/**
 * # Safety
 * `line` is null or a handle from this library that was not freed yet.
 */
void tg_line_free(struct TgLine *line);

/**
 * Parses a matrix from JSON rows, e.g. `[["0", "-inf"], [1, 2]]`.
 *
 * # Safety
 * `json` is NUL-terminated; `out` is writable.
 */
enum TgStatus tg_matrix_from_json(const char *json, struct TgMatrix **out);

/**
 * Tropical determinant as a string. `convention` may be null for max-plus.
 *
 * # Safety
 * `m` is a live handle; `convention` is null or NUL-terminated; `out` is writable.
 */
enum TgStatus tg_matrix_tdet(const struct TgMatrix *m, const char *convention, char **out);

/**
 * # Safety
 * `m` is a live handle; `convention` is null or NUL-terminated; `out` is writable.
 */
enum TgStatus tg_matrix_is_singular(const struct TgMatrix *m, const char *convention, bool *out);

/**
 * # Safety
 * `m` is null or a handle from this library that was not freed yet.
 */
void tg_matrix_free(struct TgMatrix *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TROPGEOM_H */
