#ifndef SUPERZ_H
#define SUPERZ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Algebra family.
 */
typedef enum SuperzKind {
  SUPERZ_KIND_SL = 0,
  SUPERZ_KIND_OSP = 1,
} SuperzKind;

/**
 * Result codes.
 */
typedef enum SuperzStatus {
  SUPERZ_STATUS_OK = 0,
  SUPERZ_STATUS_NULL_POINTER = 1,
  SUPERZ_STATUS_INVALID_UTF8 = 2,
  SUPERZ_STATUS_INVALID_PARTITION = 3,
  SUPERZ_STATUS_BUFFER_TOO_SMALL = 4,
  SUPERZ_STATUS_INTERNAL = 5,
} SuperzStatus;

/**
 * A validated partition.
 */
typedef struct SuperzPartition SuperzPartition;

/**
 * Result of running every check on one partition.
 */
typedef struct SuperzReport SuperzReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call on the same thread.
 */
const char *superz_last_error(void);

/**
 * Parse `"p|q"`, e.g. `"5,1|3"`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum SuperzStatus superz_partition_parse(enum SuperzKind kind,
                                         const char *text,
                                         struct SuperzPartition **out);

/**
 * # Safety
 * `p` must come from `superz_partition_parse` or be null.
 */
void superz_partition_free(struct SuperzPartition *p);

/**
 * Even and odd dimensions of the natural module (`m` and `n`, or `m` and `2n`).
 *
 * # Safety
 * Pointers must be valid.
 */
enum SuperzStatus superz_partition_dims(const struct SuperzPartition *p, size_t *even, size_t *odd);

/**
 * `dim g^e`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SuperzStatus superz_centralizer_dim(const struct SuperzPartition *p, size_t *out);

/**
 * `dim z(g^e)`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SuperzStatus superz_centre_dim(const struct SuperzPartition *p, size_t *out);

/**
 * Dimension of the part of `z(g^e)` fixed by the centralizer group.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SuperzStatus superz_fixed_dim(const struct SuperzPartition *p, size_t *out);

/**
 * Labels of the Dynkin diagram, in node order.
 *
 * `len` always receives the number of nodes. If `cap` is too small nothing
 * is copied and `BufferTooSmall` is returned; pass `buf = NULL, cap = 0`
 * to query the length.
 *
 * # Safety
 * `buf` must hold `cap` elements; `len` must be valid.
 */
enum SuperzStatus superz_diagram_labels(const struct SuperzPartition *p,
                                        int64_t *buf,
                                        size_t cap,
                                        size_t *len);

/**
 * Run every check. `so_variant` uses `SO_m` in place of `O_m`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SuperzStatus superz_verify(const struct SuperzPartition *p,
                                bool so_variant,
                                struct SuperzReport **out);

/**
 * # Safety
 * `r` must be a valid report.
 */
enum SuperzStatus superz_report_passed(const struct SuperzReport *r, bool *out);

/**
 * Report as JSON. Free the string with `superz_string_free`.
 *
 * # Safety
 * `r` must be a valid report.
 */
enum SuperzStatus superz_report_json(const struct SuperzReport *r, char **out);

/**
 * # Safety
 * `r` must come from `superz_verify` or be null.
 */
void superz_report_free(struct SuperzReport *r);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void superz_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERZ_H */
