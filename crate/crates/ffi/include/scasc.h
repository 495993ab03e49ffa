#ifndef SCASC_H
#define SCASC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScascStatus {
  SCASC_STATUS_OK = 0,
  SCASC_STATUS_INVALID_INPUT = 1,
  SCASC_STATUS_CAPACITY = 2,
  SCASC_STATUS_INTERNAL = 3,
  SCASC_STATUS_NULL_POINTER = 4,
  SCASC_STATUS_UTF8 = 5,
} ScascStatus;

/**
 * A generating class with its member names.
 */
typedef struct ScascClass ScascClass;

/**
 * Search limits. Pass a null pointer to use [`scasc_limits_default`].
 */
typedef struct ScascLimits {
  size_t free_elements;
  size_t subset_carrier;
  size_t product_size;
  uint64_t assignments;
  size_t table_entries;
  uint64_t closure_steps;
} ScascLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct ScascLimits scasc_limits_default(void);

/**
 * Parses an algebra file. On success `*out` owns a handle for
 * [`scasc_class_free`].
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` writable.
 */
enum ScascStatus scasc_class_parse(const char *source, struct ScascClass **out);

/**
 * # Safety
 * `cls` must come from [`scasc_class_parse`] and not be freed twice.
 */
void scasc_class_free(struct ScascClass *cls);

/**
 * # Safety
 * `cls` must be a live handle and `out` writable.
 */
enum ScascStatus scasc_class_member_count(const struct ScascClass *cls, size_t *out);

/**
 * Number of elements of the free algebra of rank `k`.
 *
 * # Safety
 * `cls` must be a live handle, `lim` null or valid, `out` writable.
 */
enum ScascStatus scasc_free_algebra_size(const struct ScascClass *cls,
                                         size_t k,
                                         const struct ScascLimits *lim,
                                         size_t *out);

/**
 * A discriminator term in the text grammar, or a null `*out` when none
 * exists. Free the string with [`scasc_string_free`].
 *
 * # Safety
 * `cls` must be a live handle, `lim` null or valid, `out` writable.
 */
enum ScascStatus scasc_discriminator_term(const struct ScascClass *cls,
                                          const struct ScascLimits *lim,
                                          char **out);

/**
 * The SC/ASC verdict as JSON, re-verified before it is returned.
 *
 * # Safety
 * `cls` must be a live handle, `lim` null or valid, `out` writable.
 */
enum ScascStatus scasc_verdict_json(const struct ScascClass *cls,
                                    const struct ScascLimits *lim,
                                    char **out);

/**
 * Classification of a quasi-identity as JSON.
 *
 * # Safety
 * `cls` must be a live handle, `q` NUL-terminated, `lim` null or valid,
 * `out` writable.
 */
enum ScascStatus scasc_classify_json(const struct ScascClass *cls,
                                     const char *q,
                                     const struct ScascLimits *lim,
                                     char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void scasc_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *scasc_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCASC_H */
