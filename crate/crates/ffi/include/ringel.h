#ifndef RINGEL_H
#define RINGEL_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every exported function.
 */
typedef enum RingelStatus {
  RINGEL_STATUS_OK = 0,
  RINGEL_STATUS_NULL_POINTER = 1,
  RINGEL_STATUS_INVALID_UTF8 = 2,
  RINGEL_STATUS_INPUT = 3,
  RINGEL_STATUS_PARSE = 4,
  RINGEL_STATUS_BUILD = 5,
  RINGEL_STATUS_UNSUPPORTED = 6,
  RINGEL_STATUS_THEOREM_VIOLATION = 7,
  RINGEL_STATUS_BUFFER_TOO_SMALL = 8,
  RINGEL_STATUS_PANIC = 9,
} RingelStatus;

/**
 * Opaque handle to a finite-dimensional algebra.
 */
typedef struct RingelAlgebra RingelAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ringel_version(void);

/**
 * Message of the last failure on this thread, or NULL. Valid until the next call.
 */
const char *ringel_last_error(void);

/**
 * Parses an algebra file and builds the algebra, truncating linear relations at `max_degree`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum RingelStatus ringel_algebra_from_dsl(const char *text,
                                          size_t max_degree,
                                          struct RingelAlgebra **out);

/**
 * The Knörrer invariant algebra for r/a.
 *
 * # Safety
 * `out` must be writable.
 */
enum RingelStatus ringel_algebra_knorrer(uint64_t r, uint64_t a, struct RingelAlgebra **out);

/**
 * kC_n/J^m for the cyclic quiver on n vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum RingelStatus ringel_algebra_nakayama(size_t n, size_t m, struct RingelAlgebra **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from this library and not be used afterwards.
 */
void ringel_algebra_free(struct RingelAlgebra *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum RingelStatus ringel_algebra_dim(const struct RingelAlgebra *h, size_t *out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum RingelStatus ringel_algebra_vertex_count(const struct RingelAlgebra *h, size_t *out);

/**
 * Cartan matrix, row-major: entry (i, j) = dim e_i A e_j. `len` receives n²; when `cap` is
 * smaller the status is `BufferTooSmall` and nothing is copied.
 *
 * # Safety
 * `h` must be a live handle; `buf` must hold `cap` entries; `len` must be writable.
 */
enum RingelStatus ringel_algebra_cartan(const struct RingelAlgebra *h,
                                        size_t *buf,
                                        size_t cap,
                                        size_t *len);

/**
 * The opposite algebra as a new handle.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum RingelStatus ringel_algebra_opposite(const struct RingelAlgebra *h,
                                          struct RingelAlgebra **out);

/**
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum RingelStatus ringel_is_ideally_ordered(const struct RingelAlgebra *h, bool *out);

/**
 * Dimensions of the isomorphism classes of monomial ideals, in class order.
 *
 * # Safety
 * As for [`ringel_algebra_cartan`].
 */
enum RingelStatus ringel_ideal_class_dims(const struct RingelAlgebra *h,
                                          size_t *buf,
                                          size_t cap,
                                          size_t *len);

/**
 * E_R = End_R of the sum of the monomial ideal classes, as a new handle.
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum RingelStatus ringel_endomorphism_algebra(const struct RingelAlgebra *h,
                                              struct RingelAlgebra **out);

/**
 * Global dimension up to `bound`. `finite` is false when it exceeds the bound, in which case
 * `dim` receives the bound.
 *
 * # Safety
 * `h` must be a live handle; `dim` and `finite` must be writable.
 */
enum RingelStatus ringel_global_dimension(const struct RingelAlgebra *h,
                                          size_t bound,
                                          size_t *dim,
                                          bool *finite);

/**
 * Runs the constructive Ringel duality check; `pass` receives the verdict and `end_t_dim`
 * the dimension of End(T).
 *
 * # Safety
 * `h` must be a live handle; `pass` and `end_t_dim` must be writable.
 */
enum RingelStatus ringel_verify_duality(const struct RingelAlgebra *h,
                                        bool *pass,
                                        size_t *end_t_dim);

/**
 * Name of the algebra as a newly allocated string; free with [`ringel_string_free`].
 *
 * # Safety
 * `h` must be a live handle; `out` must be writable.
 */
enum RingelStatus ringel_algebra_name(const struct RingelAlgebra *h, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. NULL is ignored.
 */
void ringel_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RINGEL_H */
