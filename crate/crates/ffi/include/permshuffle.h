#ifndef PERMSHUFFLE_H
#define PERMSHUFFLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  /**
   * A pointer argument was null or not valid UTF-8.
   */
  PS_STATUS_INVALID_ARGUMENT = 1,
  /**
   * The input text could not be parsed.
   */
  PS_STATUS_PARSE_ERROR = 2,
  /**
   * The operation is undefined for this input (odd size, not in the image
   * of the bijection, invalid witness or matching).
   */
  PS_STATUS_DOMAIN_ERROR = 3,
  /**
   * The input exceeds the configured size cap.
   */
  PS_STATUS_SIZE_LIMIT = 4,
} PsStatus;

/**
 * Opaque permutation handle.
 */
typedef struct PsPerm PsPerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a permutation from its text form ("1 4 3 2", or "1432" when the
 * size is at most 9; empty string for the empty permutation) into a new
 * handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be non-null.
 */
enum PsStatus ps_perm_parse(const char *text, struct PsPerm **out);

/**
 * Releases a handle returned by this library. Null is ignored.
 *
 * # Safety
 * `perm` must have been returned by this library and not yet freed.
 */
void ps_perm_free(struct PsPerm *perm);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must have been returned by this library and not yet freed.
 */
void ps_string_free(char *s);

/**
 * The number of letters of the permutation.
 *
 * # Safety
 * `perm` must be a live handle.
 */
size_t ps_perm_size(const struct PsPerm *perm);

/**
 * Writes the canonical text form of the permutation to `out`.
 *
 * # Safety
 * `perm` must be a live handle; `out` must be non-null.
 */
enum PsStatus ps_perm_to_string(const struct PsPerm *perm, char **out);

/**
 * Decides whether the permutation is a square. On success `*is_square` is
 * set, and `*witness` receives the A/B witness coloring when the permutation
 * is a square (or null otherwise); `witness` may be null if the coloring is
 * not wanted.
 *
 * # Safety
 * `perm` must be a live handle; `is_square` must be non-null.
 */
enum PsStatus ps_is_square(const struct PsPerm *perm, bool *is_square, char **witness);

/**
 * Expands the shuffle product of two permutations; `out` receives one term
 * per line, "coefficient TAB permutation".
 *
 * # Safety
 * `sigma` and `nu` must be live handles; `out` must be non-null.
 */
enum PsStatus ps_shuffle(const struct PsPerm *sigma, const struct PsPerm *nu, char **out);

/**
 * Expands the unshuffling coproduct; `out` receives one term per line,
 * "coefficient TAB left TAB (x) TAB right".
 *
 * # Safety
 * `pi` must be a live handle; `out` must be non-null.
 */
enum PsStatus ps_unshuffle(const struct PsPerm *pi, char **out);

/**
 * The multiplicity of the tensor (sigma, nu) in the coproduct of pi.
 *
 * # Safety
 * All three handles must be live; `out` must be non-null.
 */
enum PsStatus ps_coefficient(const struct PsPerm *pi,
                             const struct PsPerm *sigma,
                             const struct PsPerm *nu,
                             uint64_t *out);

/**
 * Maps a binary word ("0101...") to its permutation handle.
 *
 * # Safety
 * `word` must be a valid NUL-terminated string; `out` must be non-null.
 */
enum PsStatus ps_bin_to_perm(const char *word, struct PsPerm **out);

/**
 * Maps an even-size (213,231)-avoiding permutation back to its binary word.
 *
 * # Safety
 * `perm` must be a live handle; `out` must be non-null.
 */
enum PsStatus ps_perm_to_bin(const struct PsPerm *perm, char **out);

/**
 * Number of square permutations of the given size (subject to the default
 * size cap).
 *
 * # Safety
 * `out` must be non-null.
 */
enum PsStatus ps_count_squares(size_t size, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMSHUFFLE_H */
