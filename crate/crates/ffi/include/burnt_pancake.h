#ifndef BURNT_PANCAKE_H
#define BURNT_PANCAKE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes returned by every fallible function.
 */
typedef enum BpStatus {
  BP_STATUS_OK = 0,
  BP_STATUS_NULL_POINTER = 1,
  BP_STATUS_INVALID_UTF8 = 2,
  BP_STATUS_PARSE = 3,
  BP_STATUS_OUT_OF_RANGE = 4,
  BP_STATUS_NOT_SIMPLE = 5,
  BP_STATUS_OVER_CAP = 6,
  BP_STATUS_PRECONDITION = 7,
  BP_STATUS_INTERNAL = 8,
} BpStatus;

/**
 * A sequence of prefix flip lengths.
 */
typedef struct BpFlips BpFlips;

/**
 * A precomputed distance table.
 */
typedef struct BpOracle BpOracle;

/**
 * A signed permutation.
 */
typedef struct BpPerm BpPerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread, or null.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *bp_last_error_message(void);

/**
 * Parses a whitespace-separated permutation such as `"-3 1 2"`.
 *
 * # Safety
 * `text` must be null or a valid nul-terminated string; `out` must be null
 * or valid for writes.
 */
enum BpStatus bp_perm_parse(const char *text, struct BpPerm **out);

/**
 * Builds a permutation from `len` entries.
 *
 * # Safety
 * `entries` must point to `len` readable integers; `out` must be valid for
 * writes.
 */
enum BpStatus bp_perm_from_entries(const int32_t *entries, size_t len, struct BpPerm **out);

/**
 * Releases a permutation. Null is ignored.
 *
 * # Safety
 * `perm` must be null or a handle returned by this library, not yet freed.
 */
void bp_perm_free(struct BpPerm *perm);

/**
 * Number of entries, or 0 for a null handle.
 *
 * # Safety
 * `perm` must be null or a live handle.
 */
size_t bp_perm_len(const struct BpPerm *perm);

/**
 * Copies the entries into `buf`, which must hold at least `bp_perm_len` values.
 *
 * # Safety
 * `perm` must be a live handle and `buf` valid for `cap` writes.
 */
enum BpStatus bp_perm_entries(const struct BpPerm *perm, int32_t *buf, size_t cap);

/**
 * Formats the permutation as a newly allocated string; free it with
 * [`bp_string_free`].
 *
 * # Safety
 * `perm` must be a live handle and `out` valid for writes.
 */
enum BpStatus bp_perm_to_string(const struct BpPerm *perm, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void bp_string_free(char *s);

/**
 * Applies the prefix flip of length `k` in place.
 *
 * # Safety
 * `perm` must be a live handle.
 */
enum BpStatus bp_perm_prefix_flip(struct BpPerm *perm, size_t k);

/**
 * Whether every cycle of the breakpoint graph has length at most 2.
 *
 * # Safety
 * `perm` must be a live handle and `out` valid for writes.
 */
enum BpStatus bp_perm_is_simple(const struct BpPerm *perm, bool *out);

/**
 * Cycle-count lower bound on the prefix signed reversal distance.
 *
 * # Safety
 * `perm` must be a live handle and `out` valid for writes.
 */
enum BpStatus bp_lower_bound(const struct BpPerm *perm, size_t *out);

/**
 * Exact prefix signed reversal distance of a simple permutation.
 *
 * # Safety
 * `perm` must be a live handle and `out` valid for writes.
 */
enum BpStatus bp_psrd_simple(const struct BpPerm *perm, size_t *out);

/**
 * Optimal flip sequence sorting a simple permutation.
 *
 * # Safety
 * `perm` must be a live handle and `out` valid for writes.
 */
enum BpStatus bp_sort_simple(const struct BpPerm *perm, struct BpFlips **out);

/**
 * Number of flips, or 0 for a null handle.
 *
 * # Safety
 * `flips` must be null or a live handle.
 */
size_t bp_flips_len(const struct BpFlips *flips);

/**
 * Pointer to the flip lengths, valid while the handle lives.
 *
 * # Safety
 * `flips` must be null or a live handle.
 */
const size_t *bp_flips_data(const struct BpFlips *flips);

/**
 * Releases a flip sequence. Null is ignored.
 *
 * # Safety
 * `flips` must be null or a handle returned by this library, not yet freed.
 */
void bp_flips_free(struct BpFlips *flips);

/**
 * Builds a distance table by breadth-first search. `exchanges` selects
 * prefix exchanges on unsigned permutations instead of prefix signed
 * reversals.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum BpStatus bp_oracle_build(size_t n, bool exchanges, struct BpOracle **out);

/**
 * Looks up the distance of `perm` in the table.
 *
 * # Safety
 * `oracle` and `perm` must be live handles and `out` valid for writes.
 */
enum BpStatus bp_oracle_distance(const struct BpOracle *oracle,
                                 const struct BpPerm *perm,
                                 uint8_t *out);

/**
 * Releases a distance table. Null is ignored.
 *
 * # Safety
 * `oracle` must be null or a handle returned by this library, not yet freed.
 */
void bp_oracle_free(struct BpOracle *oracle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BURNT_PANCAKE_H */
