/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef MORSE_RES_H
#define MORSE_RES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum MrStatus {
  MR_STATUS_OK = 0,
  MR_STATUS_NULL_POINTER = 1,
  MR_STATUS_INVALID_UTF8 = 2,
  MR_STATUS_PARSE = 3,
  MR_STATUS_INVALID_ARGUMENT = 4,
  MR_STATUS_DOMAIN = 5,
  MR_STATUS_SEARCH_GUARD = 6,
  MR_STATUS_BUFFER_TOO_SMALL = 7,
  MR_STATUS_PANIC = 8,
} MrStatus;

// Which matching to build; all use the ideal's own generator order.
typedef enum MrMatching {
  MR_MATCHING_BARILE_MACCHIA = 0,
  MR_MATCHING_LYUBEZNIK = 1,
  MR_MATCHING_TRIMMED = 2,
  MR_MATCHING_TAYLOR = 3,
} MrMatching;

// Opaque ideal handle with its Taylor complex.
typedef struct MrIdeal MrIdeal;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *mr_version(void);

// Message for the last failed call on this thread (empty after success).
// Valid until the next call on the same thread.
const char *mr_last_error(void);

// Parses an ideal file (`vars: ...` / `gens: ...`). Non-minimal generators
// are dropped.
//
// # Safety
// `text` must be NUL-terminated; `out` must be writable.
enum MrStatus mr_ideal_parse(const char *text, struct MrIdeal **out);

// Edge ideal of the `n`-cycle.
//
// # Safety
// `out` must be writable.
enum MrStatus mr_ideal_cycle(size_t n, struct MrIdeal **out);

// New handle with generators reordered by name, smallest first,
// comma separated.
//
// # Safety
// `ideal` must be a live handle, `order` NUL-terminated, `out` writable.
enum MrStatus mr_ideal_reorder(const struct MrIdeal *ideal,
                               const char *order,
                               struct MrIdeal **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `ideal` must come from this library and not be used afterwards.
void mr_ideal_free(struct MrIdeal *ideal);

// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_ideal_num_generators(const struct MrIdeal *ideal, size_t *out);

// The ideal in file format.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_ideal_to_string(const struct MrIdeal *ideal, char **out);

// Ranks of the resolution from `kind`, degrees `0..=n`.
//
// # Safety
// `ideal` must be a live handle; `buf` must hold `capacity` entries.
enum MrStatus mr_ranks(const struct MrIdeal *ideal,
                       enum MrMatching kind,
                       size_t *buf,
                       size_t capacity,
                       size_t *out_len);

// Total Betti numbers over the rationals, degrees `0..=n`.
//
// # Safety
// As [`mr_ranks`].
enum MrStatus mr_betti_totals(const struct MrIdeal *ideal,
                              size_t *buf,
                              size_t capacity,
                              size_t *out_len);

// Whether the resolution from `kind` is minimal.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_is_minimal(const struct MrIdeal *ideal, enum MrMatching kind, bool *out);

// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_is_bridge_friendly(const struct MrIdeal *ideal, bool *out);

// Matching edges as JSON: `[{"source":[...],"target":[...]}, ...]`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_matching_json(const struct MrIdeal *ideal, enum MrMatching kind, char **out);

// Critical cells as JSON, grouped by cardinality from `n` down to 1.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_critical_json(const struct MrIdeal *ideal, enum MrMatching kind, char **out);

// Morse complex as JSON: basis per degree and sparse differentials.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_complex_json(const struct MrIdeal *ideal, enum MrMatching kind, char **out);

// Every bridge-friendly order with its matching, as JSON.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_friendly_list_json(const struct MrIdeal *ideal,
                                    size_t workers,
                                    bool force,
                                    char **out);

// Searches for an order with a minimal Barile-Macchia resolution, as
// JSON `{"betti":[...],"tried":N,"hits":N,"witness":null|{...}}`.
//
// # Safety
// `ideal` must be a live handle and `out` writable.
enum MrStatus mr_minimal_search_json(const struct MrIdeal *ideal,
                                     bool exhaustive,
                                     size_t workers,
                                     bool force,
                                     char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void mr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MORSE_RES_H */
