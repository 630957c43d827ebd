#ifndef GRKAPPA_H
#define GRKAPPA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes of every fallible call.
typedef enum GrkStatus {
  GRK_STATUS_OK = 0,
  GRK_STATUS_NULL_POINTER = 1,
  GRK_STATUS_INVALID_UTF8 = 2,
  GRK_STATUS_PARSE = 3,
  GRK_STATUS_DOMAIN = 4,
  GRK_STATUS_INCONSISTENT = 5,
  GRK_STATUS_OUT_OF_RANGE = 6,
  GRK_STATUS_INTERNAL = 7,
} GrkStatus;

// Algorithm used by [`grk_decomposition_matrix`].
typedef enum GrkMethod {
  GRK_METHOD_LLT = 0,
  GRK_METHOD_BAR = 1,
  GRK_METHOD_EXTREMAL = 2,
} GrkMethod;

// Opaque graded decomposition matrix of one block.
typedef struct GrkMatrix GrkMatrix;

// Opaque parameter set (e, kappa).
typedef struct GrkParams GrkParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next call into this library on the same thread.
const char *grk_last_error_message(void);

// Library version as a static string.
const char *grk_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void grk_string_free(char *s);

// Creates parameters from `e` and `kappa_len` residues.
//
// # Safety
// `kappa` must point to `kappa_len` values; `out` must be writable.
enum GrkStatus grk_params_new(uint32_t e,
                              const int64_t *kappa,
                              size_t kappa_len,
                              struct GrkParams **out);

// # Safety
// `p` must come from [`grk_params_new`] and not have been freed.
void grk_params_free(struct GrkParams *p);

// Writes whether `mu` (text form, e.g. "2,1|0") is restricted.
//
// # Safety
// Pointers must be valid; `mu` NUL-terminated.
enum GrkStatus grk_is_restricted(const struct GrkParams *params, const char *mu, bool *out);

// Writes the Mullineux image of a level-one restricted partition.
//
// # Safety
// Pointers must be valid; `mu` NUL-terminated.
enum GrkStatus grk_mullineux(const struct GrkParams *params, const char *mu, char **out);

// Writes the graded Specht character of `mu` as JSON.
//
// # Safety
// Pointers must be valid; `mu` NUL-terminated.
enum GrkStatus grk_specht_character_json(const struct GrkParams *params,
                                         const char *mu,
                                         char **out);

// Computes the graded decomposition matrix of the block with content
// `alpha` (e.g. "0:2,1:1").
//
// # Safety
// Pointers must be valid; `alpha` NUL-terminated.
enum GrkStatus grk_decomposition_matrix(const struct GrkParams *params,
                                        const char *alpha,
                                        enum GrkMethod method,
                                        struct GrkMatrix **out);

// # Safety
// `m` must come from [`grk_decomposition_matrix`] and not have been freed.
void grk_matrix_free(struct GrkMatrix *m);

// Number of rows (all multipartitions of the block); 0 for null.
//
// # Safety
// `m` must be null or a live matrix handle.
size_t grk_matrix_rows(const struct GrkMatrix *m);

// Number of columns (restricted multipartitions); 0 for null.
//
// # Safety
// `m` must be null or a live matrix handle.
size_t grk_matrix_cols(const struct GrkMatrix *m);

// Writes the label of row `r`.
//
// # Safety
// Pointers must be valid.
enum GrkStatus grk_matrix_row_label(const struct GrkMatrix *m, size_t r, char **out);

// Writes the label of column `c`.
//
// # Safety
// Pointers must be valid.
enum GrkStatus grk_matrix_col_label(const struct GrkMatrix *m, size_t c, char **out);

// Writes entry (r, c) as a Laurent polynomial in text form.
//
// # Safety
// Pointers must be valid.
enum GrkStatus grk_matrix_entry(const struct GrkMatrix *m, size_t r, size_t c, char **out);

// Writes the whole matrix as JSON.
//
// # Safety
// Pointers must be valid.
enum GrkStatus grk_matrix_to_json(const struct GrkMatrix *m, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRKAPPA_H */
