#ifndef SBOXKIT_H
#define SBOXKIT_H

/* Generated by cbindgen from sboxkit-ffi; regenerate instead of editing. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code returned by every fallible call.
 */
typedef enum SbkStatus {
  SBK_STATUS_OK = 0,
  /*
   Malformed input: bad field spec, recipe syntax, table size, range.
   */
  SBK_STATUS_INVALID_ARGUMENT = 1,
  /*
   A construction precondition failed (named in the error message).
   */
  SBK_STATUS_CONSTRUCTION_ERROR = 2,
  /*
   The operation needs a permutation and the function is not one.
   */
  SBK_STATUS_NOT_PERMUTATION = 3,
  /*
   A proved bound was violated; indicates a bug, not a user error.
   */
  SBK_STATUS_BOUND_VIOLATION = 4,
  SBK_STATUS_INTERNAL_ERROR = 5,
  SBK_STATUS_NULL_POINTER = 6,
} SbkStatus;

/*
 Opaque GF(2^n) handle.
 */
typedef struct SbkField SbkField;

/*
 Opaque function (lookup table) handle.
 */
typedef struct SbkFunction SbkFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Copies the last error message on this thread into `buf` (NUL-terminated,
 truncated to `cap`). Returns the full message length in bytes, excluding
 the terminator.
 */
size_t sbk_last_error(char *buf, size_t cap);

/*
 Builds a validated GF(2^n). Pass `modulus = 0` for the built-in default
 polynomial and `s = 0` for no designated subfield degree.
 */
enum SbkStatus sbk_field_new(uint32_t n, uint64_t modulus, uint32_t s, struct SbkField **out);

/*
 Parses the textual form `n=<int>[,mod=0x<hex>][,s=<int>]`.
 */
enum SbkStatus sbk_field_parse(const char *spec, struct SbkField **out);

void sbk_field_free(struct SbkField *field);

/*
 Extension degree n of the field.
 */
uint32_t sbk_field_degree(const struct SbkField *field);

/*
 Materializes a recipe (e.g. `gold(k=2)` or
 `piecewise(f=affine_inv(w*x);g=gold(k=2);s=2)`) over the field.
 */
enum SbkStatus sbk_function_from_recipe(const struct SbkField *field,
                                        const char *recipe,
                                        struct SbkFunction **out);

/*
 Wraps a raw lookup table of exactly 2^n entries, each below 2^n.
 */
enum SbkStatus sbk_function_from_table(const struct SbkField *field,
                                       const uint64_t *table,
                                       size_t len,
                                       struct SbkFunction **out);

void sbk_function_free(struct SbkFunction *func);

/*
 Number of table entries, 2^n.
 */
size_t sbk_function_size(const struct SbkFunction *func);

/*
 Evaluates the function at one point.
 */
enum SbkStatus sbk_function_eval(const struct SbkFunction *func, uint64_t x, uint64_t *out);

/*
 Copies the full table into `buf`; `cap` must be at least 2^n.
 */
enum SbkStatus sbk_function_table(const struct SbkFunction *func, uint64_t *buf, size_t cap);

enum SbkStatus sbk_is_permutation(const struct SbkFunction *func, bool *out);

/*
 Differential uniformity (max DDT entry over a != 0).
 */
enum SbkStatus sbk_differential_uniformity(const struct SbkFunction *func, uint32_t *out);

/*
 Nonlinearity 2^{n-1} - max|W|/2.
 */
enum SbkStatus sbk_nonlinearity(const struct SbkFunction *func, uint32_t *out);

/*
 Boomerang uniformity; fails with NOT_PERMUTATION for non-bijections.
 */
enum SbkStatus sbk_boomerang_uniformity(const struct SbkFunction *func, uint32_t *out);

/*
 Algebraic degree (cross-checked ANF and univariate routes).
 */
enum SbkStatus sbk_algebraic_degree(const struct SbkFunction *func, uint32_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SBOXKIT_H */
