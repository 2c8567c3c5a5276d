#ifndef IRRLAB_H
#define IRRLAB_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * `mode` values for the φ functions.
 */
#define IRR_MODE_STANDARD 0

#define IRR_MODE_PERTURBED 1

/**
 * `format` values for `irr_report`.
 */
#define IRR_FORMAT_MD 0

#define IRR_FORMAT_CSV 1

#define IRR_FORMAT_JSON 2

/**
 * Result code of every `irr_*` call.
 */
typedef enum IrrStatus {
  IRR_STATUS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  IRR_STATUS_NULL = 1,
  IRR_STATUS_PARSE = 2,
  /**
   * The output state has probability zero.
   */
  IRR_STATUS_UNREACHABLE = 3,
  IRR_STATUS_INVALID_ARG = 4,
  /**
   * The measure is undefined here (infinite divergence, no usable partition).
   */
  IRR_STATUS_UNDEFINED = 5,
  IRR_STATUS_UTF8 = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  IRR_STATUS_PANIC = 7,
} IrrStatus;

/**
 * A network with its uniform-input joint distribution.
 */
typedef struct IrrSystem IrrSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a system from threshold-DSL text.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `out` must be writable.
 */
enum IrrStatus irr_system_from_spec(const char *spec, struct IrrSystem **out);

/**
 * Builds a system from a transition table (`bits -> bits` per line).
 *
 * # Safety
 * `table` must be a NUL-terminated string; `out` must be writable.
 */
enum IrrStatus irr_system_from_table(const char *table, struct IrrSystem **out);

/**
 * Builds one of the named example networks, e.g. `"OR-GET"` or `"4321"`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum IrrStatus irr_system_builtin(const char *name, struct IrrSystem **out);

/**
 * A new system whose one step is `t` steps of `sys`.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_system_compose(const struct IrrSystem *sys, size_t t, struct IrrSystem **out);

/**
 * Frees a handle. NULL is ignored.
 *
 * # Safety
 * `sys` must be NULL or a handle not yet freed.
 */
void irr_system_free(struct IrrSystem *sys);

/**
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_system_node_count(const struct IrrSystem *sys, size_t *out);

/**
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_system_next_state(const struct IrrSystem *sys, size_t x, size_t *out);

/**
 * `P(y)` under uniform inputs.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_output_probability(const struct IrrSystem *sys, size_t y, double *out);

/**
 * Effective information `ei(X -> y)` in bits.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_ei(const struct IrrSystem *sys, size_t y, double *out);

/**
 * `φ(y)`: ei beyond the minimum information partition.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_phi(const struct IrrSystem *sys, size_t y, uint32_t mode_, double *out);

/**
 * Lower and upper bound on `ψ(y)`.
 *
 * # Safety
 * `sys` must be a live handle; `lower` and `upper` must be writable.
 */
enum IrrStatus irr_psi_bounds(const struct IrrSystem *sys, size_t y, double *lower, double *upper);

/**
 * Averaged `⟨φ⟩`.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_bracket_phi(const struct IrrSystem *sys, uint32_t mode_, double *out);

/**
 * Averaged `⟨ψ⟩` bounds.
 *
 * # Safety
 * `sys` must be a live handle; `lower` and `upper` must be writable.
 */
enum IrrStatus irr_bracket_psi(const struct IrrSystem *sys, double *lower, double *upper);

/**
 * `I(X;Y)` in bits.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_mutual_information(const struct IrrSystem *sys, double *out);

/**
 * Full report as a newly allocated string; free it with `irr_string_free`.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum IrrStatus irr_report(const struct IrrSystem *sys, uint32_t format, char **out);

/**
 * Frees a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from `irr_report`, not yet freed.
 */
void irr_string_free(char *s);

/**
 * Message of the last failed call on this thread, or NULL after a success.
 * Valid until the next `irr_*` call on the same thread.
 */
const char *irr_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IRRLAB_H */
