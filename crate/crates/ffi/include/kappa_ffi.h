#ifndef KAPPA_FFI_H
#define KAPPA_FFI_H

#include <stdbool.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum KpStatus {
  KP_STATUS_OK = 0,
  KP_STATUS_NULL_POINTER = 1,
  KP_STATUS_INVALID_UTF8 = 2,
  KP_STATUS_INVALID_ARGUMENT = 3,
  KP_STATUS_PARSE = 4,
  KP_STATUS_ALGEBRA = 5,
  KP_STATUS_MISSING_FIXTURE = 6,
  KP_STATUS_NUMERIC = 7,
  KP_STATUS_PANIC = 8,
} KpStatus;

// Generator basis of `Δ(P_k)`.
typedef enum KpBasis {
  KP_BASIS_BICROSSPRODUCT = 0,
  KP_BASIS_STANDARD = 1,
} KpBasis;

// Factor order of the cross product.
typedef enum KpOrder {
  KP_ORDER_XP = 0,
  KP_ORDER_PX = 1,
} KpOrder;

// Opaque algebra element.
typedef struct KpElement KpElement;

// Opaque derived phase-space table.
typedef struct KpTable KpTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. Owned by the library.
const char *kp_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void kp_string_free(char *s);

// Derives the phase-space table for a configuration.
//
// # Safety
// `out` must be valid for writes.
enum KpStatus kp_table_derive(enum KpBasis basis,
                              enum KpOrder order,
                              bool flipped_metric,
                              bool transposed_coproduct,
                              struct KpTable **out);

// # Safety
// `t` must come from [`kp_table_derive`] and not have been freed. Null is ignored.
void kp_table_free(struct KpTable *t);

// Serializes the table to JSON. Free the result with [`kp_string_free`].
//
// # Safety
// `t` must be a live handle and `out` valid for writes.
enum KpStatus kp_table_to_json(const struct KpTable *t, char **out);

// Compares the table with its reference fixture; `clean` is true when
// nothing disagrees.
//
// # Safety
// `t` must be a live handle and `clean` valid for writes.
enum KpStatus kp_table_verify(const struct KpTable *t, bool *clean);

// Parses an element such as `"x1*P1 - i*hbar*E"`.
//
// # Safety
// `src` must be a NUL-terminated string and `out` valid for writes.
enum KpStatus kp_element_parse(const char *src, struct KpElement **out);

// # Safety
// `e` must come from this library and not have been freed. Null is ignored.
void kp_element_free(struct KpElement *e);

// Prints an element in the syntax accepted by [`kp_element_parse`].
//
// # Safety
// `e` must be a live handle and `out` valid for writes.
enum KpStatus kp_element_to_string(const struct KpElement *e, char **out);

// Normal form of `e` in the phase-space algebra of `t`.
//
// # Safety
// Handles must be live and `out` valid for writes.
enum KpStatus kp_table_normalize(const struct KpTable *t,
                                 const struct KpElement *e,
                                 struct KpElement **out);

// Normal form of `[a, b]` in the phase-space algebra of `t`.
//
// # Safety
// Handles must be live and `out` valid for writes.
enum KpStatus kp_table_commutator(const struct KpTable *t,
                                  const struct KpElement *a,
                                  const struct KpElement *b,
                                  struct KpElement **out);

// Duality pairing `<x, p>` for the Hopf pair underlying `t`, printed as a scalar.
//
// # Safety
// Handles must be live and `out` valid for writes.
enum KpStatus kp_table_pair(const struct KpTable *t,
                            const struct KpElement *x,
                            const struct KpElement *p,
                            char **out);

// Runs the uncertainty sweep for one κ over `states` seeded random states
// and both represented cases. Writes the JSON report and whether every
// inequality held.
//
// # Safety
// `json` and `passed` must be valid for writes.
enum KpStatus kp_uncertainty_sweep(double kappa,
                                   uint32_t states,
                                   uint64_t seed,
                                   char **json,
                                   bool *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KAPPA_FFI_H */
