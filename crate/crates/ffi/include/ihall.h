#ifndef IHALL_H
#define IHALL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IhallStatus {
  IhallStatus_Ok = 0,
  IhallStatus_CheckFailed = 1,
  IhallStatus_InvalidArgument = 2,
  IhallStatus_BudgetExhausted = 3,
  IhallStatus_Parse = 4,
  IhallStatus_NullPointer = 5,
  IhallStatus_Internal = 6,
} IhallStatus;

/**
 * An iHall algebra over `F_q` for one quiver.
 */
typedef struct IhallAlgebra IhallAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates the algebra for `quiver` (for example `"cn:2"`) over `F_q`.
 *
 * # Safety
 * `quiver` must be a nul-terminated string and `out` a valid pointer.
 */
enum IhallStatus ihall_algebra_new(const char *quiver, uint32_t q, struct IhallAlgebra **out);

/**
 * # Safety
 * `alg` must come from [`ihall_algebra_new`] and not be used afterwards. Null is ignored.
 */
void ihall_algebra_free(struct IhallAlgebra *alg);

/**
 * Multiplies two elements in canonical rendering (or bare class labels such
 * as `"1:1"`) and writes the rendered product to `out`.
 *
 * # Safety
 * `alg` must be a live handle, `a` and `b` nul-terminated strings, `out` a valid pointer.
 */
enum IhallStatus ihall_product(const struct IhallAlgebra *alg,
                               const char *a,
                               const char *b,
                               char **out);

/**
 * Runs a verification suite with its default parameters, optionally
 * restricted to one quiver (`quiver` may be null) and one field order
 * (`q == 0` keeps the defaults). Writes the JSON report to `report` and
 * returns `Ok`, `CheckFailed` or `BudgetExhausted` accordingly.
 *
 * # Safety
 * `suite` must be nul-terminated, `quiver` null or nul-terminated, `report` a valid pointer.
 */
enum IhallStatus ihall_verify(const char *suite,
                              const char *quiver,
                              uint32_t q,
                              uint64_t seed,
                              char **report);

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *ihall_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void ihall_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IHALL_H */
