#ifndef ELLIPTA_H
#define ELLIPTA_H

#include <stdint.h>

// J routes selectable from C.
typedef enum EllipRoute {
  ELLIP_ROUTE_OPERATOR = 0,
  ELLIP_ROUTE_RECURRENCE = 1,
  ELLIP_ROUTE_VIENNOT = 2,
  ELLIP_ROUTE_SERIES = 3,
} EllipRoute;

// Status codes returned by every entry point.
typedef enum EllipStatus {
  ELLIP_STATUS_OK = 0,
  ELLIP_STATUS_NULL_POINTER = 1,
  ELLIP_STATUS_INVALID_ARGUMENT = 2,
  ELLIP_STATUS_PARSE = 3,
  ELLIP_STATUS_CAP_EXCEEDED = 4,
  ELLIP_STATUS_VERIFICATION_FAILED = 5,
  ELLIP_STATUS_INTERNAL = 6,
  ELLIP_STATUS_PANIC = 7,
} EllipStatus;

// Opaque univariate polynomial with big-integer coefficients.
typedef struct EllipPoly EllipPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *ellipta_last_error(void);

// Frees a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ellipta_string_free(char *s);

// Frees a polynomial handle. Null is ignored.
//
// # Safety
// `p` must come from this library and not have been freed.
void ellipta_poly_free(struct EllipPoly *p);

// Parses a polynomial in `x` such as `"1 + 14x + x^2"`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum EllipStatus ellipta_poly_parse(const char *text, struct EllipPoly **out);

// Degree of `p`, or -1 for the zero polynomial.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum EllipStatus ellipta_poly_degree(const struct EllipPoly *p, int64_t *out);

// Coefficient of `x^k` as a decimal string.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum EllipStatus ellipta_poly_coeff(const struct EllipPoly *p, int k, char **out);

// Text form, e.g. `1 + 408x + 912x^2 + 64x^3`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum EllipStatus ellipta_poly_to_string(const struct EllipPoly *p, char **out);

// JSON form `{"var":"x","coeffs":[...]}` with decimal-string coefficients.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum EllipStatus ellipta_poly_to_json(const struct EllipPoly *p, char **out);

// `J_n` by the chosen route.
//
// # Safety
// `out` must be writable.
enum EllipStatus ellipta_j(int n, enum EllipRoute route, struct EllipPoly **out);

// `J_(2m+2) = A + x B` from the gamma-vector construction.
//
// # Safety
// `out_a` and `out_b` must be writable.
enum EllipStatus ellipta_j_even_decomposition(int m,
                                              struct EllipPoly **out_a,
                                              struct EllipPoly **out_b);

// Symmetry, unimodality, gamma and bi-gamma verdicts with certificates,
// as JSON. A negative `center` means the degree of `p`.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum EllipStatus ellipta_analyze(const struct EllipPoly *p, int center, char **out);

// Runs a verification suite by name. A negative `max_n` selects the
// suite default. `passed` receives 1 or 0; `report` (optional) receives the
// text report. A failing suite is not an error status.
//
// # Safety
// `name` must be a NUL-terminated string; `passed` must be writable;
// `report` may be null.
enum EllipStatus ellipta_verify(const char *name, int max_n, int *passed, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELLIPTA_H */
