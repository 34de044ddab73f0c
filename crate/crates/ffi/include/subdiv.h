#ifndef SUBDIV_H
#define SUBDIV_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum SubdivStatus {
  SUBDIV_STATUS_OK = 0,
  SUBDIV_STATUS_NULL_POINTER = 1,
  SUBDIV_STATUS_INVALID_UTF8 = 2,
  SUBDIV_STATUS_PARSE = 3,
  SUBDIV_STATUS_UNKNOWN_SCHEME = 4,
  // Wrong arity, parity or mask layout for a conversion.
  SUBDIV_STATUS_PRECONDITION = 5,
  SUBDIV_STATUS_TOO_FEW_POINTS = 6,
  SUBDIV_STATUS_ANALYSIS = 7,
  SUBDIV_STATUS_BUFFER_TOO_SMALL = 8,
  SUBDIV_STATUS_PANIC = 9,
} SubdivStatus;

// Opaque control polygon.
typedef struct SubdivPolygon SubdivPolygon;

// Opaque subdivision scheme.
typedef struct SubdivScheme SubdivScheme;

// Hölder regularity bounds.
typedef struct SubdivRegularity {
  uint32_t arity;
  uint32_t smoothing_order;
  double xi_lower;
  double xi_mid;
  double xi_upper;
  double r_lower;
  double r_mid;
  double r_upper;
} SubdivRegularity;

typedef struct SubdivPrecision {
  int64_t degree_of_precision;
  int64_t degree_of_generation;
  // Set when a parameter shift was detected.
  bool has_shift;
  int64_t shift_numerator;
  int64_t shift_denominator;
} SubdivPrecision;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next call into this library on the same thread.
const char *subdiv_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void subdiv_string_free(char *s);

// Looks up a built-in scheme by name.
//
// # Safety
// `name` must be a nul-terminated string; `out` must be writable.
enum SubdivStatus subdiv_scheme_from_catalog(const char *name, struct SubdivScheme **out);

// Parses a mask JSON document.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum SubdivStatus subdiv_scheme_from_json(const char *json, struct SubdivScheme **out);

// # Safety
// `scheme` must be null or a handle from this library, not yet freed.
void subdiv_scheme_free(struct SubdivScheme *scheme);

// Arity of the scheme, or 0 for a null handle.
//
// # Safety
// `scheme` must be null or a live handle.
uintptr_t subdiv_scheme_arity(const struct SubdivScheme *scheme);

// The mask as JSON with `"p/q"` coefficients.
//
// # Safety
// `scheme` must be a live handle; `out` must be writable.
enum SubdivStatus subdiv_scheme_to_json(const struct SubdivScheme *scheme, char **out);

// Converts a binary scheme to its quaternary counterpart. With `check_oracle`
// set, the closed form is compared with the symbol product and a mismatch is
// reported as `Analysis`.
//
// # Safety
// `binary` must be a live handle; `out` must be writable.
enum SubdivStatus subdiv_convert(const struct SubdivScheme *binary,
                                 bool check_oracle,
                                 struct SubdivScheme **out);

// Hölder regularity with the default options.
//
// # Safety
// `scheme` must be a live handle; `out` must be writable.
enum SubdivStatus subdiv_holder(const struct SubdivScheme *scheme, struct SubdivRegularity *out);

// Degrees of precision and generation, checking up to degree 16.
//
// # Safety
// `scheme` must be a live handle; `out` must be writable.
enum SubdivStatus subdiv_precision(const struct SubdivScheme *scheme, struct SubdivPrecision *out);

// Polygon from `count` points of `dimension` doubles each, read row by row.
// Each double is taken at its exact binary value.
//
// # Safety
// `coords` must point to `count * dimension` readable doubles; `out` must be writable.
enum SubdivStatus subdiv_polygon_new(const double *coords,
                                     uintptr_t count,
                                     uintptr_t dimension,
                                     bool closed,
                                     struct SubdivPolygon **out);

// Parses the polygon CSV form (optional `closed`/`open` header, one point per line).
//
// # Safety
// `csv` must be a nul-terminated string; `out` must be writable.
enum SubdivStatus subdiv_polygon_from_csv(const char *csv, struct SubdivPolygon **out);

// # Safety
// `polygon` must be null or a handle from this library, not yet freed.
void subdiv_polygon_free(struct SubdivPolygon *polygon);

// Number of points, or 0 for a null handle.
//
// # Safety
// `polygon` must be null or a live handle.
uintptr_t subdiv_polygon_len(const struct SubdivPolygon *polygon);

// Coordinates per point, or 0 for a null handle.
//
// # Safety
// `polygon` must be null or a live handle.
uintptr_t subdiv_polygon_dimension(const struct SubdivPolygon *polygon);

// Copies the coordinates, rounded to double, into `buffer` row by row.
// `capacity` is the number of doubles `buffer` holds.
//
// # Safety
// `polygon` must be a live handle; `buffer` must hold `capacity` writable doubles.
enum SubdivStatus subdiv_polygon_coords(const struct SubdivPolygon *polygon,
                                        double *buffer,
                                        uintptr_t capacity);

// Exact CSV form with `"p/q"` coordinates.
//
// # Safety
// `polygon` must be a live handle; `out` must be writable.
enum SubdivStatus subdiv_polygon_to_csv(const struct SubdivPolygon *polygon, char **out);

// Applies `steps` refinement steps.
//
// # Safety
// `polygon` and `scheme` must be live handles; `out` must be writable.
enum SubdivStatus subdiv_refine(const struct SubdivPolygon *polygon,
                                const struct SubdivScheme *scheme,
                                uintptr_t steps,
                                struct SubdivPolygon **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBDIV_H */
