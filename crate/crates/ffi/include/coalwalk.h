#ifndef COALWALK_H
#define COALWALK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_NULL_POINTER = 1,
  CW_STATUS_INVALID_ARGUMENT = 2,
  CW_STATUS_INVALID_SPEC = 3,
  CW_STATUS_DISCONNECTED = 4,
  CW_STATUS_PARSE = 5,
  CW_STATUS_TOO_LARGE = 6,
  CW_STATUS_NUMERICAL = 7,
  CW_STATUS_ALL_CENSORED = 8,
  CW_STATUS_GENERATION_FAILURE = 9,
  CW_STATUS_PANIC = 10,
} CwStatus;

// Opaque graph handle.
typedef struct CwGraph CwGraph;

// Summary of a Monte Carlo ensemble.
typedef struct CwEstimate {
  double mean;
  double std_err;
  double ci95_lo;
  double ci95_hi;
  size_t trials;
  size_t censored;
} CwEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length in bytes.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t cw_last_error_message(char *buf, size_t len);

// Generates a graph of a named family. `size` is the family's own parameter
// (vertex count, levels, dimension or side); `dim`, `degree` and `alpha` may
// be 0 for their defaults.
//
// # Safety
// `family` must be a NUL-terminated string; `out` must be writable.
enum CwStatus cw_graph_generate(const char *family,
                                size_t size,
                                uint32_t dim,
                                size_t degree,
                                double alpha,
                                uint64_t seed,
                                struct CwGraph **out);

// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
// `edges` (`2 * edge_count` entries).
//
// # Safety
// `edges` must point to `2 * edge_count` readable values; `out` must be
// writable.
enum CwStatus cw_graph_from_edges(size_t n,
                                  const uint32_t *edges,
                                  size_t edge_count,
                                  struct CwGraph **out);

// Parses a whitespace-separated edge list.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum CwStatus cw_graph_from_edge_list(const char *text, struct CwGraph **out);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from a `cw_graph_*` constructor and not be used afterwards.
void cw_graph_free(struct CwGraph *g);

// Number of vertices, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t cw_graph_vertex_count(const struct CwGraph *g);

// Number of edges, or 0 for null.
//
// # Safety
// `g` must be null or a live handle.
size_t cw_graph_edge_count(const struct CwGraph *g);

// Worst-case expected hitting time of the lazy walk.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum CwStatus cw_t_hit(const struct CwGraph *g, double *out);

// Mixing time at threshold `eps`. `exact` is set to false when only an
// upper bracket is available (`out` then holds the upper end).
//
// # Safety
// `g` must be a live handle; `out` and `exact` writable.
enum CwStatus cw_mixing_time(const struct CwGraph *g, double eps, uint64_t *out, bool *exact);

// Second-largest eigenvalue and spectral gap `1 - λ₂`.
//
// # Safety
// `g` must be a live handle; `lambda2` and `gap` writable.
enum CwStatus cw_spectral_gap(const struct CwGraph *g, double *lambda2, double *gap);

// Exact worst-pair and stationary-start meeting times.
//
// # Safety
// `g` must be a live handle; `t_meet` and `t_meet_pi` writable.
enum CwStatus cw_meeting(const struct CwGraph *g, double *t_meet, double *t_meet_pi);

// Monte Carlo coalescence time from every vertex. `cap` 0 means the
// default `50 n³`.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum CwStatus cw_coalescence_estimate(const struct CwGraph *g,
                                      size_t trials,
                                      uint64_t seed,
                                      uint64_t cap,
                                      struct CwEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COALWALK_H */
