/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef TREEPART_H
#define TREEPART_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TpStatus {
  TP_STATUS_OK = 0,
  TP_STATUS_NULL_POINTER = 1,
  TP_STATUS_INVALID_ARGUMENT = 2,
  TP_STATUS_PARSE_ERROR = 3,
  // The pipeline rejected; the message names the certificate.
  TP_STATUS_REJECTED = 4,
  // Instance above an exact solver's vertex cap.
  TP_STATUS_CAPACITY = 5,
  // Exact width exceeds the requested maximum.
  TP_STATUS_ABOVE_KMAX = 6,
  TP_STATUS_INVALID_PARTITION = 7,
  TP_STATUS_OUT_OF_RANGE = 8,
  TP_STATUS_INTERNAL = 9,
} TpStatus;

typedef struct TpGraph TpGraph;

typedef struct TpPartition TpPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread. The pointer stays valid
// until the next failing call on the same thread.
const char *tp_last_error(void);

// Graph on `n` vertices from `m` edges stored as `2m` ids in `edges`.
//
// # Safety
// `edges` must point to `2 * m` readable values (it may be null when `m == 0`)
// and `out` must be writable.
enum TpStatus tp_graph_from_edges(size_t n, const size_t *edges, size_t m, struct TpGraph **out);

// Graph from the text of a `.gr` file.
//
// # Safety
// `text` must be a NUL-terminated string and `out` writable.
enum TpStatus tp_graph_parse_gr(const char *text, struct TpGraph **out);

// # Safety
// `g` must be null or a live handle from this library.
size_t tp_graph_num_vertices(const struct TpGraph *g);

// # Safety
// `g` must be null or a live handle from this library.
size_t tp_graph_num_edges(const struct TpGraph *g);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void tp_graph_free(struct TpGraph *g);

// Runs the approximation pipeline for parameter `k`. On a rejection returns
// [`TpStatus::Rejected`] and leaves `*out` untouched.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum TpStatus tp_decompose(const struct TpGraph *g, size_t k, struct TpPartition **out);

// Minimum-width tree-partition when the width is at most `kmax`.
//
// # Safety
// `g` must be a live graph handle and `out` writable.
enum TpStatus tp_exact_tpw(const struct TpGraph *g, size_t kmax, struct TpPartition **out);

// Checks `p` against `g`; writes the width on success.
//
// # Safety
// Handles must be live; `width` must be null or writable.
enum TpStatus tp_verify_partition(const struct TpGraph *g,
                                  const struct TpPartition *p,
                                  size_t *width);

// # Safety
// `p` must be null or a live partition handle.
size_t tp_partition_width(const struct TpPartition *p);

// # Safety
// `p` must be null or a live partition handle.
size_t tp_partition_num_bags(const struct TpPartition *p);

// Copies bag `bag` into `buf` when it fits; `*len` always receives its size.
//
// # Safety
// `p` must be live, `len` writable, and `buf` writable for `cap` values
// (null allowed with `cap == 0` to query the size).
enum TpStatus tp_partition_bag(const struct TpPartition *p,
                               size_t bag,
                               size_t *buf,
                               size_t cap,
                               size_t *len);

// # Safety
// `p` must be null or a live partition handle.
size_t tp_partition_num_edges(const struct TpPartition *p);

// # Safety
// `p` must be live and `a`, `b` writable.
enum TpStatus tp_partition_edge(const struct TpPartition *p, size_t index, size_t *a, size_t *b);

// The partition in `.tp` format; release with [`tp_string_free`].
//
// # Safety
// `p` must be live and `out` writable.
enum TpStatus tp_partition_emit(const struct TpPartition *p, char **out);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void tp_string_free(char *s);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void tp_partition_free(struct TpPartition *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREEPART_H */
