#ifndef STANCEGRAPH_H
#define STANCEGRAPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SgOrdering {
  SG_ORDERING_DFS = 0,
  SG_ORDERING_BFS = 1,
  SG_ORDERING_TOPOLOGICAL = 2,
  SG_ORDERING_RANDOM = 3,
} SgOrdering;

typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_UTF8 = 2,
  SG_STATUS_PARSE = 3,
  SG_STATUS_INVALID_ARGUMENT = 4,
  SG_STATUS_TOO_LARGE = 5,
  SG_STATUS_INFEASIBLE = 6,
  SG_STATUS_IO = 7,
  SG_STATUS_PANIC = 8,
} SgStatus;

/**
 * Opaque parsed graph.
 */
typedef struct SgGraph SgGraph;

/**
 * Opaque relation vocabulary.
 */
typedef struct SgVocab SgVocab;

/**
 * Outcome of the structural checks; `overall` is their conjunction.
 */
typedef struct SgValidation {
  bool relation_in_vocab;
  bool concepts_max_three_words;
  bool edge_count_in_range;
  bool min_two_belief_concepts;
  bool min_two_argument_concepts;
  bool connected;
  bool acyclic;
  bool overall;
} SgValidation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *sg_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void sg_string_free(char *s);

/**
 * Parses `(head; relation; tail)` text into a new graph.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SgStatus sg_graph_parse(const char *text, struct SgGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void sg_graph_free(struct SgGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sg_graph_edge_count(const struct SgGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sg_graph_node_count(const struct SgGraph *g);

/**
 * Canonical text form; free the result with `sg_string_free`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SgStatus sg_graph_serialize(const struct SgGraph *g, char **out);

/**
 * Built-in relation vocabulary. Never null.
 */
struct SgVocab *sg_vocab_default(void);

/**
 * Loads a vocabulary file with one relation per line.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum SgStatus sg_vocab_load(const char *path, struct SgVocab **out);

/**
 * # Safety
 * `v` must be null or a live vocabulary handle.
 */
void sg_vocab_free(struct SgVocab *v);

/**
 * Runs every structural check. A null `vocab` means the built-in one.
 *
 * # Safety
 * Pointers must be live handles or NUL-terminated strings; `out` writable.
 */
enum SgStatus sg_validate(const struct SgGraph *g,
                          const char *belief,
                          const char *argument,
                          const struct SgVocab *vocab,
                          struct SgValidation *out);

/**
 * Normalized graph edit distance in `[0, 1]`.
 *
 * # Safety
 * `pred` and `gold` must be live handles; `out` writable.
 */
enum SgStatus sg_ged(const struct SgGraph *pred, const struct SgGraph *gold, double *out);

/**
 * Best matching F1 of `pred` against `gold_count` gold graphs, using token
 * F1 as the edge similarity.
 *
 * # Safety
 * `golds` must point to `gold_count` live handles; `out` writable.
 */
enum SgStatus sg_gbs(const struct SgGraph *pred,
                     const struct SgGraph *const *golds,
                     size_t gold_count,
                     double *out);

/**
 * Decodes a graph from a JSON edge probability tensor. A null `vocab` means
 * the built-in one. `objective` may be null.
 *
 * # Safety
 * `tensor_json` must be a NUL-terminated string; `out` writable.
 */
enum SgStatus sg_decode_json(const char *tensor_json,
                             const struct SgVocab *vocab,
                             struct SgGraph **out,
                             double *objective);

/**
 * Copy of `g` with edges in the requested traversal order.
 *
 * # Safety
 * `g` must be a live handle; `out` writable.
 */
enum SgStatus sg_linearize(const struct SgGraph *g,
                           enum SgOrdering ordering,
                           uint64_t seed,
                           struct SgGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STANCEGRAPH_H */
