#ifndef INFODIST_H
#define INFODIST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call.
typedef enum InfodistStatus {
  INFODIST_STATUS_OK = 0,
  INFODIST_STATUS_NULL_POINTER = 1,
  INFODIST_STATUS_INVALID_UTF8 = 2,
  INFODIST_STATUS_PARSE_ERROR = 3,
  INFODIST_STATUS_INVALID_NETWORK = 4,
  INFODIST_STATUS_INVALID_ARGUMENT = 5,
  INFODIST_STATUS_PANIC = 6,
} InfodistStatus;

// Verdict of the information-distributive decision.
typedef enum InfodistDecision {
  INFODIST_DECISION_YES = 0,
  INFODIST_DECISION_NO = 10,
  INFODIST_DECISION_UNKNOWN = 20,
} InfodistDecision;

// A validated network.
typedef struct InfodistNetwork InfodistNetwork;

// Result of [`infodist_check`].
typedef struct InfodistVerdict InfodistVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *infodist_version(void);

// Message of the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *infodist_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library, freed once.
void infodist_string_free(char *s);

// Parses and validates a network from its JSON description.
//
// # Safety
// `json` must be a NUL-terminated string and `out_network` a valid pointer.
enum InfodistStatus infodist_network_from_json(const char *json,
                                               struct InfodistNetwork **out_network);

// Releases a network handle.
//
// # Safety
// `network` must be null or a handle from [`infodist_network_from_json`].
void infodist_network_free(struct InfodistNetwork *network);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `network` must be null or a valid handle.
size_t infodist_network_edge_count(const struct InfodistNetwork *network);

// Number of sessions, or 0 for a null handle.
//
// # Safety
// `network` must be null or a valid handle.
size_t infodist_network_session_count(const struct InfodistNetwork *network);

// Minimum cut value of session `session` (0-based).
//
// # Safety
// `network` must be a valid handle and `out_value` a valid pointer.
enum InfodistStatus infodist_min_cut(const struct InfodistNetwork *network,
                                     size_t session,
                                     size_t *out_value);

// Decides whether the network is information-distributive.
// `max_candidates` of 0 selects the default budget; a nonzero `strict`
// selects the stricter reading of the prefix bound.
//
// # Safety
// `network` must be a valid handle and `out_verdict` a valid pointer.
enum InfodistStatus infodist_check(const struct InfodistNetwork *network,
                                   uint64_t max_candidates,
                                   int32_t strict,
                                   struct InfodistVerdict **out_verdict);

// Decision carried by a verdict; `Unknown` for a null handle.
//
// # Safety
// `verdict` must be null or a valid handle.
enum InfodistDecision infodist_verdict_decision(const struct InfodistVerdict *verdict);

// Verdict as JSON: status, witness (if any) and search statistics.
//
// # Safety
// `verdict` must be a valid handle and `out_json` a valid pointer.
enum InfodistStatus infodist_verdict_to_json(const struct InfodistVerdict *verdict,
                                             char **out_json);

// Releases a verdict handle.
//
// # Safety
// `verdict` must be null or a handle from [`infodist_check`].
void infodist_verdict_free(struct InfodistVerdict *verdict);

// Decides whether comma-separated `rates` (e.g. `"1,1/2"`) are achievable
// by routing. `out_lambda`, if non-null, receives the optimal scaling as a
// `p/q` string, or null for the zero vector.
//
// # Safety
// `network` must be a valid handle, `rates` a NUL-terminated string,
// `out_feasible` a valid pointer and `out_lambda` null or valid.
enum InfodistStatus infodist_rate_feasible(const struct InfodistNetwork *network,
                                           const char *rates,
                                           bool *out_feasible,
                                           char **out_lambda);

// Index-coding instance JSON to a report with the generated network,
// its bottleneck witness, `raw` and `l_min`.
//
// # Safety
// `json` must be a NUL-terminated string and `out_json` a valid pointer.
enum InfodistStatus infodist_reduce_index(const char *json, char **out_json);

// Deadline instance JSON to a report with the time-extended network and
// the outcome of the shift checks.
//
// # Safety
// `json` must be a NUL-terminated string and `out_json` a valid pointer.
enum InfodistStatus infodist_reduce_deadline(const char *json, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INFODIST_H */
