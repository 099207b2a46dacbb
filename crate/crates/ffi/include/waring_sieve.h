#ifndef WARING_SIEVE_H
#define WARING_SIEVE_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WsAlgorithm {
  WS_ALGORITHM_DP = 0,
  WS_ALGORITHM_GENFUN = 1,
  WS_ALGORITHM_NEWTON = 2,
} WsAlgorithm;

typedef enum WsBound {
  WS_BOUND_OS = 0,
  WS_BOUND_OS_LOG2 = 1,
  WS_BOUND_ZHUWAN = 2,
  WS_BOUND_EXPSUM = 3,
  WS_BOUND_OPEN = 4,
} WsBound;

/**
 * Result of every call.
 */
typedef enum WsStatus {
  WS_STATUS_OK = 0,
  WS_STATUS_INVALID_ARGUMENT = 1,
  WS_STATUS_NOT_PRIME = 2,
  WS_STATUS_OUT_OF_RANGE = 3,
  WS_STATUS_NULL_POINTER = 4,
  WS_STATUS_BUFFER_TOO_SMALL = 5,
  WS_STATUS_INTERNAL = 6,
  WS_STATUS_PANIC = 7,
} WsStatus;

/**
 * Counts indexed by target residue.
 */
typedef struct WsCountTable WsCountTable;

/**
 * Bound reports in evaluation order.
 */
typedef struct WsReportList WsReportList;

/**
 * One bound report flattened for C. Absent indices are -1.
 */
typedef struct WsBoundRow {
  uint64_t p;
  int64_t m;
  int64_t k;
  int64_t b;
  int64_t a;
  double lhs;
  double rhs;
  double numeric_error;
  bool holds;
  bool asserted;
} WsBoundRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *ws_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ws_version(void);

/**
 * `N*_m(k, .)` for subsets of `F_p*`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum WsStatus ws_count_odlyzko_stanley(uint64_t p, uint64_t m, size_t k, struct WsCountTable **out);

/**
 * `N(k, ., D)` for the multiset `D` given as parallel arrays; NULL
 * `multiplicities` means every value occurs once.
 *
 * # Safety
 * `values` (and `multiplicities` unless NULL) must point to `len` readable
 * elements; `out` must be valid for a pointer write.
 */
enum WsStatus ws_count_domain(uint64_t p,
                              const uint64_t *values,
                              const uint64_t *multiplicities,
                              size_t len,
                              size_t k,
                              enum WsAlgorithm algorithm,
                              struct WsCountTable **out);

/**
 * `N*_m(b)` over subsets of every size.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum WsStatus ws_total_count(uint64_t p, uint64_t m, struct WsCountTable **out);

/**
 * Number of targets (`p`), or 0 for NULL.
 *
 * # Safety
 * `table` must be NULL or a live handle.
 */
size_t ws_count_table_len(const struct WsCountTable *table);

/**
 * Subset size of the table, or -1 for totals and NULL.
 *
 * # Safety
 * `table` must be NULL or a live handle.
 */
int64_t ws_count_table_k(const struct WsCountTable *table);

/**
 * Count at `b` as a decimal string. `required` receives the length
 * including the terminating NUL; with a short buffer the call returns
 * `BufferTooSmall` and writes nothing else.
 *
 * # Safety
 * `table` must be a live handle; `buf` must hold `buf_len` bytes (or be
 * NULL with `buf_len == 0`); `required` may be NULL.
 */
enum WsStatus ws_count_table_get(const struct WsCountTable *table,
                                 uint64_t b,
                                 char *buf,
                                 size_t buf_len,
                                 size_t *required);

/**
 * Count at `b` as `u64`; `OutOfRange` if it does not fit.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for a write.
 */
enum WsStatus ws_count_table_get_u64(const struct WsCountTable *table, uint64_t b, uint64_t *out);

/**
 * # Safety
 * `table` must be NULL or a handle not yet freed.
 */
void ws_count_table_free(struct WsCountTable *table);

/**
 * `gamma(m, p)`; always exists.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum WsStatus ws_gamma_ordinary(uint64_t p, uint64_t m, uint64_t *out);

/**
 * `gamma'(m, p)`. `exists` is false (and `out` 0) when no `k` works.
 *
 * # Safety
 * `out` and `exists` must be valid for writes.
 */
enum WsStatus ws_gamma_distinct(uint64_t p, uint64_t m, uint64_t *out, bool *exists);

/**
 * `|sum_{x in F_p*} e(a x^m / p)|` in double precision.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum WsStatus ws_monomial_exp_sum(uint64_t p, uint64_t m, uint64_t a, double *out);

/**
 * `Phi(D)` for the set `D`, with an absolute error bound.
 *
 * # Safety
 * `values` must point to `len` readable elements; `phi` and `error` must be
 * valid for writes.
 */
enum WsStatus ws_phi(uint64_t p, const uint64_t *values, size_t len, double *phi, double *error);

/**
 * Unconditional bounds and the open-problem form. `k` is ignored by `Os`,
 * `OsLog2` and `Expsum`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum WsStatus ws_check(enum WsBound bound,
                       uint64_t p,
                       uint64_t m,
                       size_t k,
                       struct WsReportList **out);

/**
 * The character-sum count bound for an explicit set.
 *
 * # Safety
 * `values` must point to `len` readable elements; `out` must be valid for a
 * pointer write.
 */
enum WsStatus ws_check_lemma31(uint64_t p,
                               const uint64_t *values,
                               size_t len,
                               size_t k,
                               struct WsReportList **out);

/**
 * The main conditional inequality at explicit `delta` and `epsilon`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum WsStatus ws_check_thm11(uint64_t p,
                             uint64_t m,
                             size_t k,
                             double delta,
                             double epsilon,
                             struct WsReportList **out);

/**
 * Largest `epsilon` at which the main inequality holds for every target.
 *
 * # Safety
 * `epsilon` and `saturated` must be valid for writes.
 */
enum WsStatus ws_fit_epsilon(uint64_t p, uint64_t m, size_t k, double *epsilon, bool *saturated);

/**
 * # Safety
 * `list` must be NULL or a live handle.
 */
size_t ws_report_list_len(const struct WsReportList *list);

/**
 * Number of reports in the list that fail an unconditional bound.
 *
 * # Safety
 * `list` must be NULL or a live handle.
 */
size_t ws_report_list_violations(const struct WsReportList *list);

/**
 * # Safety
 * `list` must be a live handle; `out` must be valid for a write.
 */
enum WsStatus ws_report_list_get(const struct WsReportList *list, size_t i, struct WsBoundRow *out);

/**
 * Reports serialized as JSON lines; free with [`ws_string_free`].
 *
 * # Safety
 * `list` must be a live handle; `out` must be valid for a pointer write.
 */
enum WsStatus ws_report_list_to_jsonl(const struct WsReportList *list, char **out);

/**
 * # Safety
 * `list` must be NULL or a handle not yet freed.
 */
void ws_report_list_free(struct WsReportList *list);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void ws_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WARING_SIEVE_H */
