/* C interface to the spinver verification library. */

#ifndef SPINVER_H
#define SPINVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call through the C ABI.
 */
typedef enum SpinverStatus {
  /**
   * The verification ran and passed.
   */
  SPINVER_STATUS_OK = 0,
  /**
   * The verification ran and failed; the report explains where.
   */
  SPINVER_STATUS_VERIFICATION_FAILED = 1,
  /**
   * Invalid arguments; no report was produced.
   */
  SPINVER_STATUS_USAGE_ERROR = 2,
  /**
   * A required pointer was null.
   */
  SPINVER_STATUS_NULL_POINTER = 3,
  /**
   * Internal failure (a panic was caught at the boundary).
   */
  SPINVER_STATUS_INTERNAL_ERROR = 4,
} SpinverStatus;

/**
 * Opaque verification report handle.
 */
typedef struct SpinverReport SpinverReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Irreducible-representation table and structural checks for Cl_n
 * (n in 1..=12).
 *
 * # Safety
 * `out` must be null or point to writable report-pointer storage.
 */
enum SpinverStatus spinver_run_clifford(int64_t n,
                                        uint64_t seed,
                                        size_t samples,
                                        struct SpinverReport **out);

/**
 * Stabilizer solution space for the omega indices in `forms`
 * (each in 1..=6).
 *
 * # Safety
 * `forms` must point to `forms_len` readable `u32` values, and `out`
 * must be null or point to writable report-pointer storage.
 */
enum SpinverStatus spinver_run_stabilizer(const uint32_t *forms,
                                          size_t forms_len,
                                          uint64_t seed,
                                          size_t samples,
                                          struct SpinverReport **out);

/**
 * Characteristic-class identities for n in 3..=6. With `typo_weights`
 * set, the n = 6 case uses the repeated-entry weight list and fails.
 *
 * # Safety
 * `out` must be null or point to writable report-pointer storage.
 */
enum SpinverStatus spinver_run_lemma_cohomo(uint32_t n,
                                            bool typo_weights,
                                            uint64_t seed,
                                            size_t samples,
                                            struct SpinverReport **out);

/**
 * Spin-bundle count for rank `n` with p1 = `p1` x^2; the Euler
 * coefficient applies only when `has_euler` is set (rank 4: of x^2,
 * rank 6: of x^3).
 *
 * # Safety
 * `out` must be null or point to writable report-pointer storage.
 */
enum SpinverStatus spinver_run_classify(uint32_t n,
                                        int64_t p1,
                                        bool has_euler,
                                        int64_t euler,
                                        uint64_t seed,
                                        size_t samples,
                                        struct SpinverReport **out);

/**
 * The embedding pipeline; with `tamper` set the run selects the
 * non-divisible candidate and reports the failure at step (iii).
 *
 * # Safety
 * `out` must be null or point to writable report-pointer storage.
 */
enum SpinverStatus spinver_run_embed(bool tamper,
                                     uint64_t seed,
                                     size_t samples,
                                     struct SpinverReport **out);

/**
 * Every suite in sequence.
 *
 * # Safety
 * `out` must be null or point to writable report-pointer storage.
 */
enum SpinverStatus spinver_run_all(bool typo_weights,
                                   uint64_t seed,
                                   size_t samples,
                                   struct SpinverReport **out);

/**
 * True iff every step of the report passed.
 *
 * # Safety
 * `report` must be a live handle from one of the run functions.
 */
bool spinver_report_passed(const struct SpinverReport *report);

/**
 * Render the report as pretty JSON. Free with `spinver_string_free`.
 *
 * # Safety
 * `report` must be a live handle from one of the run functions.
 */
char *spinver_report_json(const struct SpinverReport *report);

/**
 * Render the report as text. Free with `spinver_string_free`.
 *
 * # Safety
 * `report` must be a live handle from one of the run functions.
 */
char *spinver_report_text(const struct SpinverReport *report);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must have been returned by `spinver_report_json` or
 * `spinver_report_text` and not freed before.
 */
void spinver_string_free(char *s);

/**
 * Release a report handle. Null is a no-op.
 *
 * # Safety
 * `report` must have been returned by a run function and not freed
 * before.
 */
void spinver_report_free(struct SpinverReport *report);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SPINVER_H */
