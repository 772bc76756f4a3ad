#ifndef PLECTIC_H
#define PLECTIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum PlStatus {
  /*
   Success; for runs, every check passed.
   */
  PL_STATUS_OK = 0,
  /*
   The run completed and at least one check failed.
   */
  PL_STATUS_FAIL = 1,
  /*
   The document did not parse.
   */
  PL_STATUS_PARSE_ERROR = 2,
  /*
   A required pointer argument was null.
   */
  PL_STATUS_NULL_ARGUMENT = 3,
  /*
   A string argument was not valid UTF-8.
   */
  PL_STATUS_INVALID_UTF8 = 4,
  /*
   The suite name is not known.
   */
  PL_STATUS_UNKNOWN_SUITE = 5,
  /*
   An internal panic was caught at the boundary.
   */
  PL_STATUS_INTERNAL = 6,
} PlStatus;

/*
 A parsed document.
 */
typedef struct PlDocument PlDocument;

/*
 The checks produced by a run or suite, in order.
 */
typedef struct PlReport PlReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses `source` (UTF-8, nul-terminated) into `*out`.

 # Safety
 `source` must be a valid C string and `out` a valid pointer.
 */
enum PlStatus pl_document_parse(const char *source, struct PlDocument **out);

/*
 Releases a document; null is ignored.

 # Safety
 `doc` must come from [`pl_document_parse`] and not be used afterwards.
 */
void pl_document_free(struct PlDocument *doc);

/*
 Writes the canonical source of `doc` to `*out`.

 # Safety
 `doc` must be a live document and `out` a valid pointer.
 */
enum PlStatus pl_document_to_source(const struct PlDocument *doc, char **out);

/*
 Runs every command of `doc` with `jobs` worker threads (0 = all cores).
 `*out` receives the report whether or not checks failed.

 # Safety
 `doc` must be a live document and `out` a valid pointer.
 */
enum PlStatus pl_document_run(const struct PlDocument *doc, size_t jobs, struct PlReport **out);

/*
 Runs a named property suite.

 # Safety
 `name` must be a valid C string and `out` a valid pointer.
 */
enum PlStatus pl_suite_run(const char *name,
                           uint64_t seed,
                           size_t count,
                           uint32_t max_degree,
                           struct PlReport **out);

/*
 1 if every check passed, 0 otherwise (also for null).

 # Safety
 `report` must be null or a live report.
 */
int32_t pl_report_passed(const struct PlReport *report);

/*
 Number of checks.

 # Safety
 `report` must be null or a live report.
 */
size_t pl_report_len(const struct PlReport *report);

/*
 Number of failed checks.

 # Safety
 `report` must be null or a live report.
 */
size_t pl_report_failures(const struct PlReport *report);

/*
 Writes the tab-separated machine text to `*out`.

 # Safety
 `report` must be a live report and `out` a valid pointer.
 */
enum PlStatus pl_report_machine_text(const struct PlReport *report, char **out);

/*
 Writes the human-readable text to `*out`.

 # Safety
 `report` must be a live report and `out` a valid pointer.
 */
enum PlStatus pl_report_human_text(const struct PlReport *report, char **out);

/*
 Releases a report; null is ignored.

 # Safety
 `report` must come from this library and not be used afterwards.
 */
void pl_report_free(struct PlReport *report);

/*
 Releases a string returned by this library; null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void pl_string_free(char *s);

/*
 Message of the last error on this thread, or null. Valid until the next
 call into the library from the same thread.
 */
const char *pl_last_error_message(void);

/*
 Library version as a static C string.
 */
const char *pl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLECTIC_H */
