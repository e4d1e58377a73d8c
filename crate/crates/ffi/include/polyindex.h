#ifndef POLYINDEX_H
#define POLYINDEX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Return codes. The first four match the command-line exit codes.
typedef enum {
  POLYINDEX_STATUS_OK = 0,
  POLYINDEX_STATUS_NEGATIVE = 1,
  POLYINDEX_STATUS_INPUT_ERROR = 2,
  POLYINDEX_STATUS_BUDGET_EXCEEDED = 3,
  POLYINDEX_STATUS_NULL_ARGUMENT = 4,
  POLYINDEX_STATUS_INTERNAL = 5,
} PolyindexStatus;

// A code matrix bound to its problem.
typedef struct PolyindexCode PolyindexCode;

// A problem with a representable polymatroid on `m + 2c` elements.
typedef struct PolyindexInstance PolyindexInstance;

// An index coding problem.
typedef struct PolyindexProblem PolyindexProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *polyindex_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void polyindex_string_free(char *s);

// Parses a problem from its JSON form.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
PolyindexStatus polyindex_problem_parse(const char *json, PolyindexProblem **out);

// # Safety
// `p` must come from [`polyindex_problem_parse`] and not have been freed.
void polyindex_problem_free(PolyindexProblem *p);

// Parses a code matrix in the `rows cols q` text format for `problem`.
//
// # Safety
// `problem` must be a live handle, `matrix` a nul-terminated string, `out` writable.
PolyindexStatus polyindex_code_parse(const PolyindexProblem *problem,
                                     const char *matrix,
                                     PolyindexCode **out);

// # Safety
// `c` must be a live handle or null.
void polyindex_code_free(PolyindexCode *c);

// Code length `c`, or 0 for a null handle.
//
// # Safety
// `code` must be a live handle or null.
size_t polyindex_code_length(const PolyindexCode *code);

// The code matrix in text form.
//
// # Safety
// `code` must be a live handle; `out` writable.
PolyindexStatus polyindex_code_to_text(const PolyindexCode *code, char **out);

// Span-test verification. Returns `Ok` for a valid code and `Negative`
// otherwise; `report` (nullable) receives the verdict JSON.
//
// # Safety
// `code` must be a live handle; `report` null or writable.
PolyindexStatus polyindex_verify(const PolyindexCode *code, char **report);

// Exhaustive verification under `budget` steps (0 selects the default).
//
// # Safety
// `code` must be a live handle; `report` null or writable.
PolyindexStatus polyindex_brute_verify(const PolyindexCode *code, uint64_t budget, char **report);

// Builds the code's representable polymatroid.
//
// # Safety
// `code` must be a live handle; `out` writable.
PolyindexStatus polyindex_build_polymatroid(const PolyindexCode *code, PolyindexInstance **out);

// Pairs `problem` with a representation given as polymatroid JSON.
//
// # Safety
// `problem` must be a live handle, `json` a nul-terminated string, `out` writable.
PolyindexStatus polyindex_instance_parse(const PolyindexProblem *problem,
                                         const char *json,
                                         PolyindexInstance **out);

// # Safety
// `inst` must be a live handle or null.
void polyindex_instance_free(PolyindexInstance *inst);

// The representation as polymatroid JSON.
//
// # Safety
// `inst` must be a live handle; `out` writable.
PolyindexStatus polyindex_instance_to_json(const PolyindexInstance *inst, char **out);

// Evaluates conditions (A), (B), (C). Each non-null flag receives 1 when
// its condition holds and 0 otherwise. Returns `Ok` when all three hold.
//
// # Safety
// `inst` must be a live handle; flags null or writable.
PolyindexStatus polyindex_check_conditions(const PolyindexInstance *inst,
                                           int32_t *a,
                                           int32_t *b,
                                           int32_t *c);

// Extracts a code matrix; fails with `Negative` when (A) or (B) is violated.
//
// # Safety
// `inst` must be a live handle; `out` writable.
PolyindexStatus polyindex_extract_code(const PolyindexInstance *inst, PolyindexCode **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYINDEX_H */
