#ifndef VOTELAB_H
#define VOTELAB_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes.
 */
typedef enum VlStatus {
  VL_STATUS_OK = 0,
  VL_STATUS_NULL_POINTER = 1,
  VL_STATUS_INVALID_UTF8 = 2,
  VL_STATUS_PARSE = 3,
  VL_STATUS_INVALID_PROFILE = 4,
  VL_STATUS_UNKNOWN_RULE = 5,
  VL_STATUS_OUT_OF_RANGE = 6,
  VL_STATUS_INVALID_NUMBER = 7,
  VL_STATUS_BUDGET_EXCEEDED = 8,
  VL_STATUS_PANIC = 9,
} VlStatus;

/*
 Opaque profile handle.
 */
typedef struct VlProfile VlProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a profile in the votelab line format into `*out`.

 # Safety
 `text` must be a nul-terminated string and `out` a writable pointer.
 */
enum VlStatus vl_profile_parse(const char *text, struct VlProfile **out);

/*
 Parses PrefLib strict-complete-order data into `*out`.

 # Safety
 As for `vl_profile_parse`.
 */
enum VlStatus vl_profile_parse_preflib(const char *text, struct VlProfile **out);

/*
 Releases a profile; null is ignored.

 # Safety
 `profile` must come from a parse call and not be used afterwards.
 */
void vl_profile_free(struct VlProfile *profile);

/*
 Number of candidates, or 0 for a null handle.

 # Safety
 `profile` must be null or a live handle.
 */
size_t vl_profile_num_candidates(const struct VlProfile *profile);

/*
 Number of voters, or 0 for a null handle.

 # Safety
 `profile` must be null or a live handle.
 */
uint64_t vl_profile_num_voters(const struct VlProfile *profile);

/*
 Name of candidate `index` (0-based) in `*out`.

 # Safety
 `profile` must be a live handle and `out` writable.
 */
enum VlStatus vl_candidate_name(const struct VlProfile *profile, size_t index, char **out);

/*
 Winners of `rule` as a bit mask: bit `i` set when candidate `i` wins.

 # Safety
 `profile` must be a live handle, `rule` a nul-terminated string and
 `out_mask` writable.
 */
enum VlStatus vl_winners(const struct VlProfile *profile, const char *rule, uint32_t *out_mask);

/*
 Scores and winners of `rule` as a JSON result document in `*out`.

 # Safety
 As for `vl_winners`, with `out` writable.
 */
enum VlStatus vl_report_json(const struct VlProfile *profile, const char *rule, char **out);

/*
 Minimal quota for `rule` with `k` protected candidates out of `m`
 (`veto` nonzero: `k` is the number of vetoed candidates instead).
 The exact form goes to `*out_exact`, its value to `*out_value`; the
 lower end is reported for interval bounds.

 # Safety
 `rule` must be a nul-terminated string; `out_exact` and `out_value`
 writable.
 */
enum VlStatus vl_quota(const char *rule,
                       size_t k,
                       size_t m,
                       bool veto,
                       char **out_exact,
                       double *out_value);

/*
 Message of the calling thread's last failure, or null. Free with
 `vl_string_free`.
 */
char *vl_last_error(void);

/*
 Releases a string returned by this library; null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void vl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VOTELAB_H */
