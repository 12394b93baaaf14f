#ifndef EP_DLOG_H
#define EP_DLOG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum EpDlogStatus {
  EP_DLOG_STATUS_OK = 0,
  EP_DLOG_STATUS_INVALID_INPUT = 1,
  EP_DLOG_STATUS_NOT_INVERTIBLE = 2,
  EP_DLOG_STATUS_NO_SOLUTION = 3,
  EP_DLOG_STATUS_NULL_POINTER = 4,
  EP_DLOG_STATUS_INTERNAL = 5,
} EpDlogStatus;

// Z_p solver used by `ep_dlog_log`.
typedef enum EpDlogOracle {
  EP_DLOG_ORACLE_BSGS = 0,
  EP_DLOG_ORACLE_POHLIG_HELLMAN = 1,
  EP_DLOG_ORACLE_RHO = 2,
} EpDlogOracle;

// An invertible or non-invertible element of E_p.
typedef struct EpDlogElement EpDlogElement;

// Result of one discrete-log computation.
typedef struct EpDlogTranscript EpDlogTranscript;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// Valid until the next library call on the same thread.
const char *ep_dlog_last_error(void);

// Parses `"a,b,c,u,v"` for the prime `p`.
//
// # Safety
// `p` and `element_text` must be NUL-terminated strings; `out` must be writable.
enum EpDlogStatus ep_dlog_element_parse(const char *p,
                                        const char *element_text,
                                        struct EpDlogElement **out);

// Parses the JSON record `{"p","a","b","c","u","v"}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum EpDlogStatus ep_dlog_element_from_json(const char *json, struct EpDlogElement **out);

// # Safety
// `element` must come from this library and not be used afterwards. Null is
// ignored.
void ep_dlog_element_free(struct EpDlogElement *element);

// # Safety
// `s` must come from this library and not be used afterwards. Null is
// ignored.
void ep_dlog_string_free(char *s);

// Writes `"a,b,c,u,v"`.
//
// # Safety
// `element` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_element_to_string(const struct EpDlogElement *element, char **out);

// Writes the JSON record with decimal-string fields.
//
// # Safety
// `element` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_element_to_json(const struct EpDlogElement *element, char **out);

// # Safety
// `lhs` and `rhs` must be live handles; `out` must be writable.
enum EpDlogStatus ep_dlog_element_mul(const struct EpDlogElement *lhs,
                                      const struct EpDlogElement *rhs,
                                      struct EpDlogElement **out);

// `element^n` for a decimal exponent `n`.
//
// # Safety
// `element` must be a live handle, `n` a NUL-terminated string, `out`
// writable.
enum EpDlogStatus ep_dlog_element_pow(const struct EpDlogElement *element,
                                      const char *n,
                                      struct EpDlogElement **out);

// # Safety
// `element` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_element_inverse(const struct EpDlogElement *element,
                                          struct EpDlogElement **out);

// # Safety
// `element` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_element_is_invertible(const struct EpDlogElement *element, bool *out);

// Multiplicative order as a decimal string. Factors `p - 1` internally.
//
// # Safety
// `element` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_element_order(const struct EpDlogElement *element, char **out);

// Uniform invertible element, reproducible from `seed`.
//
// # Safety
// `p` must be a NUL-terminated string; `out` must be writable.
enum EpDlogStatus ep_dlog_sample_invertible(const char *p,
                                            uint64_t seed,
                                            struct EpDlogElement **out);

// Least `x` with `g^x = h`, using at most two Z_p logs.
//
// # Safety
// `g` and `h` must be live handles; `out` must be writable.
enum EpDlogStatus ep_dlog_log(const struct EpDlogElement *g,
                              const struct EpDlogElement *h,
                              enum EpDlogOracle oracle,
                              uint64_t seed,
                              struct EpDlogTranscript **out);

// # Safety
// `transcript` must come from this library and not be used afterwards.
// Null is ignored.
void ep_dlog_transcript_free(struct EpDlogTranscript *transcript);

// The recovered exponent as a decimal string.
//
// # Safety
// `transcript` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_transcript_x(const struct EpDlogTranscript *transcript, char **out);

// Number of Z_p discrete logs issued; 0 on a null handle.
//
// # Safety
// `transcript` must be a live handle or null.
uint32_t ep_dlog_transcript_zp_dlog_calls(const struct EpDlogTranscript *transcript);

// All transcript fields as one JSON object.
//
// # Safety
// `transcript` must be a live handle; `out` must be writable.
enum EpDlogStatus ep_dlog_transcript_to_json(const struct EpDlogTranscript *transcript, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EP_DLOG_H */
