/* C interface to the mod-p GL2 library. All strings are UTF-8 JSON or plain
 * text; strings returned through out-parameters are owned by the caller and
 * released with modp_string_free. */
#ifndef MODP_GL2_H
#define MODP_GL2_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MODP_API __declspec(dllexport)
#else
#define MODP_API __attribute__((visibility("default")))
#endif

typedef enum modp_status {
  MODP_OK = 0,
  MODP_ERR_ARGUMENT = 1,    /* null handle or malformed argument */
  MODP_ERR_CONFIG = 2,      /* scenario failed validation */
  MODP_ERR_DOMAIN = 3,      /* input outside the operation's domain */
  MODP_ERR_PRECISION = 4,   /* truncation radius or precision too small */
  MODP_ERR_INSTABILITY = 5, /* quotient changed when the slack was enlarged */
  MODP_ERR_INTERNAL = 6
} modp_status;

typedef struct modp_session modp_session; /* validated scenario */
typedef struct modp_report modp_report;

MODP_API const char* modp_version(void);
/* Message of the last failing call on this thread; empty if none. */
MODP_API const char* modp_last_error(void);

/* scenario_json: {"backend":"equal","p":3,"f":1,"weight":"r=1","poly":"T-1","N":5,...}
 * Missing fields take their defaults. */
MODP_API modp_status modp_session_create(const char* scenario_json, modp_session** out);
MODP_API void modp_session_destroy(modp_session* s);
/* Normalized scenario with all defaults filled in. */
MODP_API modp_status modp_session_scenario(const modp_session* s, char** out_json);

/* suite: decompositions, hecke, s-operator, d1-dims, invariants,
 * char-p-nilpotence, presentation or all. */
MODP_API modp_status modp_run_suite(const modp_session* s, const char* suite, modp_report** out);
/* command/op: cind act|T|S, quotient make, diagram d1|d0|level|r0.
 * args_json may be NULL. */
MODP_API modp_status modp_run_command(const modp_session* s, const char* command, const char* op,
                                      const char* args_json, modp_report** out);

MODP_API int modp_report_passed(const modp_report* r);
MODP_API size_t modp_report_check_count(const modp_report* r);
/* format: json, csv or table. */
MODP_API modp_status modp_report_emit(const modp_report* r, const char* format, char** out);
MODP_API void modp_report_destroy(modp_report* r);

MODP_API void modp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
