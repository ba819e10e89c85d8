/* C interface to the cmdp engine.
 *
 * Handles are opaque. Every call that can fail returns a cmdp_status and,
 * on failure, leaves a message retrievable with cmdp_last_error() on the
 * calling thread. Strings returned through `char** out` parameters are
 * owned by the caller and must be released with cmdp_string_free().
 *
 * Requests and responses are JSON documents; every response object carries
 * "schema": 1. Probabilities and exact values are strings such as "3/8".
 */
#ifndef CMDP_CMDP_H
#define CMDP_CMDP_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(CMDP_BUILDING_LIBRARY)
#    define CMDP_API __declspec(dllexport)
#  else
#    define CMDP_API __declspec(dllimport)
#  endif
#else
#  define CMDP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmdp_status {
  CMDP_OK = 0,
  CMDP_INVALID_ARGUMENT = 1, /* malformed request, unknown option, bad model */
  CMDP_PARSE_ERROR = 2,      /* input is not valid JSON */
  CMDP_PRECONDITION = 3,     /* input is well formed but outside the operation's domain */
  CMDP_NOT_CONVERGED = 4,    /* iteration or radius cap hit */
  CMDP_NOT_FOUND = 5,        /* unknown gallery entry, strategy or state */
  CMDP_INTERNAL = 6
} cmdp_status;

typedef struct cmdp_mdp cmdp_mdp;         /* finite MDP */
typedef struct cmdp_gallery cmdp_gallery; /* countable gallery model with its bundled strategies */

CMDP_API const char* cmdp_version(void);
CMDP_API const char* cmdp_status_name(cmdp_status status);
/* Message of the last failed call on this thread; "" if none. */
CMDP_API const char* cmdp_last_error(void);
CMDP_API void cmdp_string_free(char* s);

/* --- finite MDPs ------------------------------------------------------ */

/* Parses and validates. A model with violations is rejected with
 * CMDP_INVALID_ARGUMENT; use cmdp_mdp_validate to list them all. */
CMDP_API cmdp_status cmdp_mdp_from_json(const char* json, cmdp_mdp** out);
CMDP_API void cmdp_mdp_free(cmdp_mdp* mdp);
CMDP_API size_t cmdp_mdp_size(const cmdp_mdp* mdp);
CMDP_API cmdp_status cmdp_mdp_to_json(const cmdp_mdp* mdp, char** out);
CMDP_API cmdp_status cmdp_mdp_to_dot(const cmdp_mdp* mdp, char** out);
/* Validation report {"ok": bool, "violations": [{"state", "message"}]} for a
 * JSON model that may be invalid. */
CMDP_API cmdp_status cmdp_validate_json(const char* json, char** out);

/* Request {"objective": {...}, "backend": "rational"|"float", "tolerance", "max_sweeps"}. */
CMDP_API cmdp_status cmdp_value(const cmdp_mdp* mdp, const char* request, char** out);

/* Request {"method": "optimal"|"opt_av"|"as_reach"|"as_buchi"|"as_parity012"|"eps_reach"|"cobuchi",
 *          "objective": {...}, "epsilon": "1/20"}. */
CMDP_API cmdp_status cmdp_synthesize(const cmdp_mdp* mdp, const char* request, char** out);

/* Exact value of a memoryless strategy or a transducer. `strategy` is the
 * JSON of either; request {"objective": {...}}. */
CMDP_API cmdp_status cmdp_evaluate(const cmdp_mdp* mdp, const char* strategy, const char* request, char** out);

/* Request {"strategy": <json>, "horizon", "episodes", "seed", "threads",
 *          "fatal": [ids], "anchor": id}. */
CMDP_API cmdp_status cmdp_simulate_mdp(const cmdp_mdp* mdp, const char* request, char** out);

/* --- gallery ---------------------------------------------------------- */

CMDP_API cmdp_status cmdp_gallery_list(char** out);
/* `param` is the rational parameter of parameterised entries (gamblers_ruin's
 * p), or NULL for the default. */
CMDP_API cmdp_status cmdp_gallery_open(const char* name, const char* param, cmdp_gallery** out);
CMDP_API void cmdp_gallery_free(cmdp_gallery* g);
CMDP_API cmdp_status cmdp_gallery_describe(const cmdp_gallery* g, char** out);
/* Request {"radius", "boundary": "pessimistic"|"optimistic", "branch_cap"}. */
CMDP_API cmdp_status cmdp_gallery_truncate(const cmdp_gallery* g, const char* request, cmdp_mdp** out);
/* Request {"radius", "branch_cap", "objective" (default: the entry's)}. */
CMDP_API cmdp_status cmdp_value_bounds(const cmdp_gallery* g, const char* request, char** out);
/* Request {"method": "eps_reach"|"cobuchi", "epsilon", "objective", "queried": [ids]}. */
CMDP_API cmdp_status cmdp_synthesize_gallery(const cmdp_gallery* g, const char* request, char** out);
/* Request {"strategy": name or JSON, "horizon", "episodes", "seed", "threads", "cycle_events"}. */
CMDP_API cmdp_status cmdp_simulate(const cmdp_gallery* g, const char* request, char** out);
/* Request {"strategy": name, "cutoff"}. */
CMDP_API cmdp_status cmdp_borel_cantelli(const cmdp_gallery* g, const char* request, char** out);
/* Request {"max_states"}. */
CMDP_API cmdp_status cmdp_futility(const cmdp_gallery* g, const char* transducer, const char* request, char** out);

/* --- acceptance suite ------------------------------------------------- */

typedef void (*cmdp_accept_callback)(const char* line, int passed, void* user);

/* `suite` is "all" or a comma-separated list of criterion ids. The callback
 * (may be NULL) receives one line per criterion as soon as it finishes. */
CMDP_API cmdp_status cmdp_accept(const char* suite, cmdp_accept_callback callback, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* CMDP_CMDP_H */
