/* C interface to the powerspec library.
 *
 * Every computation returns a status code and, on success, a heap-allocated
 * NUL-terminated string (JSON or text) that the caller releases with
 * ps_string_free. On failure ps_last_error() describes the problem; the
 * message is thread-local and valid until the next call on the same thread.
 */
#ifndef POWERSPEC_H
#define POWERSPEC_H

#include <stdint.h>

#if defined(_WIN32)
#define PS_API
#else
#define PS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ps_graph ps_graph;

typedef enum {
  PS_OK = 0,
  PS_ERR_PARSE = 1,
  PS_ERR_INVALID_ARGUMENT = 2,
  PS_ERR_BUDGET = 3,
  PS_ERR_NUMERIC = 4,
  PS_ERR_INTERNAL = 5
} ps_status;

typedef enum { PS_FORMAT_JSON = 0, PS_FORMAT_TEXT = 1 } ps_format;

typedef struct {
  ps_format format;
  double tol;              /* clustering radius on squared eigenvalues */
  int precision_bits;      /* starting precision of high-precision solves */
  uint64_t max_states;     /* dynamic-programming state budget */
} ps_options;

PS_API void ps_options_init(ps_options* opts);

/* Builtin name ("path:4", "cycle:5", "complete:4", "star:5") or edge-list text. */
PS_API ps_status ps_graph_parse(const char* text, ps_graph** out);
PS_API void ps_graph_free(ps_graph* g);
PS_API int ps_graph_vertex_count(const ps_graph* g);
PS_API int ps_graph_edge_count(const ps_graph* g);

PS_API const char* ps_last_error(void);
PS_API void ps_string_free(char* s);

/* method: "dp" or "signed_mean"; covering != 0 counts covering walks with
 * method "dp" or "inclusion_exclusion". */
PS_API ps_status ps_walks(const ps_graph* g, int d, const char* method, int covering, const ps_options* opts, char** out);
PS_API ps_status ps_census(const ps_graph* g, int max_edges, const ps_options* opts, char** out);
PS_API ps_status ps_signed(const ps_graph* g, int up_to_switching, const ps_options* opts, char** out);
/* Naive tensor trace against the closed form for d = 1..max_d, and BEST
 * against the covering walk DP for ell = 1..max_d/2. */
PS_API ps_status ps_oracle(const ps_graph* g, int k, int max_d, const ps_options* opts, char** out);
PS_API ps_status ps_charpoly(const ps_graph* g, int k, const ps_options* opts, char** out);
PS_API ps_status ps_beta(const ps_graph* g, const ps_options* opts, char** out);
/* method: "direct" or "signed_mean". */
PS_API ps_status ps_matching(const ps_graph* g, const char* method, const ps_options* opts, char** out);
PS_API ps_status ps_geomean(const ps_graph* g, double lambda0, const ps_options* opts, char** out);
PS_API ps_status ps_amgm(const ps_graph* g, double lambda0, const ps_options* opts, char** out);
PS_API ps_status ps_radius_mult(const ps_graph* g, int k, const ps_options* opts, char** out);

/* scope: "quick" or "full"; seed may be NULL. *failed receives the number of
 * failed checks. fault != 0 corrupts one motif weight of the k >= 3 systems. */
PS_API ps_status ps_verify(const char* scope, const ps_graph* seed, int fault, const ps_options* opts, char** out,
                    int* failed);

#ifdef __cplusplus
}
#endif

#endif
