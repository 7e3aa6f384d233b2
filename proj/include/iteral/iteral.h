/* C interface to libiteral.
 *
 * Every function returns an iteral_status; on failure a message describing
 * the most recent error on the calling thread is available from
 * iteral_last_error(). Objects are opaque handles released with their
 * matching *_free function. Strings and byte buffers handed out by the
 * library are released with iteral_free().
 */
#ifndef ITERAL_ITERAL_H
#define ITERAL_ITERAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ITERAL_BUILDING_LIBRARY)
#    define ITERAL_API __declspec(dllexport)
#  else
#    define ITERAL_API __declspec(dllimport)
#  endif
#else
#  define ITERAL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iteral_status {
  ITERAL_OK = 0,
  ITERAL_E_INVALID_ARGUMENT = 1,
  ITERAL_E_PARSE = 2,
  ITERAL_E_EVAL = 3,
  ITERAL_E_NUMERIC = 4,
  ITERAL_E_INTERNAL = 5
} iteral_status;

ITERAL_API const char* iteral_version(void);
ITERAL_API const char* iteral_last_error(void);
ITERAL_API void iteral_free(void* p);

/* ---- iteration policy ---------------------------------------------------- */

typedef struct iteral_policy {
  double eps;
  double bailout;
  uint64_t max_steps;
} iteral_policy;

ITERAL_API void iteral_policy_default(iteral_policy* out);

/* ---- expressions --------------------------------------------------------- */

typedef struct iteral_expr iteral_expr;
typedef struct iteral_env iteral_env;
typedef struct iteral_outcome iteral_outcome;

typedef enum iteral_outcome_kind {
  ITERAL_OUTCOME_VALUE = 0,
  ITERAL_OUTCOME_CONVERGED = 1,
  ITERAL_OUTCOME_DIVERGED = 2,
  ITERAL_OUTCOME_CYCLE = 3,
  ITERAL_OUTCOME_DOMAIN_EXIT = 4
} iteral_outcome_kind;

/* On ITERAL_E_PARSE, *error_offset (if non-null) receives the zero-based
 * offset of the offending character. */
ITERAL_API iteral_status iteral_expr_parse(const char* src, iteral_expr** out,
                                           size_t* error_offset);
ITERAL_API void iteral_expr_free(iteral_expr* e);
/* unicode != 0 renders with the display-only И notation. */
ITERAL_API iteral_status iteral_expr_format(const iteral_expr* e, int unicode, char** out);

ITERAL_API iteral_status iteral_env_new(iteral_env** out);
ITERAL_API void iteral_env_free(iteral_env* env);
/* Binds `name` to the value of the expression `value_src`, which is
 * evaluated against the bindings already present. */
ITERAL_API iteral_status iteral_env_bind(iteral_env* env, const char* name, const char* value_src);

/* env and policy may be null (empty environment, default policy). */
ITERAL_API iteral_status iteral_eval(const iteral_expr* e, const iteral_env* env,
                                     const iteral_policy* policy, iteral_outcome** out);
ITERAL_API void iteral_outcome_free(iteral_outcome* o);
ITERAL_API iteral_outcome_kind iteral_outcome_get_kind(const iteral_outcome* o);
ITERAL_API uint64_t iteral_outcome_steps(const iteral_outcome* o);
/* Cycle outcomes only; zero otherwise. */
ITERAL_API uint64_t iteral_outcome_cycle_entry(const iteral_outcome* o);
ITERAL_API uint64_t iteral_outcome_cycle_period(const iteral_outcome* o);
/* Value and Converged outcomes: the value as text. ITERAL_E_INVALID_ARGUMENT otherwise. */
ITERAL_API iteral_status iteral_outcome_value(const iteral_outcome* o, char** out);
ITERAL_API iteral_status iteral_outcome_describe(const iteral_outcome* o, char** out);

/* ---- sieve --------------------------------------------------------------- */

/* One descriptor line for the natural number `n` written in `radix`:
 * "<NAME> : <formula> : (<coords>) : <n>", or "ZERO (EE∞E)" for 0. */
ITERAL_API iteral_status iteral_classify(const char* n, int radix, char** out);

/* ---- Collatz trace ------------------------------------------------------- */

typedef struct iteral_trace iteral_trace;

typedef enum iteral_trace_status {
  ITERAL_TRACE_REACHED_ONE = 0,
  ITERAL_TRACE_UNRESOLVED = 1,
  ITERAL_TRACE_CAP_EXCEEDED = 2
} iteral_trace_status;

/* n is decimal text; radix selects the representation column (2..36);
 * max_steps of 0 selects the default guard. */
ITERAL_API iteral_status iteral_trace_new(const char* n, int radix, int cap31, uint64_t max_steps,
                                          iteral_trace** out);
ITERAL_API void iteral_trace_free(iteral_trace* t);
ITERAL_API iteral_trace_status iteral_trace_get_status(const iteral_trace* t);
ITERAL_API size_t iteral_trace_length(const iteral_trace* t);
ITERAL_API iteral_status iteral_trace_render(const iteral_trace* t, int exact, char** out);

/* ---- escape-time fractals ------------------------------------------------ */

typedef struct iteral_grid_spec {
  double re_min, re_max, im_min, im_max;
  uint32_t width, height;
} iteral_grid_spec;

typedef struct iteral_escape_params {
  uint32_t max_iter;
  double bailout;
} iteral_escape_params;

typedef struct iteral_image iteral_image;

/* *out receives the 1-based escape position, or 0 for a member. */
ITERAL_API iteral_status iteral_escape_time(double c_re, double c_im, double z0_re, double z0_im,
                                            const iteral_escape_params* params, uint32_t* out);
ITERAL_API iteral_status iteral_render_mandelbrot(const iteral_grid_spec* grid,
                                                  const iteral_escape_params* params,
                                                  unsigned threads, iteral_image** out);
ITERAL_API iteral_status iteral_render_julia(double c_re, double c_im,
                                             const iteral_grid_spec* grid,
                                             const iteral_escape_params* params,
                                             unsigned threads, iteral_image** out);
ITERAL_API void iteral_image_free(iteral_image* img);
ITERAL_API uint32_t iteral_image_width(const iteral_image* img);
ITERAL_API uint32_t iteral_image_height(const iteral_image* img);
ITERAL_API uint32_t iteral_image_count(const iteral_image* img, uint32_t col, uint32_t row);
/* Binary PGM (P5) bytes; *len receives the size. */
ITERAL_API iteral_status iteral_image_pgm(const iteral_image* img, unsigned char** data,
                                          size_t* len);
ITERAL_API iteral_status iteral_image_csv(const iteral_image* img, char** out);

/* ---- logistic map and Lorenz system -------------------------------------- */

ITERAL_API iteral_status iteral_logistic_csv(double b, double x0, uint64_t steps, char** out);

typedef struct iteral_lorenz_params {
  double sigma, r, b, dt;
} iteral_lorenz_params;

ITERAL_API void iteral_lorenz_params_default(iteral_lorenz_params* out);
/* *truncated (if non-null) is set to 1 when a non-finite state cut the run short. */
ITERAL_API iteral_status iteral_lorenz_csv(const iteral_lorenz_params* params, double x0, double y0,
                                           double z0, uint64_t steps, char** out, int* truncated);

/* ---- a-b-c tick process -------------------------------------------------- */

typedef struct iteral_abc_config iteral_abc_config;

/* Defaults, optionally overridden by key = value text (may be null). */
ITERAL_API iteral_status iteral_abc_config_new(const char* text, iteral_abc_config** out);
ITERAL_API void iteral_abc_config_free(iteral_abc_config* cfg);
ITERAL_API iteral_status iteral_abc_config_show(const iteral_abc_config* cfg, char** out);
/* CSV with header "session,index,t,p". */
ITERAL_API iteral_status iteral_abc_simulate_csv(const iteral_abc_config* cfg, uint64_t sessions,
                                                 uint64_t seed, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ITERAL_ITERAL_H */
