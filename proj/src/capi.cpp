#include "iteral/iteral.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "iteral/abc.hpp"
#include "iteral/collatz.hpp"
#include "iteral/dynamics.hpp"
#include "iteral/expr.hpp"
#include "iteral/sieve.hpp"

#ifndef ITERAL_VERSION_STRING
#define ITERAL_VERSION_STRING "0.0.0"
#endif

struct iteral_expr {
  iteral::expr::Expr expr;
};

struct iteral_env {
  iteral::expr::Env env;
};

struct iteral_outcome {
  iteral::IterOutcome<iteral::Scalar> outcome;
};

struct iteral_trace {
  iteral::collatz::Trace trace;
};

struct iteral_image {
  iteral::dynamics::EscapeImage image;
};

struct iteral_abc_config {
  iteral::abc::Config config;
};

namespace {

thread_local std::string g_last_error;

iteral_status fail(iteral_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps exceptions from the C++ core onto status codes.
template <class F>
iteral_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const iteral::expr::ParseError& e) {
    return fail(ITERAL_E_PARSE, e.what());
  } catch (const iteral::expr::EvalError& e) {
    return fail(ITERAL_E_EVAL, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(ITERAL_E_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(ITERAL_E_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ITERAL_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ITERAL_E_INTERNAL, e.what());
  } catch (...) {
    return fail(ITERAL_E_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p)
    throw std::bad_alloc();
  std::memcpy(p, s.data(), s.size());
  p[s.size()] = '\0';
  return p;
}

template <class T>
void require(const T* p, const char* what) {
  if (!p)
    throw std::invalid_argument(std::string(what) + " must not be null");
}

iteral::ConvergencePolicy to_policy(const iteral_policy* p) {
  iteral::ConvergencePolicy policy;
  if (p) {
    if (!(p->eps > 0.0) || !(p->bailout > 0.0) || p->max_steps == 0)
      throw std::invalid_argument("policy needs eps > 0, bailout > 0 and max_steps > 0");
    policy.eps = p->eps;
    policy.bailout = p->bailout;
    policy.max_steps = p->max_steps;
  }
  return policy;
}

iteral::dynamics::GridSpec to_grid(const iteral_grid_spec* g) {
  require(g, "grid");
  return {g->re_min, g->re_max, g->im_min, g->im_max, g->width, g->height};
}

iteral::dynamics::EscapeParams to_escape(const iteral_escape_params* p) {
  require(p, "escape parameters");
  iteral::dynamics::EscapeParams params{p->max_iter, p->bailout};
  iteral::dynamics::validate(params);
  return params;
}

}  // namespace

extern "C" {

const char* iteral_version(void) { return ITERAL_VERSION_STRING; }

const char* iteral_last_error(void) { return g_last_error.c_str(); }

void iteral_free(void* p) { std::free(p); }

void iteral_policy_default(iteral_policy* out) {
  if (!out)
    return;
  const iteral::ConvergencePolicy d;
  *out = {d.eps, d.bailout, d.max_steps};
}

iteral_status iteral_expr_parse(const char* src, iteral_expr** out, size_t* error_offset) {
  try {
    require(src, "source");
    require(out, "out");
    *out = new iteral_expr{iteral::expr::parse(src)};
    return ITERAL_OK;
  } catch (const iteral::expr::ParseError& e) {
    if (error_offset)
      *error_offset = e.offset();
    return fail(ITERAL_E_PARSE, e.what());
  } catch (...) {
    return guarded([]() -> iteral_status { throw; });
  }
}

void iteral_expr_free(iteral_expr* e) { delete e; }

iteral_status iteral_expr_format(const iteral_expr* e, int unicode, char** out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    *out = dup_string(unicode ? iteral::expr::format_unicode(e->expr)
                              : iteral::expr::format(e->expr));
    return ITERAL_OK;
  });
}

iteral_status iteral_env_new(iteral_env** out) {
  return guarded([&] {
    require(out, "out");
    *out = new iteral_env{};
    return ITERAL_OK;
  });
}

void iteral_env_free(iteral_env* env) { delete env; }

iteral_status iteral_env_bind(iteral_env* env, const char* name, const char* value_src) {
  return guarded([&] {
    require(env, "environment");
    require(name, "name");
    require(value_src, "value");
    const std::string n(name);
    if (n.empty() || iteral::expr::is_reserved_name(n))
      throw std::invalid_argument("cannot bind the name '" + n + "'");
    const auto e = iteral::expr::parse(value_src);
    auto o = iteral::expr::eval(e, env->env);
    auto v = iteral::value_of(o);
    if (!v)
      throw std::domain_error("binding '" + n + "' has no value: " + iteral::expr::describe(o));
    env->env.bind(n, std::move(*v));
    return ITERAL_OK;
  });
}

iteral_status iteral_eval(const iteral_expr* e, const iteral_env* env, const iteral_policy* policy,
                          iteral_outcome** out) {
  return guarded([&] {
    require(e, "expression");
    require(out, "out");
    static const iteral::expr::Env empty;
    *out = new iteral_outcome{iteral::expr::eval(e->expr, env ? env->env : empty, to_policy(policy))};
    return ITERAL_OK;
  });
}

void iteral_outcome_free(iteral_outcome* o) { delete o; }

iteral_outcome_kind iteral_outcome_get_kind(const iteral_outcome* o) {
  return static_cast<iteral_outcome_kind>(o->outcome.index());
}

uint64_t iteral_outcome_steps(const iteral_outcome* o) { return iteral::steps_taken(o->outcome); }

uint64_t iteral_outcome_cycle_entry(const iteral_outcome* o) {
  const auto* c = std::get_if<iteral::outcome::Cycle>(&o->outcome);
  return c ? c->entry : 0;
}

uint64_t iteral_outcome_cycle_period(const iteral_outcome* o) {
  const auto* c = std::get_if<iteral::outcome::Cycle>(&o->outcome);
  return c ? c->period : 0;
}

iteral_status iteral_outcome_value(const iteral_outcome* o, char** out) {
  return guarded([&] {
    require(o, "outcome");
    require(out, "out");
    auto v = iteral::value_of(o->outcome);
    if (!v)
      throw std::invalid_argument("outcome carries no value");
    *out = dup_string(v->to_string());
    return ITERAL_OK;
  });
}

iteral_status iteral_outcome_describe(const iteral_outcome* o, char** out) {
  return guarded([&] {
    require(o, "outcome");
    require(out, "out");
    *out = dup_string(iteral::expr::describe(o->outcome));
    return ITERAL_OK;
  });
}

iteral_status iteral_classify(const char* n, int radix, char** out) {
  return guarded([&] {
    require(n, "number");
    require(out, "out");
    const iteral::Natural value = iteral::parse_natural(n, radix);
    *out = dup_string(iteral::sieve::descriptor(iteral::sieve::classify(value)));
    return ITERAL_OK;
  });
}

iteral_status iteral_trace_new(const char* n, int radix, int cap31, uint64_t max_steps,
                               iteral_trace** out) {
  return guarded([&] {
    require(n, "number");
    require(out, "out");
    iteral::collatz::TraceOptions options;
    options.radix = radix;
    options.cap31 = cap31 != 0;
    if (max_steps != 0)
      options.max_steps = max_steps;
    *out = new iteral_trace{iteral::collatz::trace(iteral::parse_natural(n, 10), options)};
    return ITERAL_OK;
  });
}

void iteral_trace_free(iteral_trace* t) { delete t; }

iteral_trace_status iteral_trace_get_status(const iteral_trace* t) {
  switch (t->trace.status) {
    case iteral::collatz::TraceStatus::ReachedOne: return ITERAL_TRACE_REACHED_ONE;
    case iteral::collatz::TraceStatus::Unresolved: return ITERAL_TRACE_UNRESOLVED;
    case iteral::collatz::TraceStatus::CapExceeded: return ITERAL_TRACE_CAP_EXCEEDED;
  }
  return ITERAL_TRACE_UNRESOLVED;
}

size_t iteral_trace_length(const iteral_trace* t) { return t->trace.lines.size(); }

iteral_status iteral_trace_render(const iteral_trace* t, int exact, char** out) {
  return guarded([&] {
    require(t, "trace");
    require(out, "out");
    *out = dup_string(iteral::collatz::render(t->trace, exact != 0));
    return ITERAL_OK;
  });
}

iteral_status iteral_escape_time(double c_re, double c_im, double z0_re, double z0_im,
                                 const iteral_escape_params* params, uint32_t* out) {
  return guarded([&] {
    require(out, "out");
    const auto t = iteral::dynamics::escape_time({c_re, c_im}, {z0_re, z0_im}, to_escape(params));
    *out = t.value_or(0);
    return ITERAL_OK;
  });
}

iteral_status iteral_render_mandelbrot(const iteral_grid_spec* grid,
                                       const iteral_escape_params* params, unsigned threads,
                                       iteral_image** out) {
  return guarded([&] {
    require(out, "out");
    *out = new iteral_image{iteral::dynamics::render_grid(
        iteral::dynamics::Mandelbrot{}, to_grid(grid), to_escape(params), threads)};
    return ITERAL_OK;
  });
}

iteral_status iteral_render_julia(double c_re, double c_im, const iteral_grid_spec* grid,
                                  const iteral_escape_params* params, unsigned threads,
                                  iteral_image** out) {
  return guarded([&] {
    require(out, "out");
    *out = new iteral_image{iteral::dynamics::render_grid(
        iteral::dynamics::Julia{{c_re, c_im}}, to_grid(grid), to_escape(params), threads)};
    return ITERAL_OK;
  });
}

void iteral_image_free(iteral_image* img) { delete img; }

uint32_t iteral_image_width(const iteral_image* img) { return img->image.width; }

uint32_t iteral_image_height(const iteral_image* img) { return img->image.height; }

uint32_t iteral_image_count(const iteral_image* img, uint32_t col, uint32_t row) {
  if (col >= img->image.width || row >= img->image.height)
    return 0;
  return img->image.at(col, row);
}

iteral_status iteral_image_pgm(const iteral_image* img, unsigned char** data, size_t* len) {
  return guarded([&] {
    require(img, "image");
    require(data, "data");
    require(len, "len");
    const std::string bytes = iteral::dynamics::to_pgm(img->image);
    auto* p = static_cast<unsigned char*>(std::malloc(bytes.size()));
    if (!p)
      throw std::bad_alloc();
    std::memcpy(p, bytes.data(), bytes.size());
    *data = p;
    *len = bytes.size();
    return ITERAL_OK;
  });
}

iteral_status iteral_image_csv(const iteral_image* img, char** out) {
  return guarded([&] {
    require(img, "image");
    require(out, "out");
    *out = dup_string(iteral::dynamics::to_csv(img->image));
    return ITERAL_OK;
  });
}

iteral_status iteral_logistic_csv(double b, double x0, uint64_t steps, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = dup_string(iteral::dynamics::orbit_csv(iteral::dynamics::logistic_orbit(b, x0, steps)));
    return ITERAL_OK;
  });
}

void iteral_lorenz_params_default(iteral_lorenz_params* out) {
  if (!out)
    return;
  const iteral::dynamics::LorenzParams d;
  *out = {d.sigma, d.r, d.b, d.dt};
}

iteral_status iteral_lorenz_csv(const iteral_lorenz_params* params, double x0, double y0,
                                double z0, uint64_t steps, char** out, int* truncated) {
  return guarded([&] {
    require(params, "parameters");
    require(out, "out");
    const iteral::dynamics::LorenzParams p{params->sigma, params->r, params->b, params->dt};
    const auto t = iteral::dynamics::lorenz_trajectory({x0, y0, z0}, p, steps);
    *out = dup_string(iteral::dynamics::trajectory_csv(t, p));
    if (truncated)
      *truncated = t.truncated ? 1 : 0;
    return ITERAL_OK;
  });
}

iteral_status iteral_abc_config_new(const char* text, iteral_abc_config** out) {
  return guarded([&] {
    require(out, "out");
    auto cfg = iteral::abc::Config::defaults();
    if (text)
      cfg.merge(text);
    cfg.model();  // validate sampler settings up front
    cfg.z0();
    *out = new iteral_abc_config{std::move(cfg)};
    return ITERAL_OK;
  });
}

void iteral_abc_config_free(iteral_abc_config* cfg) { delete cfg; }

iteral_status iteral_abc_config_show(const iteral_abc_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    *out = dup_string(cfg->config.show());
    return ITERAL_OK;
  });
}

iteral_status iteral_abc_simulate_csv(const iteral_abc_config* cfg, uint64_t sessions,
                                      uint64_t seed, char** out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    if (sessions == 0)
      throw std::invalid_argument("sessions must be positive");
    const auto series =
        iteral::abc::simulate(cfg->config.z0(), cfg->config.model(), sessions, seed);
    *out = dup_string(iteral::abc::to_csv(series));
    return ITERAL_OK;
  });
}

}  // extern "C"
