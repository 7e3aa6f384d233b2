#include <doctest.h>

#include <cstring>
#include <string>

#include "iteral/abc.hpp"
#include "iteral/collatz.hpp"
#include "iteral/dynamics.hpp"
#include "iteral/expr.hpp"
#include "iteral/iteral.h"
#include "iteral/sieve.hpp"

namespace {

std::string take(char* s) {
  std::string out(s);
  iteral_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::strlen(iteral_version()) > 0);
  iteral_expr* e = nullptr;
  size_t offset = 0;
  CHECK(iteral_expr_parse("1 + ", &e, &offset) == ITERAL_E_PARSE);
  CHECK(offset == 4);
  CHECK(e == nullptr);
  CHECK(std::string(iteral_last_error()).find("column 5") != std::string::npos);
  CHECK(iteral_expr_parse(nullptr, &e, nullptr) == ITERAL_E_INVALID_ARGUMENT);
  char* s = nullptr;
  CHECK(iteral_classify("12z", 10, &s) == ITERAL_E_INVALID_ARGUMENT);
  CHECK(iteral_classify("12", 1, &s) == ITERAL_E_INVALID_ARGUMENT);
}

TEST_CASE("expression round trip through handles") {
  iteral_expr* e = nullptr;
  REQUIRE(iteral_expr_parse("I[x=2,n=2](x^2)", &e, nullptr) == ITERAL_OK);
  char* s = nullptr;
  REQUIRE(iteral_expr_format(e, 0, &s) == ITERAL_OK);
  CHECK(take(s) == "I[x=2, n=2](x^2)");
  REQUIRE(iteral_expr_format(e, 1, &s) == ITERAL_OK);
  CHECK(take(s) == "И_{x=2}^{2}(x^2)");

  iteral_outcome* o = nullptr;
  REQUIRE(iteral_eval(e, nullptr, nullptr, &o) == ITERAL_OK);
  CHECK(iteral_outcome_get_kind(o) == ITERAL_OUTCOME_VALUE);
  CHECK(iteral_outcome_steps(o) == 2);
  REQUIRE(iteral_outcome_value(o, &s) == ITERAL_OK);
  CHECK(take(s) == "16");
  iteral_outcome_free(o);
  iteral_expr_free(e);
}

TEST_CASE("environment and policy") {
  iteral_env* env = nullptr;
  REQUIRE(iteral_env_new(&env) == ITERAL_OK);
  CHECK(iteral_env_bind(env, "a", "3") == ITERAL_OK);
  CHECK(iteral_env_bind(env, "b", "a*2") == ITERAL_OK);
  CHECK(iteral_env_bind(env, "sin", "1") == ITERAL_E_INVALID_ARGUMENT);
  CHECK(iteral_env_bind(env, "c", "zz") == ITERAL_E_EVAL);
  CHECK(iteral_env_bind(env, "d", "1/0") == ITERAL_E_NUMERIC);

  iteral_expr* e = nullptr;
  REQUIRE(iteral_expr_parse("I[x=1, n=5](a*x) + b", &e, nullptr) == ITERAL_OK);
  iteral_outcome* o = nullptr;
  REQUIRE(iteral_eval(e, env, nullptr, &o) == ITERAL_OK);
  char* s = nullptr;
  REQUIRE(iteral_outcome_value(o, &s) == ITERAL_OK);
  CHECK(take(s) == "249");
  iteral_outcome_free(o);
  iteral_expr_free(e);

  REQUIRE(iteral_expr_parse("I[x=0, n=inf](x + 1)", &e, nullptr) == ITERAL_OK);
  iteral_policy policy;
  iteral_policy_default(&policy);
  CHECK(policy.eps == 1e-12);
  policy.max_steps = 7;
  REQUIRE(iteral_eval(e, nullptr, &policy, &o) == ITERAL_OK);
  CHECK(iteral_outcome_get_kind(o) == ITERAL_OUTCOME_DIVERGED);
  CHECK(iteral_outcome_value(o, &s) == ITERAL_E_INVALID_ARGUMENT);
  REQUIRE(iteral_outcome_describe(o, &s) == ITERAL_OK);
  CHECK(take(s) == "diverged after 7 steps (step limit)");
  iteral_outcome_free(o);
  policy.eps = 0.0;
  CHECK(iteral_eval(e, nullptr, &policy, &o) == ITERAL_E_INVALID_ARGUMENT);
  iteral_expr_free(e);

  REQUIRE(iteral_expr_parse("I[x=0, n=inf](1 - x)", &e, nullptr) == ITERAL_OK);
  REQUIRE(iteral_eval(e, nullptr, nullptr, &o) == ITERAL_OK);
  CHECK(iteral_outcome_get_kind(o) == ITERAL_OUTCOME_CYCLE);
  CHECK(iteral_outcome_cycle_period(o) == 2);
  CHECK(iteral_outcome_cycle_entry(o) == 0);
  iteral_outcome_free(o);
  iteral_expr_free(e);
  iteral_env_free(env);
}

TEST_CASE("classify and trace match the core") {
  char* s = nullptr;
  REQUIRE(iteral_classify("39", 10, &s) == ITERAL_OK);
  CHECK(take(s) == iteral::sieve::descriptor(iteral::sieve::classify(39)));
  REQUIRE(iteral_classify("100", 3, &s) == ITERAL_OK);
  CHECK(take(s) == "EO : 4p + 1 : (k=0, p=2) : 9");
  REQUIRE(iteral_classify("0", 10, &s) == ITERAL_OK);
  CHECK(take(s) == "ZERO (EE∞E)");

  iteral_trace* t = nullptr;
  REQUIRE(iteral_trace_new("9", 3, 0, 0, &t) == ITERAL_OK);
  CHECK(iteral_trace_get_status(t) == ITERAL_TRACE_REACHED_ONE);
  CHECK(iteral_trace_length(t) == 14);
  for (int exact : {0, 1}) {
    REQUIRE(iteral_trace_render(t, exact, &s) == ITERAL_OK);
    CHECK(take(s) == iteral::collatz::render(iteral::collatz::trace(9, {3}), exact != 0));
  }
  iteral_trace_free(t);
  REQUIRE(iteral_trace_new("27", 10, 0, 5, &t) == ITERAL_OK);
  CHECK(iteral_trace_get_status(t) == ITERAL_TRACE_UNRESOLVED);
  iteral_trace_free(t);
  REQUIRE(iteral_trace_new("4294967296", 10, 1, 0, &t) == ITERAL_OK);
  CHECK(iteral_trace_get_status(t) == ITERAL_TRACE_CAP_EXCEEDED);
  iteral_trace_free(t);
  CHECK(iteral_trace_new("0", 10, 0, 0, &t) == ITERAL_E_INVALID_ARGUMENT);
}

TEST_CASE("fractal handles match the core") {
  const iteral_escape_params params{100, 2.0};
  uint32_t t = 99;
  REQUIRE(iteral_escape_time(1.0, 0.0, 0.0, 0.0, &params, &t) == ITERAL_OK);
  CHECK(t == 4);
  REQUIRE(iteral_escape_time(0.0, 0.0, 0.0, 0.0, &params, &t) == ITERAL_OK);
  CHECK(t == 0);
  const iteral_escape_params bad{100, 1.0};
  CHECK(iteral_escape_time(0.0, 0.0, 0.0, 0.0, &bad, &t) == ITERAL_E_INVALID_ARGUMENT);

  const iteral_grid_spec grid{-2.0, 1.0, -1.5, 1.5, 40, 30};
  iteral_image* img = nullptr;
  REQUIRE(iteral_render_mandelbrot(&grid, &params, 2, &img) == ITERAL_OK);
  CHECK(iteral_image_width(img) == 40);
  CHECK(iteral_image_height(img) == 30);
  const auto core = iteral::dynamics::render_grid(iteral::dynamics::Mandelbrot{},
                                                  {-2.0, 1.0, -1.5, 1.5, 40, 30}, {100, 2.0});
  CHECK(iteral_image_count(img, 5, 7) == core.at(5, 7));
  unsigned char* data = nullptr;
  size_t len = 0;
  REQUIRE(iteral_image_pgm(img, &data, &len) == ITERAL_OK);
  CHECK(std::string(reinterpret_cast<char*>(data), len) == iteral::dynamics::to_pgm(core));
  iteral_free(data);
  char* s = nullptr;
  REQUIRE(iteral_image_csv(img, &s) == ITERAL_OK);
  CHECK(take(s) == iteral::dynamics::to_csv(core));
  iteral_image_free(img);

  REQUIRE(iteral_render_julia(-0.4, 0.6, &grid, &params, 1, &img) == ITERAL_OK);
  const auto julia = iteral::dynamics::render_grid(iteral::dynamics::Julia{{-0.4, 0.6}},
                                                   {-2.0, 1.0, -1.5, 1.5, 40, 30}, {100, 2.0});
  REQUIRE(iteral_image_csv(img, &s) == ITERAL_OK);
  CHECK(take(s) == iteral::dynamics::to_csv(julia));
  iteral_image_free(img);

  const iteral_grid_spec empty{0.0, 1.0, 0.0, 1.0, 0, 3};
  CHECK(iteral_render_mandelbrot(&empty, &params, 1, &img) == ITERAL_E_INVALID_ARGUMENT);
}

TEST_CASE("orbit emitters match the core") {
  char* s = nullptr;
  REQUIRE(iteral_logistic_csv(3.7, 0.2, 50, &s) == ITERAL_OK);
  CHECK(take(s) == iteral::dynamics::orbit_csv(iteral::dynamics::logistic_orbit(3.7, 0.2, 50)));

  iteral_lorenz_params p;
  iteral_lorenz_params_default(&p);
  CHECK(p.sigma == 10.0);
  int truncated = -1;
  REQUIRE(iteral_lorenz_csv(&p, 0.0, 1.0, 0.0, 100, &s, &truncated) == ITERAL_OK);
  CHECK(truncated == 0);
  const iteral::dynamics::LorenzParams core;
  CHECK(take(s) == iteral::dynamics::trajectory_csv(
                       iteral::dynamics::lorenz_trajectory({0.0, 1.0, 0.0}, core, 100), core));
  p.dt = 10.0;
  REQUIRE(iteral_lorenz_csv(&p, 1.0, 1.0, 1.0, 100, &s, &truncated) == ITERAL_OK);
  iteral_free(s);
  CHECK(truncated == 1);
  p.dt = -1.0;
  CHECK(iteral_lorenz_csv(&p, 1.0, 1.0, 1.0, 100, &s, nullptr) == ITERAL_E_INVALID_ARGUMENT);
}

TEST_CASE("abc handles match the core") {
  iteral_abc_config* cfg = nullptr;
  REQUIRE(iteral_abc_config_new("n_ticks = constant\nn_ticks.value = 4\n", &cfg) == ITERAL_OK);
  char* s = nullptr;
  REQUIRE(iteral_abc_simulate_csv(cfg, 3, 11, &s) == ITERAL_OK);
  auto core = iteral::abc::Config::defaults();
  core.merge("n_ticks = constant\nn_ticks.value = 4\n");
  CHECK(take(s) == iteral::abc::to_csv(iteral::abc::simulate(core.z0(), core.model(), 3, 11)));
  REQUIRE(iteral_abc_config_show(cfg, &s) == ITERAL_OK);
  CHECK(take(s) == core.show());
  CHECK(iteral_abc_simulate_csv(cfg, 0, 11, &s) == ITERAL_E_INVALID_ARGUMENT);
  iteral_abc_config_free(cfg);
  CHECK(iteral_abc_config_new("bogus = 1", &cfg) == ITERAL_E_INVALID_ARGUMENT);
  CHECK(iteral_abc_config_new("wait = nope", &cfg) == ITERAL_E_INVALID_ARGUMENT);
}
