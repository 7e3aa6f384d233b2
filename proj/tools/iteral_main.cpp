// iteral: command-line front end over the libiteral C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iteral/iteral.h"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumeric = 2;

struct Failure {
  int code;
  std::string message;
};

// Owns a malloc'd string or buffer returned by the library.
struct LibFree {
  void operator()(void* p) const { iteral_free(p); }
};
using LibString = std::unique_ptr<char, LibFree>;

void check(iteral_status st) {
  if (st == ITERAL_OK)
    return;
  const int code = (st == ITERAL_E_NUMERIC) ? kNumeric : kUsage;
  throw Failure{code, iteral_last_error()};
}

std::string take(char* s) {
  LibString owned(s);
  return owned.get();
}

void emit(const std::string& bytes, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    std::cout.flush();
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f)
    throw Failure{kUsage, "cannot open '" + out_path + "' for writing"};
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f)
    throw Failure{kUsage, "write to '" + out_path + "' failed"};
}

std::vector<double> split_reals(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw Failure{kUsage, std::string(what) + ": not a number: \"" + item + "\""};
    out.push_back(v);
  }
  if (out.size() != count)
    throw Failure{kUsage, std::string(what) + ": expected " + std::to_string(count) +
                              " comma-separated numbers"};
  return out;
}

std::pair<std::uint32_t, std::uint32_t> parse_size(const std::string& text) {
  const auto x = text.find('x');
  auto number = [&](const std::string& s) -> std::uint32_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
      throw Failure{kUsage, "--size: expected WxH, got \"" + text + "\""};
    return static_cast<std::uint32_t>(std::stoul(s));
  };
  if (x == std::string::npos)
    throw Failure{kUsage, "--size: expected WxH, got \"" + text + "\""};
  return {number(text.substr(0, x)), number(text.substr(x + 1))};
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw Failure{kUsage, "cannot read '" + path + "'"};
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string fmt(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

// ---- subcommands -----------------------------------------------------------

struct EvalArgs {
  std::string expr;
  std::vector<std::string> lets;
  bool unicode = false;
  iteral_policy policy{};
};

int run_eval(const EvalArgs& a) {
  std::unique_ptr<iteral_env, decltype(&iteral_env_free)> env(nullptr, iteral_env_free);
  {
    iteral_env* raw = nullptr;
    check(iteral_env_new(&raw));
    env.reset(raw);
  }
  for (const auto& let : a.lets) {
    const auto eq = let.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Failure{kUsage, "--let: expected name=value, got \"" + let + "\""};
    check(iteral_env_bind(env.get(), let.substr(0, eq).c_str(), let.substr(eq + 1).c_str()));
  }

  iteral_expr* raw_expr = nullptr;
  size_t offset = 0;
  check(iteral_expr_parse(a.expr.c_str(), &raw_expr, &offset));
  std::unique_ptr<iteral_expr, decltype(&iteral_expr_free)> expr(raw_expr, iteral_expr_free);

  if (a.unicode) {
    char* s = nullptr;
    check(iteral_expr_format(expr.get(), 1, &s));
    std::cout << take(s) << "\n";
  }

  iteral_outcome* raw_out = nullptr;
  check(iteral_eval(expr.get(), env.get(), &a.policy, &raw_out));
  std::unique_ptr<iteral_outcome, decltype(&iteral_outcome_free)> outcome(raw_out,
                                                                         iteral_outcome_free);
  char* s = nullptr;
  check(iteral_outcome_describe(outcome.get(), &s));
  std::cout << take(s) << "\n";

  switch (iteral_outcome_get_kind(outcome.get())) {
    case ITERAL_OUTCOME_DIVERGED:
    case ITERAL_OUTCOME_DOMAIN_EXIT:
      return kNumeric;
    default:
      return kOk;
  }
}

int run_classify(const std::string& n, int radix) {
  char* s = nullptr;
  check(iteral_classify(n.c_str(), radix, &s));
  std::cout << take(s) << "\n";
  return kOk;
}

struct OnenessArgs {
  std::string n;
  int radix = 10;
  bool exact = false;
  bool cap31 = false;
  std::uint64_t max_steps = 0;
};

int run_oneness(const OnenessArgs& a) {
  iteral_trace* raw = nullptr;
  check(iteral_trace_new(a.n.c_str(), a.radix, a.cap31 ? 1 : 0, a.max_steps, &raw));
  std::unique_ptr<iteral_trace, decltype(&iteral_trace_free)> t(raw, iteral_trace_free);
  char* s = nullptr;
  check(iteral_trace_render(t.get(), a.exact ? 1 : 0, &s));
  std::cout << take(s);
  return iteral_trace_get_status(t.get()) == ITERAL_TRACE_REACHED_ONE ? kOk : kNumeric;
}

struct FractalArgs {
  std::string kind = "mandelbrot";
  std::string c = "0,0";
  std::string grid;
  std::string size = "256x256";
  std::uint32_t max_iter = 1000;
  double bailout = 2.0;
  unsigned threads = 0;
  bool csv = false;
  std::string out;
};

constexpr const char* kMandelbrotGrid = "-2,1,-1.5,1.5";
constexpr const char* kJuliaGrid = "-1.5,1.5,-1.5,1.5";

int run_fractal(const FractalArgs& a) {
  const bool julia = a.kind == "julia";
  const auto g = split_reals(a.grid.empty() ? (julia ? kJuliaGrid : kMandelbrotGrid) : a.grid, 4,
                             "--grid");
  const auto [w, h] = parse_size(a.size);
  const iteral_grid_spec grid{g[0], g[1], g[2], g[3], w, h};
  const iteral_escape_params params{a.max_iter, a.bailout};

  iteral_image* raw = nullptr;
  if (julia) {
    const auto c = split_reals(a.c, 2, "--c");
    check(iteral_render_julia(c[0], c[1], &grid, &params, a.threads, &raw));
  } else {
    check(iteral_render_mandelbrot(&grid, &params, a.threads, &raw));
  }
  std::unique_ptr<iteral_image, decltype(&iteral_image_free)> img(raw, iteral_image_free);

  if (a.csv) {
    char* s = nullptr;
    check(iteral_image_csv(img.get(), &s));
    emit(take(s), a.out);
  } else {
    unsigned char* data = nullptr;
    size_t len = 0;
    check(iteral_image_pgm(img.get(), &data, &len));
    std::unique_ptr<unsigned char, LibFree> owned(data);
    emit(std::string(reinterpret_cast<const char*>(data), len), a.out);
  }
  return kOk;
}

struct LogisticArgs {
  double b = 3.7;
  double x0 = 0.5;
  std::uint64_t steps = 100;
  std::string out;
};

int run_logistic(const LogisticArgs& a) {
  char* s = nullptr;
  check(iteral_logistic_csv(a.b, a.x0, a.steps, &s));
  emit(take(s), a.out);
  return kOk;
}

struct LorenzArgs {
  iteral_lorenz_params params{};
  double x0 = 0.0;
  double y0 = 1.0;
  double z0 = 0.0;
  std::uint64_t steps = 10000;
  std::string out;
};

int run_lorenz(const LorenzArgs& a) {
  char* s = nullptr;
  int truncated = 0;
  check(iteral_lorenz_csv(&a.params, a.x0, a.y0, a.z0, a.steps, &s, &truncated));
  emit(take(s), a.out);
  if (truncated) {
    std::cerr << "iteral: lorenz: trajectory left the finite range; output truncated\n";
    return kNumeric;
  }
  return kOk;
}

struct AbcArgs {
  std::uint64_t sessions = 1;
  std::uint64_t seed = 0;
  std::string config;
  bool show_config = false;
  std::string out;
};

int run_abc(const AbcArgs& a) {
  const std::string text = a.config.empty() ? std::string() : read_file(a.config);
  iteral_abc_config* raw = nullptr;
  check(iteral_abc_config_new(text.c_str(), &raw));
  std::unique_ptr<iteral_abc_config, decltype(&iteral_abc_config_free)> cfg(
      raw, iteral_abc_config_free);
  char* s = nullptr;
  if (a.show_config) {
    check(iteral_abc_config_show(cfg.get(), &s));
    std::cout << take(s);
    return kOk;
  }
  check(iteral_abc_simulate_csv(cfg.get(), a.sessions, a.seed, &s));
  emit(take(s), a.out);
  return kOk;
}

std::string all_defaults() {
  iteral_policy policy;
  iteral_policy_default(&policy);
  iteral_lorenz_params lorenz;
  iteral_lorenz_params_default(&lorenz);
  const FractalArgs fractal;
  const LogisticArgs logistic;
  const LorenzArgs lorenz_args;
  std::string out;
  out += "# eval\n";
  out += "eps = " + fmt(policy.eps) + "\n";
  out += "bailout = " + fmt(policy.bailout) + "\n";
  out += "max-steps = " + std::to_string(policy.max_steps) + "\n";
  out += "# oneness\n";
  out += "max-steps = 1000000\n";
  out += "# fractal\n";
  out += "kind = " + fractal.kind + "\n";
  out += "c = " + fractal.c + "\n";
  out += "grid = " + std::string(kMandelbrotGrid) + " (mandelbrot), " + kJuliaGrid + " (julia)\n";
  out += "size = " + fractal.size + "\n";
  out += "max-iter = " + std::to_string(fractal.max_iter) + "\n";
  out += "bailout = " + fmt(fractal.bailout) + "\n";
  out += "# logistic\n";
  out += "b = " + fmt(logistic.b) + "\n";
  out += "x0 = " + fmt(logistic.x0) + "\n";
  out += "steps = " + std::to_string(logistic.steps) + "\n";
  out += "# lorenz\n";
  out += "sigma = " + fmt(lorenz.sigma) + "\n";
  out += "r = " + fmt(lorenz.r) + "\n";
  out += "b = " + fmt(lorenz.b) + "\n";
  out += "dt = " + fmt(lorenz.dt) + "\n";
  out += "x0 = " + fmt(lorenz_args.x0) + "\n";
  out += "y0 = " + fmt(lorenz_args.y0) + "\n";
  out += "z0 = " + fmt(lorenz_args.z0) + "\n";
  out += "steps = " + std::to_string(lorenz_args.steps) + "\n";
  out += "# abc (config file keys)\n";
  iteral_abc_config* cfg = nullptr;
  check(iteral_abc_config_new(nullptr, &cfg));
  char* s = nullptr;
  const iteral_status st = iteral_abc_config_show(cfg, &s);
  iteral_abc_config_free(cfg);
  check(st);
  out += take(s);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iteration toolkit: iterals, the parity sieve, Collatz traces, fractals, "
               "Lorenz and logistic orbits, and the a-b-c tick process.",
               "iteral"};
  app.set_version_flag("--version", std::string("iteral ") + iteral_version());
  app.require_subcommand(0, 1);
  bool show_config = false;
  app.add_flag("--show-config", show_config, "Print every default setting and exit");

  iteral_policy default_policy;
  iteral_policy_default(&default_policy);

  EvalArgs eval_args;
  eval_args.policy = default_policy;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression, e.g. \"I[x=2, n=2](x^2)\"");
  eval->add_option("expr", eval_args.expr, "Expression")->required();
  eval->add_option("--let", eval_args.lets, "Binding name=value (repeatable)");
  eval->add_flag("--unicode", eval_args.unicode, "Also print the expression in И notation");
  eval->add_option("--eps", eval_args.policy.eps, "Convergence tolerance")
      ->check(CLI::PositiveNumber);
  eval->add_option("--bailout", eval_args.policy.bailout, "Divergence magnitude")
      ->check(CLI::PositiveNumber);
  eval->add_option("--max-steps", eval_args.policy.max_steps, "Step guard for n=inf")
      ->check(CLI::PositiveNumber);

  std::string classify_n;
  int classify_radix = 10;
  auto* classify = app.add_subcommand("classify", "Residue class of a natural number");
  classify->add_option("n", classify_n, "Natural number")->required();
  classify->add_option("--radix", classify_radix, "Radix the number is written in")
      ->check(CLI::Range(2, 36));

  OnenessArgs oneness_args;
  auto* oneness = app.add_subcommand("oneness", "Collatz trace with residue classes");
  oneness->add_option("n", oneness_args.n, "Starting value (decimal)")->required();
  oneness->add_option("radix", oneness_args.radix, "Radix of the representation column")
      ->required()
      ->check(CLI::Range(2, 36));
  oneness->add_flag("--exact", oneness_args.exact, "Column-aligned layout");
  oneness->add_flag("--cap31", oneness_args.cap31, "Reject values above 2^31-1");
  oneness->add_option("--max-steps", oneness_args.max_steps, "Step guard")
      ->check(CLI::PositiveNumber);

  FractalArgs fractal_args;
  auto* fractal = app.add_subcommand("fractal", "Escape-time image (PGM or CSV)");
  fractal->add_option("--kind", fractal_args.kind, "mandelbrot or julia")
      ->check(CLI::IsMember({"mandelbrot", "julia"}));
  fractal->add_option("--c", fractal_args.c, "Julia parameter re,im");
  fractal->add_option("--grid", fractal_args.grid, "re_min,re_max,im_min,im_max");
  fractal->add_option("--size", fractal_args.size, "WxH");
  fractal->add_option("--max-iter", fractal_args.max_iter, "Iteration cap")
      ->check(CLI::PositiveNumber);
  fractal->add_option("--bailout", fractal_args.bailout, "Escape radius (>= 2)");
  fractal->add_option("--threads", fractal_args.threads, "Worker threads (0 = all cores)");
  fractal->add_flag("--csv", fractal_args.csv, "Write row,col,count CSV instead of PGM");
  fractal->add_option("--out", fractal_args.out, "Output file");

  LogisticArgs logistic_args;
  auto* logistic = app.add_subcommand("logistic", "Orbit of x -> b x (1 - x) as CSV");
  logistic->add_option("--b", logistic_args.b, "Growth parameter");
  logistic->add_option("--x0", logistic_args.x0, "Initial value");
  logistic->add_option("--steps", logistic_args.steps, "Number of iterations");
  logistic->add_option("--out", logistic_args.out, "Output file");

  LorenzArgs lorenz_args;
  iteral_lorenz_params_default(&lorenz_args.params);
  auto* lorenz = app.add_subcommand("lorenz", "Lorenz trajectory as CSV");
  lorenz->add_option("--sigma", lorenz_args.params.sigma, "Prandtl number");
  lorenz->add_option("--r", lorenz_args.params.r, "Rayleigh ratio");
  lorenz->add_option("--b", lorenz_args.params.b, "Geometry factor");
  lorenz->add_option("--dt", lorenz_args.params.dt, "Time step")->check(CLI::PositiveNumber);
  lorenz->add_option("--steps", lorenz_args.steps, "Number of steps");
  lorenz->add_option("--x0", lorenz_args.x0, "Initial X");
  lorenz->add_option("--y0", lorenz_args.y0, "Initial Y");
  lorenz->add_option("--z0", lorenz_args.z0, "Initial Z");
  lorenz->add_option("--out", lorenz_args.out, "Output file");

  AbcArgs abc_args;
  auto* abc = app.add_subcommand("abc", "Simulate the a-b-c tick process as CSV");
  abc->add_option("--sessions", abc_args.sessions, "Number of sessions")
      ->check(CLI::PositiveNumber);
  abc->add_option("--seed", abc_args.seed, "RNG seed");
  abc->add_option("--config", abc_args.config, "key = value configuration file");
  abc->add_flag("--show-config", abc_args.show_config, "Print the effective configuration");
  abc->add_option("--out", abc_args.out, "Output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (show_config) {
      std::cout << all_defaults();
      return kOk;
    }
    if (*eval)
      return run_eval(eval_args);
    if (*classify)
      return run_classify(classify_n, classify_radix);
    if (*oneness)
      return run_oneness(oneness_args);
    if (*fractal)
      return run_fractal(fractal_args);
    if (*logistic)
      return run_logistic(logistic_args);
    if (*lorenz)
      return run_lorenz(lorenz_args);
    if (*abc)
      return run_abc(abc_args);
    std::cerr << app.help();
    return kUsage;
  } catch (const Failure& f) {
    std::cerr << "iteral: " << f.message << "\n";
    return f.code;
  }
}
