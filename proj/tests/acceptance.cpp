// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Tolerances and time budgets are fixed here.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ast_gen.hpp"
#include "iteral/abc.hpp"
#include "iteral/collatz.hpp"
#include "iteral/dynamics.hpp"
#include "iteral/expr.hpp"
#include "iteral/iteration.hpp"
#include "iteral/sieve.hpp"

#ifndef ITERAL_CLI
#error "ITERAL_CLI must name the command-line binary"
#endif

namespace {

using namespace iteral;

constexpr double kGoldenTol = 1e-10;
constexpr double kSplinterTol = 1e-12;
constexpr double kMixedTol = 1e-12;
constexpr double kLorenzTol = 1e-12;
constexpr double kOrderLow = 6.0;
constexpr double kOrderHigh = 10.0;
constexpr double kLorenzBound = 100.0;
constexpr double kJuliaAgreement = 0.99;

// Collected failure detail for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5)
      failures_.push_back(what);
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  std::string detail() const {
    std::string s;
    for (const auto& f : failures_)
      s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  bool ok_ = true;
  std::vector<std::string> failures_;
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;)
    out.push_back(t);
  return out;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + ITERAL_CLI + "' " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe)
    return {-1, {}};
  std::string out;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;)
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const char* const kReferenceRun[] = {
    " 0  9 IN  100 EO : 4p + 1 : (k=0, p=2) : 9",
    " 1 14 3X  112 EO3E : 32p + 14 : (m=0, l=3, p=0) : 14",
    " 2  7 D2   21 EO2O : 16p + 7 : (k=2, p=0) : 7",
    " 3 11 3X  102 EO1O : 8p + 3 : (k=1, p=1) : 11",
    " 4 17 3X  122 EO : 4p + 1 : (k=0, p=4) : 17",
    " 5 26 3X  222 EOE : 8p + 2 : (m=0, l=1, p=3) : 26",
    " 6 13 D2  111 EO : 4p + 1 : (k=0, p=3) : 13",
    " 7 20 3X  202 EOE1E : 16p + 4 : (m=1, l=1, p=1) : 20",
    " 8 10 D2  101 EOE : 8p + 2 : (m=0, l=1, p=1) : 10",
    " 9  5 D2   12 EO : 4p + 1 : (k=0, p=1) : 5",
    "10  8 3X   22 EOE2E : 32p + 8 : (m=2, l=1, p=0) : 8",
    "11  4 D2   11 EOE1E : 16p + 4 : (m=1, l=1, p=0) : 4",
    "12  2 D2    2 EOE : 8p + 2 : (m=0, l=1, p=0) : 2",
    "13  1 D2    1 EO : 4p + 1 : (k=0, p=0) : 1",
};

void reference_run(Check& c) {
  const auto [code, out] = run_cli("oneness 9 3");
  c.expect(code == 0, "exit status " + std::to_string(code));
  const auto got = lines(out);
  c.expect(got.size() == 14, std::to_string(got.size()) + " lines");
  for (std::size_t i = 0; i < std::min<std::size_t>(got.size(), 14); ++i)
    c.expect(tokens(got[i]) == tokens(kReferenceRun[i]), "line " + std::to_string(i) + ": " + got[i]);

  const auto [exact_code, exact] = run_cli("oneness 9 3 --exact");
  std::string verbatim;
  for (const char* l : kReferenceRun)
    verbatim += std::string(l) + "\n";
  c.expect(exact_code == 0 && exact == verbatim, "--exact layout differs");
}

void bijection(Check& c) {
  for (long n = 0; n <= (1L << 16); ++n)
    if (sieve::value_of(sieve::classify(n)) != n) {
      c.expect(false, "value_of(classify(" + std::to_string(n) + "))");
      break;
    }
  const auto oracle = sieve::sieve_oracle(4096, 20);
  std::size_t mismatches = 0;
  for (const auto& [n, name] : oracle.resolved)
    if (sieve::class_to_name(sieve::classify(n)) != name)
      ++mismatches;
  c.expect(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
  c.expect(oracle.resolved.size() == 4096, std::to_string(oracle.resolved.size()) + " resolved");
}

void worked_examples(Check& c) {
  using sieve::ResidueClass;
  namespace co = sieve::coords;
  c.expect(sieve::classify(39) == ResidueClass(co::Odd{2, 2}), "39");
  c.expect(sieve::classify(7) == ResidueClass(co::Odd{2, 0}), "7");
  c.expect(sieve::classify(5) == ResidueClass(co::Odd{0, 1}), "5");
  c.expect(sieve::classify(28) == ResidueClass(co::Even{1, 3, 0}), "28");
  c.expect(sieve::classify(38) == ResidueClass(co::Even{0, 2, 2}), "38");
  c.expect(sieve::equivalent(7, 39), "7 ~ 39");
  c.expect(!sieve::equivalent(5, 7), "5 !~ 7");
  c.expect(!sieve::equivalent(28, 38), "28 !~ 38");
}

void linear_forms(Check& c) {
  using sieve::LinearForm;
  using sieve::SubseqName;
  const std::vector<std::pair<std::string, std::string>> tree{
      {"E", "2p"},        {"O", "2p + 1"},    {"EO", "4p + 1"},    {"EOO", "8p + 3"},
      {"EOOO", "16p + 7"}, {"EOE", "8p + 2"}, {"EOEE", "16p + 4"}, {"EOOOEE", "64p + 28"},
  };
  for (const auto& [name, form] : tree)
    c.expect(sieve::name_to_form(SubseqName(name)).to_string() == form, name);
  for (std::uint64_t k = 0; k <= 20; ++k) {
    const auto f = sieve::name_to_form(sieve::class_to_name(sieve::coords::Odd{k, 0}));
    c.expect(f == LinearForm{pow2(k + 2), pow2(k + 1) - 1}, "odd k=" + std::to_string(k));
  }
  for (std::uint64_t m = 0; m <= 10; ++m)
    for (std::uint64_t l = 1; l <= 10; ++l) {
      const auto f = sieve::name_to_form(sieve::class_to_name(sieve::coords::Even{m, l, 0}));
      c.expect(f == LinearForm{pow2(m + l + 2), pow2(m + 1) * (pow2(l) - 1)},
               "even m=" + std::to_string(m) + " l=" + std::to_string(l));
    }
}

void collatz_laws(Check& c) {
  using sieve::classify;
  namespace co = sieve::coords;
  for (long n = 1; n <= 100000; n += 2) {
    const auto oc = std::get<co::Odd>(classify(n));
    if (n > 1 && classify(collatz::step(n)->value) != collatz::odd_transition(oc)) {
      c.expect(false, "transition at " + std::to_string(n));
      return;
    }
    Natural x = n;
    for (std::uint64_t j = 1; j <= oc.k; ++j) {
      x = (3 * x + 1) / 2;
      const Natural pj = pow3(j) * oc.p + (pow3(j) - 1) / 2;
      if (classify(x) != sieve::ResidueClass(co::Odd{oc.k - j, pj})) {
        c.expect(false, "pair formula at " + std::to_string(n));
        return;
      }
    }
    x = (3 * x + 1) / 2;
    if (x != pow3(oc.k + 1) * (2 * oc.p + 1) - 1 || x != collatz::odd_run_endpoint(oc)) {
      c.expect(false, "endpoint at " + std::to_string(n));
      return;
    }
  }
  for (long n = 2; n <= 100000; n += 2) {
    const auto ec = std::get<co::Even>(classify(n));
    Natural x = n;
    for (std::uint64_t i = 0; i <= ec.m; ++i)
      x /= 2;
    if (!is_odd(x) || classify(x) != sieve::ResidueClass(co::Odd{ec.l - 1, ec.p})) {
      c.expect(false, "strip at " + std::to_string(n));
      return;
    }
  }
}

void evaluator(Check& c) {
  const expr::Env env;
  auto value = [&](const std::string& src, const expr::Env& e) { return value_of(expr::eval(expr::parse(src), e)); };
  c.expect(value("I[x=2, n=0](x^2)", env) == Scalar(2), "n=0");
  c.expect(value("I[x=2, n=1](x^2)", env) == Scalar(4), "n=1");
  c.expect(value("I[x=2, n=2](x^2)", env) == Scalar(16), "n=2");

  const auto golden = expr::eval(expr::parse("I[x=1, n=inf](1/(x+1))"), env);
  c.expect(std::holds_alternative<outcome::Converged<Scalar>>(golden) &&
               std::abs(value_of(golden)->to_real() - 2.0 / (1.0 + std::sqrt(5.0))) < kGoldenTol,
           "golden ratio conjugate");

  const auto exact = splinter([](const mpq_class& x) -> mpq_class { return mpq_class(1) / (x + 1); },
                              mpq_class(1), IterCount::finite(5));
  const std::vector<mpq_class> chain{1, mpq_class(1, 2), mpq_class(2, 3), mpq_class(3, 5),
                                     mpq_class(5, 8), mpq_class(8, 13)};
  c.expect(exact.values == chain, "rational splinter");
  for (std::uint64_t k = 0; k < 6; ++k) {
    const auto v = value("I[x=1, n=" + std::to_string(k) + "](1/(x+1))", env);
    c.expect(v && std::abs(v->to_real() - chain[k].get_d()) < kSplinterTol,
             "float splinter term " + std::to_string(k));
  }

  for (long q = 0; q <= 100; ++q) {
    expr::Env e;
    e.bind("q", Scalar(q));
    c.expect(value("I[p=2*q+1, n=1](I[p=2*p+1, n=1](2*p))", e) == Scalar(8 * q + 6),
             "nesting q=" + std::to_string(q));
    c.expect(value("I[p=2*q+1, n=2](2*p)", e) == Scalar(8 * q + 4),
             "repetition q=" + std::to_string(q));
  }
}

void fractals(Check& c) {
  using namespace dynamics;
  const EscapeParams p{1000, 2.0};
  c.expect(!escape_time({0, 0}, {0, 0}, p), "c=0 member");
  c.expect(escape_time({1, 0}, {0, 0}, p) == 4u, "c=1 escapes at 4");
  c.expect(!escape_time({-1, 0}, {0, 0}, p), "c=-1 member");
  const GridSpec g{-1.5, 1.5, -1.5, 1.5, 256, 256};
  const auto img = render_grid(Julia{{0, 0}}, g, {100, 2.0});
  std::size_t agree = 0;
  for (std::uint32_t row = 0; row < g.height; ++row)
    for (std::uint32_t col = 0; col < g.width; ++col)
      agree += (img.at(col, row) == 0) == (std::abs(pixel_center(g, col, row)) <= 1.0);
  const double frac = static_cast<double>(agree) / (g.width * g.height);
  c.expect(frac >= kJuliaAgreement, "julia agreement " + std::to_string(frac));
}

dynamics::LorenzState axpy(const dynamics::LorenzState& a, const dynamics::LorenzState& b, double h) {
  return {a.x + h * b.x, a.y + h * b.y, a.z + h * b.z};
}

double dist(const dynamics::LorenzState& a, const dynamics::LorenzState& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

dynamics::LorenzState rk4(dynamics::LorenzState s, const dynamics::LorenzParams& p, double dt, int n) {
  using dynamics::lorenz_rhs;
  const double h = dt / n;
  for (int i = 0; i < n; ++i) {
    const auto k1 = lorenz_rhs(s, p);
    const auto k2 = lorenz_rhs(axpy(s, k1, h / 2), p);
    const auto k3 = lorenz_rhs(axpy(s, k2, h / 2), p);
    const auto k4 = lorenz_rhs(axpy(s, k3, h), p);
    s = {s.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x),
         s.y + h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
         s.z + h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z)};
  }
  return s;
}

void lorenz(Check& c) {
  using namespace dynamics;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> xy(-20.0, 20.0);
  std::uniform_real_distribution<double> zz(0.0, 45.0);
  const LorenzParams p;
  double worst_oracle = 0.0;
  double worst_heun = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LorenzState s{xy(rng), xy(rng), zz(rng)};
    const LorenzState step = lorenz_step(s, p);
    const LorenzState g1 = axpy(s, lorenz_rhs(s, p), p.dt);
    const LorenzState g2 = axpy(g1, lorenz_rhs(g1, p), p.dt);
    worst_oracle = std::max(worst_oracle, dist(step, {0.5 * (s.x + g2.x), 0.5 * (s.y + g2.y), 0.5 * (s.z + g2.z)}));
    const LorenzState f0 = lorenz_rhs(s, p);
    const LorenzState f1 = lorenz_rhs(axpy(s, f0, p.dt), p);
    worst_heun = std::max(worst_heun, dist(step, {s.x + 0.5 * p.dt * (f0.x + f1.x),
                                                  s.y + 0.5 * p.dt * (f0.y + f1.y),
                                                  s.z + 0.5 * p.dt * (f0.z + f1.z)}));
  }
  c.expect(worst_oracle < kLorenzTol, "oracle deviation " + std::to_string(worst_oracle));
  c.expect(worst_heun < kLorenzTol, "Heun deviation " + std::to_string(worst_heun));

  double e_full = 0.0;
  double e_half = 0.0;
  for (int i = 0; i < 200; ++i) {
    const LorenzState s{xy(rng), xy(rng), zz(rng)};
    LorenzParams q;
    q.dt = 0.01;
    const double a = dist(lorenz_step(s, q), rk4(s, q, q.dt, 100));
    q.dt = 0.005;
    const double b = dist(lorenz_step(s, q), rk4(s, q, q.dt, 100));
    e_full += a * a;
    e_half += b * b;
  }
  const double ratio = std::sqrt(e_full / e_half);
  c.expect(ratio >= kOrderLow && ratio <= kOrderHigh, "error ratio " + std::to_string(ratio));

  const auto t = lorenz_trajectory({0.0, 1.0, 0.0}, p, 10000);
  bool bounded = !t.truncated && t.states.size() == 10001;
  for (const auto& s : t.states)
    bounded = bounded && std::abs(s.x) < kLorenzBound && std::abs(s.y) < kLorenzBound &&
              std::abs(s.z) < kLorenzBound;
  c.expect(bounded, "trajectory left the bounding box");
}

void abc_process(Check& c) {
  using namespace abc;
  const auto cfg = Config::defaults();
  const auto model = cfg.model();
  c.expect(to_csv(simulate(cfg.z0(), model, 5, 2024)) == to_csv(simulate(cfg.z0(), model, 5, 2024)),
           "seeded runs differ");

  auto small = Config::defaults();
  small.merge("n_ticks.min = 2\nn_ticks.max = 50\n");
  const auto small_model = small.model();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto s = simulate(small.z0(), small_model, 2, seed);
    for (const auto& session : s.sessions)
      for (std::size_t i = 1; i < session.size(); ++i)
        if (!(session[i].t > session[i - 1].t)) {
          c.expect(false, "time not increasing, seed " + std::to_string(seed));
          return;
        }
  }

  IncrementModel flat;
  flat.wait = [](Rng&) { return 0.25; };
  flat.b_inc = [](Rng&) -> std::int64_t { return -1; };
  flat.c_inc = [](Rng&) { return CIncrement{100.0, 5}; };
  flat.n_ticks = [](Rng&) -> std::uint64_t { return 2; };
  const auto golden = simulate({1.0, 50, std::nullopt}, flat, 3, 0);
  c.expect(to_csv(golden) ==
               "session,index,t,p\n"
               "1,0,101,55\n1,1,101.25,54\n"
               "2,0,201.25,59\n2,1,201.5,58\n"
               "3,0,301.5,63\n3,1,301.75,62\n",
           "degenerate golden series");
}

void round_trip(Check& c) {
  testing::AstGen gen(777);
  std::size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const expr::Expr e = gen.gen(5);
    try {
      if (!(expr::parse(expr::format(e)) == e))
        ++failures;
    } catch (const expr::ParseError&) {
      ++failures;
    }
  }
  c.expect(failures == 0, std::to_string(failures) + " round-trip failures");

  const double y = std::numbers::pi / 4.0;
  expr::Env env;
  env.bind("x", Scalar(y));
  env.bind("y", Scalar(y));
  const auto v = value_of(expr::eval(expr::parse("cos(x)^2 + I[x=y, n=2](sin(x))"), env));
  c.expect(v.has_value() && std::abs(v->to_real() - (0.5 + std::sin(std::sqrt(2.0) / 2.0))) < kMixedTol,
           "mixed expression");
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "reference trace (oneness 9 3)", 0.1, reference_run},
      {2, "classification bijection and sieve oracle", 5.0, bijection},
      {3, "worked classification examples", 1.0, worked_examples},
      {4, "linear-form identities", 1.0, linear_forms},
      {5, "Collatz transition laws", 10.0, collatz_laws},
      {6, "iteral evaluator goldens", 5.0, evaluator},
      {7, "fractal spot checks", 5.0, fractals},
      {8, "Lorenz double approximation", 5.0, lorenz},
      {9, "a-b-c process", 5.0, abc_process},
      {10, "DSL round trip and mixed expression", 5.0, round_trip},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(secs < cr.budget_s, "over time budget");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs / %.1fs", secs, cr.budget_s);
    std::printf("%s  criterion %2d: %s [%s]%s%s\n", c.ok() ? "PASS" : "FAIL", cr.id, cr.name, timing,
                c.ok() ? "" : " - ", c.detail().c_str());
    failed += c.ok() ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
