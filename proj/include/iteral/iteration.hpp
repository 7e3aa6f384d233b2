#pragma once

// Generic engine for iterating a self-map: a fixed number of times, or
// "unbounded" until convergence, divergence, an exact cycle or a step limit.

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace iteral {

class IterCount {
 public:
  static constexpr IterCount finite(std::uint64_t n) { return IterCount(n); }
  static constexpr IterCount unbounded() { return IterCount(); }

  constexpr bool is_unbounded() const { return !count_.has_value(); }
  // Precondition: !is_unbounded().
  constexpr std::uint64_t count() const { return *count_; }

  friend constexpr bool operator==(const IterCount&, const IterCount&) = default;

 private:
  constexpr IterCount() = default;
  constexpr explicit IterCount(std::uint64_t n) : count_(n) {}
  std::optional<std::uint64_t> count_;
};

struct ConvergencePolicy {
  double eps = 1e-12;
  double bailout = 1e150;
  std::uint64_t max_steps = 1'000'000;
};

namespace outcome {

template <class T>
struct Value {
  T value;
  std::uint64_t steps = 0;
};

template <class T>
struct Converged {
  T value;
  std::uint64_t steps = 0;
};

enum class DivergeReason { Bailout, StepLimit };

struct Diverged {
  std::uint64_t steps = 0;
  DivergeReason reason = DivergeReason::Bailout;
};

// values[entry] == values[entry + period]; detected after `steps` steps.
struct Cycle {
  std::uint64_t entry = 0;
  std::uint64_t period = 1;
  std::uint64_t steps = 0;
};

// The map was undefined at values[steps].
struct DomainExit {
  std::uint64_t steps = 0;
};

}  // namespace outcome

template <class T>
using IterOutcome = std::variant<outcome::Value<T>, outcome::Converged<T>, outcome::Diverged,
                                 outcome::Cycle, outcome::DomainExit>;

template <class T>
std::uint64_t steps_taken(const IterOutcome<T>& o) {
  return std::visit([](const auto& alt) { return alt.steps; }, o);
}

// Value for Value/Converged, empty otherwise.
template <class T>
std::optional<T> value_of(const IterOutcome<T>& o) {
  if (const auto* v = std::get_if<outcome::Value<T>>(&o))
    return v->value;
  if (const auto* c = std::get_if<outcome::Converged<T>>(&o))
    return c->value;
  return std::nullopt;
}

template <class T>
struct Orbit {
  std::vector<T> values;  // values[0] is the initial value
  IterOutcome<T> outcome;
};

// How the engine measures a state space. Specialize for new domains.
//   distance(a, b)  - metric used for convergence and float periodicity
//   magnitude(a)    - norm compared against the bailout radius
//   exact(a)        - whether `a` supports exact equality (cycle detection)
//   same(a, b)      - exact equality
template <class T>
struct OrbitTraits;

template <>
struct OrbitTraits<double> {
  static double distance(double a, double b) { return std::abs(a - b); }
  static double magnitude(double a) { return std::abs(a); }
  static bool exact(double) { return false; }
  static bool same(double a, double b) { return a == b; }
};

template <>
struct OrbitTraits<std::complex<double>> {
  using C = std::complex<double>;
  static double distance(const C& a, const C& b) { return std::abs(a - b); }
  static double magnitude(const C& a) { return std::abs(a); }
  static bool exact(const C&) { return false; }
  static bool same(const C& a, const C& b) { return a == b; }
};

template <>
struct OrbitTraits<mpz_class> {
  static double distance(const mpz_class& a, const mpz_class& b) {
    mpz_class d = a - b;
    return std::abs(d.get_d());
  }
  static double magnitude(const mpz_class& a) {
    // mpz_get_d truncates silently; anything wider than a double is infinite here.
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 1023)
      return HUGE_VAL;
    return std::abs(a.get_d());
  }
  static bool exact(const mpz_class&) { return true; }
  static bool same(const mpz_class& a, const mpz_class& b) { return a == b; }
};

template <>
struct OrbitTraits<mpq_class> {
  static double distance(const mpq_class& a, const mpq_class& b) {
    mpq_class d = a - b;
    return std::abs(d.get_d());
  }
  static double magnitude(const mpq_class& a) { return std::abs(a.get_d()); }
  static bool exact(const mpq_class&) { return true; }
  static bool same(const mpq_class& a, const mpq_class& b) { return a == b; }
};

namespace detail {

// Maps may be total (return T) or partial (return std::optional<T>, with
// nullopt meaning the argument is outside the domain).
template <class T, class F>
std::optional<T> apply_map(F& f, const T& x) {
  using R = std::invoke_result_t<F&, const T&>;
  if constexpr (std::is_same_v<std::remove_cvref_t<R>, std::optional<T>>)
    return f(x);
  else
    return std::optional<T>(f(x));
}

template <class T, class F>
IterOutcome<T> run_finite(F& f, const T& v, std::uint64_t n, std::vector<T>* record) {
  T x = v;
  if (record)
    record->push_back(x);
  for (std::uint64_t t = 0; t < n; ++t) {
    std::optional<T> next = apply_map(f, x);
    if (!next)
      return outcome::DomainExit{t};
    x = std::move(*next);
    if (record)
      record->push_back(x);
  }
  return outcome::Value<T>{std::move(x), n};
}

template <class T, class F>
IterOutcome<T> run_unbounded(F& f, const T& v, const ConvergencePolicy& policy,
                             std::vector<T>* record) {
  using Traits = OrbitTraits<T>;
  T x = v;
  if (record)
    record->push_back(x);

  // Brent's cycle detection, active while the orbit stays exact.
  T tortoise = v;
  std::uint64_t power = 1;
  std::uint64_t lam = 0;
  bool tracking = Traits::exact(v);

  for (std::uint64_t t = 0; t < policy.max_steps; ++t) {
    std::optional<T> next = apply_map(f, x);
    if (!next)
      return outcome::DomainExit{t};
    const std::uint64_t steps = t + 1;
    if (record)
      record->push_back(*next);

    const double mag = Traits::magnitude(*next);
    if (!(mag <= policy.bailout))
      return outcome::Diverged{steps, outcome::DivergeReason::Bailout};
    if (Traits::distance(*next, x) < policy.eps)
      return outcome::Converged<T>{std::move(*next), steps};

    if (Traits::exact(*next)) {
      if (!tracking) {
        tortoise = *next;
        power = 1;
        lam = 0;
        tracking = true;
      } else {
        ++lam;
        if (Traits::same(*next, tortoise)) {
          // Period found; locate the first index i with x_i == x_{i+lam}.
          T a = v;
          T b = v;
          for (std::uint64_t i = 0; i < lam; ++i)
            b = *apply_map(f, b);
          std::uint64_t mu = 0;
          while (!Traits::same(a, b)) {
            a = *apply_map(f, a);
            b = *apply_map(f, b);
            ++mu;
          }
          return outcome::Cycle{mu, lam, steps};
        }
        if (power == lam) {
          tortoise = *next;
          power *= 2;
          lam = 0;
        }
      }
    } else {
      tracking = false;
    }
    x = std::move(*next);
  }
  return outcome::Diverged{policy.max_steps, outcome::DivergeReason::StepLimit};
}

}  // namespace detail

// Finite(n) yields Value(f^n(v)); Finite(0) returns v for every f.
template <class T, class F>
IterOutcome<T> iterate(F f, const T& v, IterCount n, const ConvergencePolicy& policy = {}) {
  if (n.is_unbounded())
    return detail::run_unbounded(f, v, policy, static_cast<std::vector<T>*>(nullptr));
  return detail::run_finite(f, v, n.count(), static_cast<std::vector<T>*>(nullptr));
}

// Finite iteration only; needs no OrbitTraits for T.
template <class T, class F>
T iterate_n(F f, const T& v, std::uint64_t n) {
  auto o = detail::run_finite(f, v, n, static_cast<std::vector<T>*>(nullptr));
  return std::get<outcome::Value<T>>(std::move(o)).value;
}

// (v, f(v), ..., f^n(v)) for a total map; needs no OrbitTraits for T.
template <class T, class F>
std::vector<T> splinter_n(F f, const T& v, std::uint64_t n) {
  std::vector<T> values;
  values.reserve(n + 1);
  detail::run_finite(f, v, n, &values);
  return values;
}

// The orbit (v, f(v), ..., f^n(v)), truncated at a domain exit.
template <class T, class F>
Orbit<T> splinter(F f, const T& v, IterCount n, const ConvergencePolicy& policy = {}) {
  Orbit<T> orbit{{}, outcome::DomainExit{0}};
  if (n.is_unbounded())
    orbit.outcome = detail::run_unbounded(f, v, policy, &orbit.values);
  else
    orbit.outcome = detail::run_finite(f, v, n.count(), &orbit.values);
  return orbit;
}

// Least m <= m_max with f^m(v) == v. Exact values compare exactly; others
// compare within policy.eps.
template <class T, class F>
std::optional<std::uint64_t> periodic_order(F f, const T& v, std::uint64_t m_max,
                                            const ConvergencePolicy& policy = {}) {
  using Traits = OrbitTraits<T>;
  T x = v;
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    std::optional<T> next = detail::apply_map(f, x);
    if (!next)
      return std::nullopt;
    x = std::move(*next);
    const bool equal = (Traits::exact(x) && Traits::exact(v))
                           ? Traits::same(x, v)
                           : Traits::distance(x, v) <= policy.eps;
    if (equal)
      return m;
  }
  return std::nullopt;
}

}  // namespace iteral
