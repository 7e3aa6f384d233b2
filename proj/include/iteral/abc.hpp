#pragma once

// a-b-c tick process: (a) a random waiting time sets the next transaction
// moment, (b) an intraday integer price change follows, and (c) a separate
// increment bridges the last tick of one session and the first of the next.
//
// Session j: first tick = last tick of session j-1 + c-increment, followed by
// N_j - 1 intraday steps z <- z + (wait, b-increment).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace iteral::abc {

using Rng = std::mt19937_64;

struct Tick {
  double t = 0.0;                    // time, in units of u_t
  std::int64_t p = 0;                // price, in whole ticks
  std::optional<std::int64_t> v;     // volume, carried but not modelled

  friend bool operator==(const Tick&, const Tick&) = default;
};

struct CIncrement {
  double dA = 0.0;       // time gap between sessions, > 0
  std::int64_t dC = 0;   // price gap between sessions
};

struct IncrementModel {
  std::function<double(Rng&)> wait;
  std::function<std::int64_t(Rng&)> b_inc;
  std::function<CIncrement(Rng&)> c_inc;
  std::function<std::uint64_t(Rng&)> n_ticks;
};

struct SessionSeries {
  Tick z0;
  std::vector<std::vector<Tick>> sessions;
};

// Draw order per session: N_j, then the c-increment, then (wait, b-increment)
// for each intraday step. Throws std::domain_error if a sampler breaks its
// contract (non-positive wait or dA, zero tick count).
SessionSeries simulate(const Tick& z0, const IncrementModel& model, std::uint64_t sessions,
                       std::uint64_t seed);

struct Summary {
  std::vector<std::uint64_t> ticks_per_session;
  std::uint64_t intraday_steps = 0;
  double wait_mean = 0.0;
  double wait_var = 0.0;  // population variance
  double wait_bin_width = 0.0;
  // Δt histogram keyed by bin index floor(Δt / wait_bin_width).
  std::map<std::int64_t, std::uint64_t> wait_hist;
  double price_mean = 0.0;
  double price_var = 0.0;
  std::map<std::int64_t, std::uint64_t> price_hist;
};

// Statistics over intraday consecutive differences; session gaps excluded.
// Throws std::invalid_argument for an empty series.
Summary summarize(const SessionSeries& s, double wait_bin_width = 0.1);

// Flat "key = value" configuration with '#' comments. Keys:
//   wait    = weibull | exponential | constant   (wait.shape, wait.scale, wait.rate, wait.value)
//   b_inc   = uniform_int | choice | constant     (b_inc.min, b_inc.max, b_inc.values, b_inc.value)
//   c_dA    = same families as wait               (c_dA.*)
//   c_dC    = same families as b_inc              (c_dC.*)
//   n_ticks = uniform_int | constant              (n_ticks.min, n_ticks.max, n_ticks.value)
//   z0.t, z0.p
class Config {
 public:
  static Config defaults();

  // Applies `text` on top of the current settings. Unknown keys and
  // malformed lines throw std::invalid_argument.
  void merge(std::string_view text);

  // Throws std::invalid_argument for inconsistent sampler parameters.
  IncrementModel model() const;
  Tick z0() const;

  // Every effective setting, one "key = value" per line, sorted by key.
  std::string show() const;

 private:
  std::map<std::string, std::string> values_;
};

// Header "session,index,t,p"; sessions are numbered from 1.
std::string to_csv(const SessionSeries& s);

}  // namespace iteral::abc
