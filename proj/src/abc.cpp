#include "iteral/abc.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "iteral/iteration.hpp"

namespace iteral::abc {

SessionSeries simulate(const Tick& z0, const IncrementModel& model, std::uint64_t sessions,
                       std::uint64_t seed) {
  if (!model.wait || !model.b_inc || !model.c_inc || !model.n_ticks)
    throw std::invalid_argument("increment model has an unset sampler");
  Rng rng(seed);
  SessionSeries series{z0, {}};
  series.sessions.reserve(sessions);

  auto intraday = [&](const Tick& z) {
    const double dt = model.wait(rng);
    if (!(dt > 0.0))
      throw std::domain_error("waiting time sampler returned a non-positive value");
    return Tick{z.t + dt, z.p + model.b_inc(rng), std::nullopt};
  };

  Tick last = z0;
  for (std::uint64_t j = 0; j < sessions; ++j) {
    const std::uint64_t n = model.n_ticks(rng);
    if (n < 1)
      throw std::domain_error("tick count sampler returned zero");
    const CIncrement c = model.c_inc(rng);
    if (!(c.dA > 0.0))
      throw std::domain_error("session gap sampler returned a non-positive time");
    const Tick first{last.t + c.dA, last.p + c.dC, std::nullopt};
    series.sessions.push_back(splinter_n(intraday, first, n - 1));
    last = series.sessions.back().back();
  }
  return series;
}

Summary summarize(const SessionSeries& s, double wait_bin_width) {
  if (s.sessions.empty())
    throw std::invalid_argument("cannot summarize an empty session list");
  if (!(wait_bin_width > 0.0))
    throw std::invalid_argument("histogram bin width must be positive");
  Summary out;
  out.wait_bin_width = wait_bin_width;
  double wait_m2 = 0.0;
  double price_m2 = 0.0;
  std::uint64_t n = 0;
  for (const auto& session : s.sessions) {
    out.ticks_per_session.push_back(session.size());
    for (std::size_t i = 1; i < session.size(); ++i) {
      const double dt = session[i].t - session[i - 1].t;
      const std::int64_t dp = session[i].p - session[i - 1].p;
      ++n;
      // Welford updates.
      const double dw = dt - out.wait_mean;
      out.wait_mean += dw / static_cast<double>(n);
      wait_m2 += dw * (dt - out.wait_mean);
      const double dq = static_cast<double>(dp) - out.price_mean;
      out.price_mean += dq / static_cast<double>(n);
      price_m2 += dq * (static_cast<double>(dp) - out.price_mean);
      ++out.wait_hist[static_cast<std::int64_t>(std::floor(dt / wait_bin_width))];
      ++out.price_hist[dp];
    }
  }
  out.intraday_steps = n;
  if (n > 0) {
    out.wait_var = wait_m2 / static_cast<double>(n);
    out.price_var = price_m2 / static_cast<double>(n);
  }
  return out;
}

namespace {

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw std::invalid_argument("config key '" + key + "': not a number: \"" + text + "\"");
  return v;
}

std::int64_t to_int(const std::string& key, const std::string& text) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("config key '" + key + "': not an integer: \"" + text + "\"");
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

class Settings {
 public:
  explicit Settings(const std::map<std::string, std::string>& v) : v_(v) {}

  const std::string& get(const std::string& key) const { return v_.at(key); }
  double real(const std::string& key) const { return to_double(key, get(key)); }
  std::int64_t integer(const std::string& key) const { return to_int(key, get(key)); }

  double positive(const std::string& key) const {
    const double x = real(key);
    if (!(x > 0.0))
      throw std::invalid_argument("config key '" + key + "' must be positive");
    return x;
  }

  // Continuous positive samplers; a zero draw (probability ~2^-53) is redrawn.
  std::function<double(Rng&)> positive_real(const std::string& slot) const {
    const std::string family = get(slot);
    if (family == "weibull") {
      std::weibull_distribution<double> d(positive(slot + ".shape"), positive(slot + ".scale"));
      return [d](Rng& rng) mutable {
        double x;
        do x = d(rng); while (!(x > 0.0));
        return x;
      };
    }
    if (family == "exponential") {
      std::exponential_distribution<double> d(positive(slot + ".rate"));
      return [d](Rng& rng) mutable {
        double x;
        do x = d(rng); while (!(x > 0.0));
        return x;
      };
    }
    if (family == "constant") {
      const double x = positive(slot + ".value");
      return [x](Rng&) { return x; };
    }
    throw std::invalid_argument("config key '" + slot + "': unknown family \"" + family +
                                "\" (weibull, exponential, constant)");
  }

  std::function<std::int64_t(Rng&)> integer_sampler(const std::string& slot) const {
    const std::string family = get(slot);
    if (family == "uniform_int") {
      const std::int64_t lo = integer(slot + ".min");
      const std::int64_t hi = integer(slot + ".max");
      if (lo > hi)
        throw std::invalid_argument("config: " + slot + ".min exceeds " + slot + ".max");
      std::uniform_int_distribution<std::int64_t> d(lo, hi);
      return [d](Rng& rng) mutable { return d(rng); };
    }
    if (family == "choice") {
      std::vector<std::int64_t> values;
      std::stringstream ss(get(slot + ".values"));
      for (std::string item; std::getline(ss, item, ',');)
        values.push_back(to_int(slot + ".values", trim(item)));
      if (values.empty())
        throw std::invalid_argument("config: " + slot + ".values is empty");
      std::uniform_int_distribution<std::size_t> d(0, values.size() - 1);
      return [d, values](Rng& rng) mutable { return values[d(rng)]; };
    }
    if (family == "constant") {
      const std::int64_t x = integer(slot + ".value");
      return [x](Rng&) { return x; };
    }
    throw std::invalid_argument("config key '" + slot + "': unknown family \"" + family +
                                "\" (uniform_int, choice, constant)");
  }

 private:
  const std::map<std::string, std::string>& v_;
};

}  // namespace

Config Config::defaults() {
  Config c;
  c.values_ = {
      {"wait", "weibull"},      {"wait.shape", "0.8"},    {"wait.scale", "1"},
      {"wait.rate", "1"},       {"wait.value", "1"},      {"b_inc", "choice"},
      {"b_inc.min", "-1"},      {"b_inc.max", "1"},       {"b_inc.values", "-1,0,1"},
      {"b_inc.value", "0"},     {"c_dA", "exponential"},  {"c_dA.shape", "0.8"},
      {"c_dA.scale", "1000"},   {"c_dA.rate", "0.001"},   {"c_dA.value", "1000"},
      {"c_dC", "choice"},       {"c_dC.min", "-2"},       {"c_dC.max", "2"},
      {"c_dC.values", "-2,-1,0,1,2"},                     {"c_dC.value", "0"},
      {"n_ticks", "uniform_int"}, {"n_ticks.min", "100"}, {"n_ticks.max", "1000"},
      {"n_ticks.value", "500"}, {"z0.t", "0"},            {"z0.p", "1000"},
  };
  return c;
}

void Config::merge(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty())
      continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = trim(std::string_view(trimmed).substr(eq + 1));
    if (!values_.count(key))
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    values_[key] = value;
  }
}

IncrementModel Config::model() const {
  const Settings s(values_);
  IncrementModel m;
  m.wait = s.positive_real("wait");
  m.b_inc = s.integer_sampler("b_inc");
  auto dA = s.positive_real("c_dA");
  auto dC = s.integer_sampler("c_dC");
  m.c_inc = [dA, dC](Rng& rng) mutable {
    const double a = dA(rng);
    return CIncrement{a, dC(rng)};
  };
  const std::string family = s.get("n_ticks");
  if (family == "uniform_int") {
    const std::int64_t lo = s.integer("n_ticks.min");
    const std::int64_t hi = s.integer("n_ticks.max");
    if (lo < 1 || lo > hi)
      throw std::invalid_argument("config: need 1 <= n_ticks.min <= n_ticks.max");
    std::uniform_int_distribution<std::uint64_t> d(static_cast<std::uint64_t>(lo),
                                                   static_cast<std::uint64_t>(hi));
    m.n_ticks = [d](Rng& rng) mutable { return d(rng); };
  } else if (family == "constant") {
    const std::int64_t n = s.integer("n_ticks.value");
    if (n < 1)
      throw std::invalid_argument("config: n_ticks.value must be at least 1");
    m.n_ticks = [n](Rng&) { return static_cast<std::uint64_t>(n); };
  } else {
    throw std::invalid_argument("config key 'n_ticks': unknown family \"" + family +
                                "\" (uniform_int, constant)");
  }
  return m;
}

Tick Config::z0() const {
  const Settings s(values_);
  return Tick{s.real("z0.t"), s.integer("z0.p"), std::nullopt};
}

std::string Config::show() const {
  std::string out;
  for (const auto& [k, v] : values_)
    out += k + " = " + v + "\n";
  return out;
}

std::string to_csv(const SessionSeries& s) {
  std::string out = "session,index,t,p\n";
  char buf[40];
  for (std::size_t j = 0; j < s.sessions.size(); ++j)
    for (std::size_t i = 0; i < s.sessions[j].size(); ++i) {
      const Tick& tick = s.sessions[j][i];
      std::snprintf(buf, sizeof buf, "%.17g", tick.t);
      out += std::to_string(j + 1) + "," + std::to_string(i) + "," + buf + "," +
             std::to_string(tick.p) + "\n";
    }
  return out;
}

}  // namespace iteral::abc
