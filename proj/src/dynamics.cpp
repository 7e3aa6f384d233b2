#include "iteral/dynamics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

namespace iteral::dynamics {

Orbit<double> logistic_orbit(double b, double v, std::uint64_t n) {
  return splinter([b](double x) { return b * x * (1.0 - x); }, v, IterCount::finite(n));
}

void validate(const EscapeParams& p) {
  if (p.max_iter < 1)
    throw std::invalid_argument("max_iter must be at least 1");
  if (!(p.bailout >= 2.0) || !std::isfinite(p.bailout))
    throw std::invalid_argument("bailout must be a finite number >= 2");
}

std::optional<std::uint32_t> escape_time(Complex c, Complex z0, const EscapeParams& p) {
  const double limit = p.bailout * p.bailout;
  Complex z = z0;
  for (std::uint32_t t = 0; t < p.max_iter; ++t) {
    if (std::norm(z) > limit)
      return t + 1;
    z = z * z + c;
  }
  return std::nullopt;
}

void validate(const GridSpec& g) {
  if (!(g.re_min < g.re_max) || !(g.im_min < g.im_max))
    throw std::invalid_argument("grid bounds must satisfy re_min < re_max and im_min < im_max");
  if (g.width < 1 || g.height < 1)
    throw std::invalid_argument("grid size must be positive");
}

Complex pixel_center(const GridSpec& g, std::uint32_t col, std::uint32_t row) {
  const double dx = (g.re_max - g.re_min) / g.width;
  const double dy = (g.im_max - g.im_min) / g.height;
  return {g.re_min + (col + 0.5) * dx, g.im_max - (row + 0.5) * dy};
}

EscapeImage render_grid(const FractalKind& kind, const GridSpec& g, const EscapeParams& p,
                        unsigned threads) {
  validate(g);
  validate(p);
  EscapeImage img{g.width, g.height, p.max_iter,
                  std::vector<std::uint32_t>(std::size_t{g.width} * g.height, 0)};

  auto render_row = [&](std::uint32_t row) {
    for (std::uint32_t col = 0; col < g.width; ++col) {
      const Complex point = pixel_center(g, col, row);
      std::optional<std::uint32_t> t;
      if (const auto* julia = std::get_if<Julia>(&kind))
        t = escape_time(julia->c, point, p);
      else
        t = escape_time(point, Complex(0.0, 0.0), p);
      img.counts[std::size_t{row} * g.width + col] = t.value_or(0);
    }
  };

  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, g.height);
  if (threads <= 1) {
    for (std::uint32_t row = 0; row < g.height; ++row)
      render_row(row);
    return img;
  }
  std::atomic<std::uint32_t> next_row{0};
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < threads; ++w)
    workers.emplace_back([&] {
      for (std::uint32_t row = next_row++; row < g.height; row = next_row++)
        render_row(row);
    });
  workers.clear();
  return img;
}

std::string to_pgm(const EscapeImage& img) {
  std::string out = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) +
                    "\n255\n";
  out.reserve(out.size() + img.counts.size());
  for (std::uint32_t count : img.counts) {
    const std::uint64_t gray = std::uint64_t{count} * 255 / img.max_iter;
    out.push_back(static_cast<char>(static_cast<unsigned char>(gray)));
  }
  return out;
}

std::string to_csv(const EscapeImage& img) {
  std::string out = "row,col,count\n";
  for (std::uint32_t row = 0; row < img.height; ++row)
    for (std::uint32_t col = 0; col < img.width; ++col)
      out += std::to_string(row) + "," + std::to_string(col) + "," +
             std::to_string(img.at(col, row)) + "\n";
  return out;
}

void validate(const LorenzParams& p) {
  for (double v : {p.sigma, p.r, p.b, p.dt})
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument("Lorenz parameters sigma, r, b and dt must be positive");
}

LorenzState lorenz_rhs(const LorenzState& s, const LorenzParams& p) {
  return {-p.sigma * s.x + p.sigma * s.y, -s.x * s.z + p.r * s.x - s.y, s.x * s.y - p.b * s.z};
}

LorenzState lorenz_step(const LorenzState& s, const LorenzParams& p) {
  auto g = [&p](const LorenzState& q) {
    const LorenzState f = lorenz_rhs(q, p);
    return LorenzState{q.x + f.x * p.dt, q.y + f.y * p.dt, q.z + f.z * p.dt};
  };
  // Two inner iterations, then the average with the starting point.
  const LorenzState gg = iterate_n(g, s, 2);
  return {0.5 * (s.x + gg.x), 0.5 * (s.y + gg.y), 0.5 * (s.z + gg.z)};
}

LorenzTrajectory lorenz_trajectory(const LorenzState& s0, const LorenzParams& p,
                                   std::uint64_t n) {
  validate(p);
  LorenzTrajectory t;
  t.states.reserve(n + 1);
  t.states.push_back(s0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const LorenzState next = lorenz_step(t.states.back(), p);
    if (!std::isfinite(next.x) || !std::isfinite(next.y) || !std::isfinite(next.z)) {
      t.truncated = true;
      break;
    }
    t.states.push_back(next);
  }
  return t;
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const LorenzTrajectory& t, const LorenzParams& p) {
  std::string out = "tau,X,Y,Z\n";
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    const LorenzState& s = t.states[i];
    out += full_precision(static_cast<double>(i) * p.dt) + "," + full_precision(s.x) + "," +
           full_precision(s.y) + "," + full_precision(s.z) + "\n";
  }
  return out;
}

std::string orbit_csv(const Orbit<double>& o) {
  std::string out = "n,x\n";
  for (std::size_t i = 0; i < o.values.size(); ++i)
    out += std::to_string(i) + "," + full_precision(o.values[i]) + "\n";
  return out;
}

}  // namespace iteral::dynamics
