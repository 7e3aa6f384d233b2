#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iteral/iteration.hpp"

namespace iteral::dynamics {

using Complex = std::complex<double>;

// Orbit of x -> b x (1 - x).
Orbit<double> logistic_orbit(double b, double v, std::uint64_t n);

// Finite surrogate for boundedness of z -> z^2 + c.
struct EscapeParams {
  std::uint32_t max_iter = 1000;
  double bailout = 2.0;
};

void validate(const EscapeParams& p);

// 1-based position in the orbit (z0 is position 1) of the first term whose
// modulus exceeds the bailout, looking at z0 .. z_{max_iter-1}. Empty means
// no escape was seen, i.e. the point is treated as a member.
std::optional<std::uint32_t> escape_time(Complex c, Complex z0, const EscapeParams& p);

struct GridSpec {
  double re_min = -2.0;
  double re_max = 1.0;
  double im_min = -1.5;
  double im_max = 1.5;
  std::uint32_t width = 256;
  std::uint32_t height = 256;
};

void validate(const GridSpec& g);

// Centre of cell (col, row); row 0 is the top edge (im_max).
Complex pixel_center(const GridSpec& g, std::uint32_t col, std::uint32_t row);

struct Mandelbrot {};
struct Julia {
  Complex c;
};
using FractalKind = std::variant<Mandelbrot, Julia>;

// Escape counts in row-major order; 0 marks a member.
struct EscapeImage {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t max_iter = 0;
  std::vector<std::uint32_t> counts;

  std::uint32_t at(std::uint32_t col, std::uint32_t row) const { return counts[row * width + col]; }
};

// Rows are distributed over `threads` workers (0 = hardware concurrency);
// the result is identical to a sequential row-major evaluation.
EscapeImage render_grid(const FractalKind& kind, const GridSpec& g, const EscapeParams& p,
                        unsigned threads = 1);

// Binary P5, maxval 255, gray = count * 255 / max_iter, members 0.
std::string to_pgm(const EscapeImage& img);
// Header "row,col,count".
std::string to_csv(const EscapeImage& img);

struct LorenzParams {
  double sigma = 10.0;
  double r = 28.0;
  double b = 8.0 / 3.0;
  double dt = 0.01;
};

void validate(const LorenzParams& p);

struct LorenzState {
  double x = 0.0;  // intensity of convection
  double y = 0.0;  // temperature difference between currents
  double z = 0.0;  // distortion of the vertical temperature profile

  friend bool operator==(const LorenzState&, const LorenzState&) = default;
};

// Right-hand side of the Lorenz equations.
LorenzState lorenz_rhs(const LorenzState& s, const LorenzParams& p);

// Lorenz's double-approximation step: with g(s) = s + F(s) dt, returns
// (s + g(g(s))) / 2.
LorenzState lorenz_step(const LorenzState& s, const LorenzParams& p);

struct LorenzTrajectory {
  std::vector<LorenzState> states;  // states[0] = s0
  bool truncated = false;           // a non-finite state was reached and dropped
};

LorenzTrajectory lorenz_trajectory(const LorenzState& s0, const LorenzParams& p,
                                   std::uint64_t n);

// Header "tau,X,Y,Z"; tau = index * dt.
std::string trajectory_csv(const LorenzTrajectory& t, const LorenzParams& p);
// Header "n,x".
std::string orbit_csv(const Orbit<double>& o);

// %.17g, enough to round-trip a double.
std::string full_precision(double v);

}  // namespace iteral::dynamics
