#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "iteral/iteration.hpp"
#include "iteral/natural.hpp"

namespace iteral {

// Numeric tower used by the expression evaluator. Integer arithmetic stays
// exact under + - * and nonnegative integer powers; division and the
// transcendental functions promote to Real, and anything touching the
// imaginary unit (or a real result that has none) promotes to Complex.
class Scalar {
 public:
  using Integer = mpz_class;
  using Real = double;
  using Complex = std::complex<double>;

  Scalar() : v_(Integer(0)) {}
  Scalar(Integer i) : v_(std::move(i)) {}
  Scalar(long i) : v_(Integer(i)) {}
  Scalar(int i) : v_(Integer(i)) {}
  Scalar(Real r) : v_(r) {}
  Scalar(Complex c) : v_(c) {}

  bool is_integer() const { return std::holds_alternative<Integer>(v_); }
  bool is_real() const { return std::holds_alternative<Real>(v_); }
  bool is_complex() const { return std::holds_alternative<Complex>(v_); }

  const Integer& integer() const { return std::get<Integer>(v_); }
  Real real() const { return std::get<Real>(v_); }
  const Complex& complex() const { return std::get<Complex>(v_); }

  // Lossy widening used for mixed arithmetic.
  Real to_real() const;
  Complex to_complex() const;

  double magnitude() const;
  bool is_zero() const;

  // Same kind and same value. Integer 2 and Real 2.0 are different scalars.
  friend bool operator==(const Scalar& a, const Scalar& b);

  // Display text: integers in decimal, reals via format_real, complex values
  // as "a+bi".
  std::string to_string() const;

 private:
  std::variant<Integer, Real, Complex> v_;
};

// Arithmetic returns nullopt where the operation is undefined (division by
// zero); the evaluator reports that as a domain exit.
std::optional<Scalar> add(const Scalar& a, const Scalar& b);
std::optional<Scalar> sub(const Scalar& a, const Scalar& b);
std::optional<Scalar> mul(const Scalar& a, const Scalar& b);
std::optional<Scalar> div(const Scalar& a, const Scalar& b);
std::optional<Scalar> power(const Scalar& base, const Scalar& exponent);
Scalar negate(const Scalar& a);

enum class Function { Sin, Cos, Exp, Abs, Sqrt };
std::optional<Scalar> apply_function(Function fn, const Scalar& a);

// Shortest text that parses back to exactly `r`, always carrying a '.' or an
// exponent so it reads as a real ("3.0", "1e+300").
std::string format_real(double r);

template <>
struct OrbitTraits<Scalar> {
  static double distance(const Scalar& a, const Scalar& b);
  static double magnitude(const Scalar& a) { return a.magnitude(); }
  static bool exact(const Scalar& a) { return a.is_integer(); }
  static bool same(const Scalar& a, const Scalar& b) { return a == b; }
};

}  // namespace iteral
