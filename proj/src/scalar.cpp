#include "iteral/scalar.hpp"

#include <charconv>
#include <climits>
#include <cmath>
#include <system_error>

namespace iteral {

namespace {

// Exponentiation results wider than this fall back to floating point.
constexpr std::size_t kMaxExactPowerBits = std::size_t{1} << 24;

int rank(const Scalar& s) {
  if (s.is_integer())
    return 0;
  return s.is_real() ? 1 : 2;
}

double integer_to_double(const mpz_class& i) {
  if (mpz_sizeinbase(i.get_mpz_t(), 2) > 1023)
    return sgn(i) < 0 ? -HUGE_VAL : HUGE_VAL;
  return i.get_d();
}

template <class IntOp, class RealOp, class ComplexOp>
Scalar promote(const Scalar& a, const Scalar& b, IntOp int_op, RealOp real_op,
               ComplexOp complex_op) {
  const int r = std::max(rank(a), rank(b));
  if (r == 0)
    return Scalar(int_op(a.integer(), b.integer()));
  if (r == 1)
    return Scalar(real_op(a.to_real(), b.to_real()));
  return Scalar(complex_op(a.to_complex(), b.to_complex()));
}

bool is_integral_real(double x) { return std::isfinite(x) && std::floor(x) == x; }

// Square-and-multiply keeps i^2 == -1 exactly.
Scalar::Complex complex_int_power(Scalar::Complex z, long e) {
  const bool invert = e < 0;
  unsigned long n = invert ? 0ul - static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Scalar::Complex r(1.0, 0.0);
  while (n) {
    if (n & 1u)
      r *= z;
    z *= z;
    n >>= 1;
  }
  return invert ? Scalar::Complex(1.0, 0.0) / r : r;
}

}  // namespace

Scalar::Real Scalar::to_real() const {
  if (is_integer())
    return integer_to_double(integer());
  if (is_real())
    return real();
  return complex().real();
}

Scalar::Complex Scalar::to_complex() const {
  if (is_complex())
    return complex();
  return Complex(to_real(), 0.0);
}

double Scalar::magnitude() const {
  if (is_integer())
    return std::abs(integer_to_double(integer()));
  if (is_real())
    return std::abs(real());
  return std::abs(complex());
}

bool Scalar::is_zero() const {
  if (is_integer())
    return sgn(integer()) == 0;
  if (is_real())
    return real() == 0.0;
  return complex() == Complex(0.0, 0.0);
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.v_.index() != b.v_.index())
    return false;
  if (a.is_integer())
    return a.integer() == b.integer();
  if (a.is_real())
    return a.real() == b.real();
  return a.complex() == b.complex();
}

namespace {

std::string shortest(double r) {
  if (std::isnan(r))
    return "nan";
  if (std::isinf(r))
    return r < 0 ? "-inf" : "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, r);
  if (ec != std::errc())
    return "nan";
  return std::string(buf, end);
}

}  // namespace

std::string format_real(double r) {
  std::string s = shortest(r);
  if (s.find_first_of(".en") == std::string::npos)
    s += ".0";
  return s;
}

std::string Scalar::to_string() const {
  if (is_integer())
    return integer().get_str();
  if (is_real())
    return format_real(real());
  const Complex& c = complex();
  const bool negative_imag = std::signbit(c.imag()) && !std::isnan(c.imag());
  return shortest(c.real()) + (negative_imag ? "-" : "+") + shortest(std::abs(c.imag())) +
         "i";
}

std::optional<Scalar> add(const Scalar& a, const Scalar& b) {
  return promote(
      a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x + y); },
      [](double x, double y) { return x + y; },
      [](const Scalar::Complex& x, const Scalar::Complex& y) { return x + y; });
}

std::optional<Scalar> sub(const Scalar& a, const Scalar& b) {
  return promote(
      a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x - y); },
      [](double x, double y) { return x - y; },
      [](const Scalar::Complex& x, const Scalar::Complex& y) { return x - y; });
}

std::optional<Scalar> mul(const Scalar& a, const Scalar& b) {
  return promote(
      a, b, [](const mpz_class& x, const mpz_class& y) { return mpz_class(x * y); },
      [](double x, double y) { return x * y; },
      [](const Scalar::Complex& x, const Scalar::Complex& y) { return x * y; });
}

std::optional<Scalar> div(const Scalar& a, const Scalar& b) {
  if (b.is_zero())
    return std::nullopt;
  if (a.is_complex() || b.is_complex())
    return Scalar(a.to_complex() / b.to_complex());
  return Scalar(a.to_real() / b.to_real());
}

std::optional<Scalar> power(const Scalar& base, const Scalar& exponent) {
  if (base.is_integer() && exponent.is_integer() && sgn(exponent.integer()) >= 0 &&
      exponent.integer().fits_ulong_p()) {
    const unsigned long e = exponent.integer().get_ui();
    const std::size_t base_bits = mpz_sizeinbase(base.integer().get_mpz_t(), 2);
    if (e == 0 || base_bits <= 1 || (kMaxExactPowerBits / e) >= base_bits) {
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), base.integer().get_mpz_t(), e);
      return Scalar(r);
    }
  }
  if (base.is_zero()) {
    const double re = exponent.to_complex().real();
    if (re < 0.0)
      return std::nullopt;
  }
  if (!base.is_complex() && !exponent.is_complex()) {
    const double b = base.to_real();
    const double e = exponent.to_real();
    if (b >= 0.0 || is_integral_real(e))
      return Scalar(std::pow(b, e));
  }
  if (exponent.is_integer() && exponent.integer().fits_slong_p())
    return Scalar(complex_int_power(base.to_complex(), exponent.integer().get_si()));
  return Scalar(std::pow(base.to_complex(), exponent.to_complex()));
}

Scalar negate(const Scalar& a) {
  if (a.is_integer())
    return Scalar(mpz_class(-a.integer()));
  if (a.is_real())
    return Scalar(-a.real());
  return Scalar(-a.complex());
}

std::optional<Scalar> apply_function(Function fn, const Scalar& a) {
  if (a.is_complex()) {
    const Scalar::Complex& z = a.complex();
    switch (fn) {
      case Function::Sin: return Scalar(std::sin(z));
      case Function::Cos: return Scalar(std::cos(z));
      case Function::Exp: return Scalar(std::exp(z));
      case Function::Abs: return Scalar(std::abs(z));
      case Function::Sqrt: return Scalar(std::sqrt(z));
    }
  }
  if (fn == Function::Abs && a.is_integer())
    return Scalar(mpz_class(abs(a.integer())));
  const double x = a.to_real();
  switch (fn) {
    case Function::Sin: return Scalar(std::sin(x));
    case Function::Cos: return Scalar(std::cos(x));
    case Function::Exp: return Scalar(std::exp(x));
    case Function::Abs: return Scalar(std::abs(x));
    case Function::Sqrt:
      if (x < 0.0)
        return Scalar(std::sqrt(Scalar::Complex(x, 0.0)));
      return Scalar(std::sqrt(x));
  }
  return std::nullopt;
}

double OrbitTraits<Scalar>::distance(const Scalar& a, const Scalar& b) {
  if (a.is_integer() && b.is_integer()) {
    mpz_class d = a.integer() - b.integer();
    return std::abs(integer_to_double(d));
  }
  return std::abs(a.to_complex() - b.to_complex());
}

}  // namespace iteral
