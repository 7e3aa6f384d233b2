#include "iteral/natural.hpp"

#include <stdexcept>

namespace iteral {

namespace {

void check_radix(int radix) {
  if (radix < 2 || radix > 36)
    throw std::invalid_argument("radix must be in 2..36, got " + std::to_string(radix));
}

}  // namespace

Natural parse_natural(std::string_view text, int radix) {
  check_radix(radix);
  if (text.empty())
    throw std::invalid_argument("empty number");
  for (char ch : text) {
    int digit = -1;
    if (ch >= '0' && ch <= '9')
      digit = ch - '0';
    else if (ch >= 'a' && ch <= 'z')
      digit = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'Z')
      digit = ch - 'A' + 10;
    if (digit < 0 || digit >= radix)
      throw std::invalid_argument("invalid digit '" + std::string(1, ch) + "' for radix " +
                                  std::to_string(radix) + " in \"" + std::string(text) + "\"");
  }
  Natural n;
  mpz_set_str(n.get_mpz_t(), std::string(text).c_str(), radix);
  return n;
}

std::string to_radix(const Natural& n, int radix) {
  check_radix(radix);
  return n.get_str(radix);
}

Natural pow2(std::uint64_t e) {
  Natural r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return r;
}

Natural pow3(std::uint64_t e) {
  Natural r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, static_cast<unsigned long>(e));
  return r;
}

std::uint64_t trailing_zeros(const Natural& n) {
  if (sgn(n) <= 0)
    throw std::invalid_argument("trailing_zeros requires a positive number");
  return mpz_scan1(n.get_mpz_t(), 0);
}

}  // namespace iteral
