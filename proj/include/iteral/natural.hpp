#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace iteral {

// Arbitrary-precision nonnegative integer. Every sieve and Collatz quantity
// is a Natural; negativity is rejected at the parsing boundary.
using Natural = mpz_class;

Natural parse_natural(std::string_view text, int radix = 10);

// Digits 0-9 then lowercase a-z; radix must be in 2..36.
std::string to_radix(const Natural& n, int radix);

Natural pow2(std::uint64_t e);
Natural pow3(std::uint64_t e);

// Number of trailing zero bits; n must be positive.
std::uint64_t trailing_zeros(const Natural& n);

inline bool is_odd(const Natural& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }
inline bool is_even(const Natural& n) { return mpz_even_p(n.get_mpz_t()) != 0; }

}  // namespace iteral
