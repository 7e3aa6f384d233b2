#pragma once

// The binary sieve over N0. Applying the sieve to a sequence sends the
// members at even positions to a child whose name gains a leading 'E' and the
// members at odd positions to a child whose name gains a leading 'O'. Names
// starting with "EO" are fixed: the sieve is never applied to them again.
// Every positive integer ends up in exactly one fixed subsequence, and each
// node's members are an arithmetic progression stride*p + offset in their
// position p.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "iteral/natural.hpp"

namespace iteral::sieve {

class SubseqName {
 public:
  // The root N0 (no letters).
  SubseqName() = default;
  // Throws std::invalid_argument unless `letters` is over {E, O}.
  explicit SubseqName(std::string letters);

  static SubseqName root() { return SubseqName(); }

  bool is_root() const { return letters_.empty(); }
  bool is_fixed() const { return letters_.size() >= 2 && letters_[0] == 'E' && letters_[1] == 'O'; }
  const std::string& letters() const { return letters_; }

  // Children carry the new letter on the left.
  SubseqName even_child() const { return SubseqName('E' + letters_); }
  SubseqName odd_child() const { return SubseqName('O' + letters_); }

  // "N0" for the root.
  std::string to_string() const { return is_root() ? "N0" : letters_; }

  friend bool operator==(const SubseqName&, const SubseqName&) = default;
  friend auto operator<=>(const SubseqName&, const SubseqName&) = default;

 private:
  std::string letters_;
};

// stride * p + offset.
struct LinearForm {
  Natural stride = 1;
  Natural offset = 0;

  static LinearForm identity() { return {1, 0}; }

  Natural operator()(const Natural& p) const { return stride * p + offset; }

  // (*this) evaluated at `inner`: p -> stride*(inner(p)) + offset. This is
  // one iteration of *this started from the initial value `inner`.
  LinearForm at(const LinearForm& inner) const {
    return {stride * inner.stride, stride * inner.offset + offset};
  }

  // "8p + 3", "2p", "p".
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

const LinearForm& even_positions();  // 2p
const LinearForm& odd_positions();   // 2p + 1

// `count` iterations of `body` starting from the form `init`; nesting
// single iterations is not the same thing (see the sieve tests).
LinearForm iterate_form(const LinearForm& body, const LinearForm& init, std::uint64_t count);

namespace coords {
struct Zero {
  friend bool operator==(const Zero&, const Zero&) = default;
};
// 2^(k+2) p + 2^(k+1) - 1
struct Odd {
  std::uint64_t k = 0;
  Natural p = 0;
  friend bool operator==(const Odd&, const Odd&) = default;
};
// 2^(m+l+2) p + 2^(m+1) (2^l - 1), l >= 1
struct Even {
  std::uint64_t m = 0;
  std::uint64_t l = 1;
  Natural p = 0;
  friend bool operator==(const Even&, const Even&) = default;
};
}  // namespace coords

using ResidueClass = std::variant<coords::Zero, coords::Odd, coords::Even>;

LinearForm name_to_form(const SubseqName& name);

// Odd(k) -> E followed by k+1 O's; Even(m, l) -> E, l O's, m+1 E's.
// Zero has no finite name: throws std::invalid_argument.
SubseqName class_to_name(const ResidueClass& c);

// The form of the fixed subsequence holding `c` (Zero rejected).
LinearForm class_form(const ResidueClass& c);

ResidueClass classify(const Natural& n);
Natural value_of(const ResidueClass& c);

// Same fixed subsequence (positions may differ). Requires a, b >= 1.
bool equivalent(const Natural& a, const Natural& b);

// The reordering of N0: even classes (larger m first, then larger l first)
// precede zero, which precedes the odd classes (smaller k first). Members of
// one class are ordered by position p.
std::strong_ordering compare(const ResidueClass& a, const ResidueClass& b);

// Compact name: "EO", "EO2O", "EOE", "EO3E", "EOE1E", "EO2E3E".
std::string render_name(const ResidueClass& c);

// "(k=0, p=2)", "(m=0, l=3, p=0)".
std::string render_coords(const ResidueClass& c);

// "EO : 4p + 1 : (k=0, p=2) : 9"; Zero renders as "ZERO (EE∞E)".
std::string descriptor(const ResidueClass& c);

struct OracleResult {
  std::map<Natural, SubseqName> resolved;
  std::vector<Natural> unresolved;  // ascending
};

// Direct simulation of the sieve on 0..limit, applying it at most `depth`
// times along any branch.
OracleResult sieve_oracle(const Natural& limit, std::uint64_t depth);

}  // namespace iteral::sieve
