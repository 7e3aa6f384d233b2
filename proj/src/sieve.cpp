#include "iteral/sieve.hpp"

#include <algorithm>
#include <stdexcept>

#include "iteral/iteration.hpp"

namespace iteral::sieve {

SubseqName::SubseqName(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_)
    if (c != 'E' && c != 'O')
      throw std::invalid_argument("subsequence names use only the letters E and O, got \"" +
                                  letters_ + "\"");
}

std::string LinearForm::to_string() const {
  std::string s = stride == 1 ? "p" : stride.get_str() + "p";
  if (offset != 0)
    s += " + " + offset.get_str();
  return s;
}

const LinearForm& even_positions() {
  static const LinearForm form{2, 0};
  return form;
}

const LinearForm& odd_positions() {
  static const LinearForm form{2, 1};
  return form;
}

LinearForm iterate_form(const LinearForm& body, const LinearForm& init, std::uint64_t count) {
  return iterate_n([&body](const LinearForm& x) { return body.at(x); }, init, count);
}

LinearForm name_to_form(const SubseqName& name) {
  // The rightmost letter is the first sieve application.
  LinearForm form = LinearForm::identity();
  const std::string& letters = name.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    form = form.at(*it == 'E' ? even_positions() : odd_positions());
  return form;
}

SubseqName class_to_name(const ResidueClass& c) {
  if (const auto* odd = std::get_if<coords::Odd>(&c))
    return SubseqName("E" + std::string(odd->k + 1, 'O'));
  if (const auto* even = std::get_if<coords::Even>(&c))
    return SubseqName("E" + std::string(even->l, 'O') + std::string(even->m + 1, 'E'));
  throw std::invalid_argument("zero belongs to no finite fixed subsequence");
}

LinearForm class_form(const ResidueClass& c) {
  if (const auto* odd = std::get_if<coords::Odd>(&c))
    return {pow2(odd->k + 2), pow2(odd->k + 1) - 1};
  if (const auto* even = std::get_if<coords::Even>(&c))
    return {pow2(even->m + even->l + 2), pow2(even->m + 1) * (pow2(even->l) - 1)};
  throw std::invalid_argument("zero belongs to no finite fixed subsequence");
}

namespace {

// Odd branch: subtract one and halve while the result stays odd. Returns the
// repetition count and the stopping number (even or zero).
std::pair<std::uint64_t, Natural> odd_descent(Natural n) {
  std::uint64_t counter = 0;
  do {
    n -= 1;
    mpz_fdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), 1);
    ++counter;
  } while (is_odd(n));
  return {counter, std::move(n)};
}

}  // namespace

ResidueClass classify(const Natural& n) {
  if (sgn(n) < 0)
    throw std::invalid_argument("classify requires a nonnegative number");
  if (n == 0)
    return coords::Zero{};
  if (is_odd(n)) {
    auto [counter, stop] = odd_descent(n);
    return coords::Odd{counter - 1, stop / 2};
  }
  Natural odd = n;
  std::uint64_t counter_m = 0;
  while (is_even(odd)) {
    mpz_fdiv_q_2exp(odd.get_mpz_t(), odd.get_mpz_t(), 1);
    ++counter_m;
  }
  // An odd part of one (n a power of two) falls out as l = 1, p = 0.
  auto [counter_k, stop] = odd_descent(odd);
  return coords::Even{counter_m - 1, counter_k, stop / 2};
}

Natural value_of(const ResidueClass& c) {
  if (std::holds_alternative<coords::Zero>(c))
    return 0;
  const LinearForm form = class_form(c);
  if (const auto* odd = std::get_if<coords::Odd>(&c))
    return form(odd->p);
  return form(std::get<coords::Even>(c).p);
}

bool equivalent(const Natural& a, const Natural& b) {
  if (sgn(a) <= 0 || sgn(b) <= 0)
    throw std::invalid_argument("equivalence is defined for positive numbers");
  const ResidueClass ca = classify(a);
  const ResidueClass cb = classify(b);
  if (const auto* oa = std::get_if<coords::Odd>(&ca)) {
    const auto* ob = std::get_if<coords::Odd>(&cb);
    return ob && oa->k == ob->k;
  }
  const auto& ea = std::get<coords::Even>(ca);
  const auto* eb = std::get_if<coords::Even>(&cb);
  return eb && ea.m == eb->m && ea.l == eb->l;
}

std::strong_ordering compare(const ResidueClass& a, const ResidueClass& b) {
  // Even < Zero < Odd by group.
  auto group = [](const ResidueClass& c) {
    if (std::holds_alternative<coords::Even>(c)) return 0;
    if (std::holds_alternative<coords::Zero>(c)) return 1;
    return 2;
  };
  if (auto g = group(a) <=> group(b); g != 0)
    return g;
  if (const auto* oa = std::get_if<coords::Odd>(&a)) {
    const auto& ob = std::get<coords::Odd>(b);
    if (auto k = oa->k <=> ob.k; k != 0)
      return k;
    return cmp(oa->p, ob.p) <=> 0;
  }
  if (const auto* ea = std::get_if<coords::Even>(&a)) {
    const auto& eb = std::get<coords::Even>(b);
    if (auto m = eb.m <=> ea->m; m != 0)
      return m;
    if (auto l = eb.l <=> ea->l; l != 0)
      return l;
    return cmp(ea->p, eb.p) <=> 0;
  }
  return std::strong_ordering::equal;
}

std::string render_name(const ResidueClass& c) {
  if (const auto* odd = std::get_if<coords::Odd>(&c))
    return odd->k == 0 ? "EO" : "EO" + std::to_string(odd->k) + "O";
  if (const auto* even = std::get_if<coords::Even>(&c)) {
    std::string s = "EO";
    if (even->l >= 2)
      s += std::to_string(even->l);
    if (even->m >= 1)
      s += "E" + std::to_string(even->m);
    return s + "E";
  }
  throw std::invalid_argument("zero has no finite subsequence name");
}

std::string render_coords(const ResidueClass& c) {
  if (const auto* odd = std::get_if<coords::Odd>(&c))
    return "(k=" + std::to_string(odd->k) + ", p=" + odd->p.get_str() + ")";
  if (const auto* even = std::get_if<coords::Even>(&c))
    return "(m=" + std::to_string(even->m) + ", l=" + std::to_string(even->l) +
           ", p=" + even->p.get_str() + ")";
  throw std::invalid_argument("zero has no coordinates");
}

std::string descriptor(const ResidueClass& c) {
  if (std::holds_alternative<coords::Zero>(c))
    return "ZERO (EE∞E)";
  return render_name(c) + " : " + class_form(c).to_string() + " : " + render_coords(c) + " : " +
         value_of(c).get_str();
}

namespace {

void sieve_step(const std::vector<Natural>& members, const SubseqName& name,
                std::uint64_t depth_left, OracleResult& out) {
  if (members.empty())
    return;
  if (name.is_fixed()) {
    for (const Natural& n : members)
      out.resolved.emplace(n, name);
    return;
  }
  if (depth_left == 0) {
    out.unresolved.insert(out.unresolved.end(), members.begin(), members.end());
    return;
  }
  std::vector<Natural> even_pos;
  std::vector<Natural> odd_pos;
  for (std::size_t i = 0; i < members.size(); ++i)
    (i % 2 == 0 ? even_pos : odd_pos).push_back(members[i]);
  sieve_step(even_pos, name.even_child(), depth_left - 1, out);
  sieve_step(odd_pos, name.odd_child(), depth_left - 1, out);
}

}  // namespace

OracleResult sieve_oracle(const Natural& limit, std::uint64_t depth) {
  if (sgn(limit) < 0)
    throw std::invalid_argument("sieve_oracle limit must be nonnegative");
  if (!limit.fits_ulong_p() || limit.get_ui() > (1ul << 26))
    throw std::invalid_argument("sieve_oracle limit too large for a direct simulation");
  std::vector<Natural> all;
  const unsigned long n = limit.get_ui();
  all.reserve(n + 1);
  for (unsigned long i = 0; i <= n; ++i)
    all.emplace_back(i);
  OracleResult out;
  sieve_step(all, SubseqName::root(), depth, out);
  std::sort(out.unresolved.begin(), out.unresolved.end());
  return out;
}

}  // namespace iteral::sieve
