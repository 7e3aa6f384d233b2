#include "iteral/collatz.hpp"

#include <algorithm>
#include <stdexcept>

namespace iteral::collatz {

using sieve::ResidueClass;
namespace coords = sieve::coords;

const char* op_label(StepOp op) {
  switch (op) {
    case StepOp::In: return "IN";
    case StepOp::ThreeX: return "3X";
    case StepOp::D2: return "D2";
  }
  return "??";
}

std::optional<Step> step(const Natural& n) {
  if (sgn(n) <= 0)
    throw std::invalid_argument("the Collatz step is defined for positive numbers");
  if (n == 1)
    return std::nullopt;
  if (is_even(n))
    return Step{Natural(n / 2), StepOp::D2};
  return Step{Natural((3 * n + 1) / 2), StepOp::ThreeX};
}

ResidueClass odd_transition(const coords::Odd& c) {
  if (c.k >= 1)
    return coords::Odd{c.k - 1, 3 * c.p + 1};
  return sieve::classify(6 * c.p + 2);
}

Natural odd_run_endpoint(const coords::Odd& c) { return pow3(c.k + 1) * (2 * c.p + 1) - 1; }

coords::Odd even_strip(const coords::Even& c) { return coords::Odd{c.l - 1, c.p}; }

std::pair<Natural, std::uint64_t> odd2_decompose(const Natural& n) {
  const std::uint64_t e = trailing_zeros(n);
  Natural odd;
  mpz_fdiv_q_2exp(odd.get_mpz_t(), n.get_mpz_t(), e);
  return {std::move(odd), e};
}

namespace {

TraceLine make_line(std::uint64_t index, const Natural& value, StepOp op, int radix) {
  ResidueClass cls = sieve::classify(value);
  Natural recomputed = sieve::value_of(cls);
  return TraceLine{index, value, op, to_radix(value, radix), std::move(cls), std::move(recomputed)};
}

}  // namespace

Trace trace(const Natural& n, const TraceOptions& options) {
  if (sgn(n) <= 0)
    throw std::invalid_argument("oneness requires a positive integer");
  if (options.radix < 2 || options.radix > 36)
    throw std::invalid_argument("radix must be in 2..36, got " + std::to_string(options.radix));

  Trace t;
  if (options.cap31 && n > kCap31) {
    t.status = TraceStatus::CapExceeded;
    return t;
  }
  t.lines.push_back(make_line(0, n, StepOp::In, options.radix));
  Natural x = n;
  for (std::uint64_t i = 1;; ++i) {
    auto next = step(x);
    if (!next)
      return t;
    if (i > options.max_steps) {
      t.status = TraceStatus::Unresolved;
      return t;
    }
    if (options.cap31 && next->value > kCap31) {
      t.status = TraceStatus::CapExceeded;
      return t;
    }
    x = next->value;
    t.lines.push_back(make_line(i, x, next->op, options.radix));
  }
}

std::string render(const Trace& t, bool exact) {
  std::size_t w_step = 0;
  std::size_t w_value = 0;
  std::size_t w_repr = 0;
  std::vector<std::string> values;
  values.reserve(t.lines.size());
  for (const TraceLine& line : t.lines) {
    values.push_back(line.value.get_str());
    w_step = std::max(w_step, std::to_string(line.step).size());
    w_value = std::max(w_value, values.back().size());
    w_repr = std::max(w_repr, line.radix_repr.size());
  }
  auto pad = [exact](const std::string& s, std::size_t width) {
    return exact && s.size() < width ? std::string(width - s.size(), ' ') + s : s;
  };

  std::string out;
  for (std::size_t i = 0; i < t.lines.size(); ++i) {
    const TraceLine& line = t.lines[i];
    out += pad(std::to_string(line.step), w_step);
    out += ' ';
    out += pad(values[i], w_value);
    out += ' ';
    out += op_label(line.op);
    out += ' ';
    out += pad(line.radix_repr, w_repr + 1);
    out += ' ';
    out += sieve::render_name(line.cls) + " : " + sieve::class_form(line.cls).to_string() + " : " +
           sieve::render_coords(line.cls) + " : " + line.recomputed.get_str();
    out += '\n';
  }
  if (t.status == TraceStatus::Unresolved)
    out += "UNRESOLVED after " + std::to_string(t.lines.size() - 1) + " steps\n";
  else if (t.status == TraceStatus::CapExceeded)
    out += "OVERFLOW: value exceeds 2147483647\n";
  return out;
}

}  // namespace iteral::collatz
