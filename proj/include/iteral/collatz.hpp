#pragma once

// (3x+1)/2 and x/2 dynamics expressed in residue-class coordinates, and the
// "oneness" trace table.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iteral/natural.hpp"
#include "iteral/sieve.hpp"

namespace iteral::collatz {

enum class StepOp { In, ThreeX, D2 };

// "IN", "3X", "D2".
const char* op_label(StepOp op);

struct Step {
  Natural value;
  StepOp op;
};

// Odd n > 1 -> ((3n+1)/2, ThreeX); even n -> (n/2, D2); n = 1 is terminal
// (nullopt). Throws std::invalid_argument for n = 0.
std::optional<Step> step(const Natural& n);

// Odd(k, p) -> Odd(k-1, 3p+1) for k >= 1, and classify(6p+2) for k = 0.
sieve::ResidueClass odd_transition(const sieve::coords::Odd& c);

// The even value 3^(k+1) (2p+1) - 1 reached after k+1 ThreeX steps.
Natural odd_run_endpoint(const sieve::coords::Odd& c);

// The odd number left after m+1 halvings: Odd(l-1, p).
sieve::coords::Odd even_strip(const sieve::coords::Even& c);

// n = odd_part * 2^exponent. Throws std::invalid_argument for n = 0.
std::pair<Natural, std::uint64_t> odd2_decompose(const Natural& n);

struct TraceLine {
  std::uint64_t step = 0;
  Natural value;
  StepOp op = StepOp::In;
  std::string radix_repr;
  sieve::ResidueClass cls;
  Natural recomputed;
};

enum class TraceStatus {
  ReachedOne,
  Unresolved,   // step guard exhausted before reaching 1
  CapExceeded,  // a value exceeded 2^31 - 1 with the cap enabled
};

struct TraceOptions {
  int radix = 10;
  std::uint64_t max_steps = 1'000'000;
  // Reject values above 2^31 - 1, as the original 32-bit tool did.
  bool cap31 = false;
};

struct Trace {
  std::vector<TraceLine> lines;
  TraceStatus status = TraceStatus::ReachedOne;
};

inline constexpr std::uint64_t kCap31 = 2147483647;

// Throws std::invalid_argument for n = 0 or a radix outside 2..36.
Trace trace(const Natural& n, const TraceOptions& options = {});

// One whitespace-separated line per TraceLine:
//   <step> <value> <op> <repr> <NAME> : <formula> : (<coords>) : <value>
// With `exact`, the step, value and repr columns are right-aligned to the
// widest entry (repr gets one extra column), reproducing the original layout.
// Unresolved and capped traces end with a marker line.
std::string render(const Trace& t, bool exact = false);

}  // namespace iteral::collatz
