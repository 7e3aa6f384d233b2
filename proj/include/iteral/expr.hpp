#pragma once

// Iteral expression language.
//
//   I[x=v, n=k](body)     apply body (as a function of x) k times to v
//   I[x=v, n=inf](body)   iterate until convergence, divergence or a cycle
//
// The full grammar is in docs/grammar.ebnf.

#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "iteral/iteration.hpp"
#include "iteral/scalar.hpp"

namespace iteral::expr {

struct Node;

// Immutable, cheaply copyable handle to an AST node.
class Expr {
 public:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const Node& node() const { return *node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> node_;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct Num {
  Scalar value;
};
struct Var {
  std::string name;
};
struct Neg {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct Call {
  Function fn;
  Expr arg;
};
struct Iteral {
  std::string var;
  Expr init;
  IterCount count;
  Expr body;
};

struct Node {
  std::variant<Num, Var, Neg, Binary, Call, Iteral> v;
};

Expr make_num(Scalar value);
Expr make_var(std::string name);
Expr make_neg(Expr operand);
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs);
Expr make_call(Function fn, Expr arg);
Expr make_iteral(std::string var, Expr init, IterCount count, Expr body);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  // Zero-based byte offset into the source.
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Expr parse(std::string_view src);

// Canonical text; parse(format(e)) == e for every parser-produced AST.
std::string format(const Expr& e);

// Display-only rendering with the И glyph, e.g. "И_{x=2}^{2}(x^2)".
std::string format_unicode(const Expr& e);

bool is_reserved_name(std::string_view name);
std::string_view function_name(Function fn);

class Env {
 public:
  void bind(const std::string& name, Scalar value);
  // Throws EvalError for unbound names.
  const Scalar& lookup(std::string_view name) const;
  const Scalar* find(std::string_view name) const;

 private:
  std::map<std::string, Scalar, std::less<>> bindings_;
};

// Unbound variables are reported (EvalError) before any evaluation starts,
// naming the first one in source order. Undefined arithmetic inside an
// iteral body ends that iteration with DomainExit; outside any iteral it
// yields DomainExit{0}.
IterOutcome<Scalar> eval(const Expr& e, const Env& env, const ConvergencePolicy& policy = {});

// Human-readable outcome, e.g. "16" or "0.6180339887496482 (converged after 29 steps)".
std::string describe(const IterOutcome<Scalar>& o);

}  // namespace iteral::expr
