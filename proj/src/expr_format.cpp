#include <sstream>

#include "iteral/expr.hpp"

namespace iteral::expr {

Expr make_num(Scalar value) { return Expr(std::make_shared<const Node>(Node{Num{std::move(value)}})); }
Expr make_var(std::string name) { return Expr(std::make_shared<const Node>(Node{Var{std::move(name)}})); }
Expr make_neg(Expr operand) { return Expr(std::make_shared<const Node>(Node{Neg{std::move(operand)}})); }
Expr make_binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}}));
}
Expr make_call(Function fn, Expr arg) {
  return Expr(std::make_shared<const Node>(Node{Call{fn, std::move(arg)}}));
}
Expr make_iteral(std::string var, Expr init, IterCount count, Expr body) {
  return Expr(std::make_shared<const Node>(
      Node{Iteral{std::move(var), std::move(init), count, std::move(body)}}));
}

namespace {

bool node_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index())
    return false;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Num>)
          return x.value == y.value;
        else if constexpr (std::is_same_v<T, Var>)
          return x.name == y.name;
        else if constexpr (std::is_same_v<T, Neg>)
          return x.operand == y.operand;
        else if constexpr (std::is_same_v<T, Binary>)
          return x.op == y.op && x.lhs == y.lhs && x.rhs == y.rhs;
        else if constexpr (std::is_same_v<T, Call>)
          return x.fn == y.fn && x.arg == y.arg;
        else
          return x.var == y.var && x.count == y.count && x.init == y.init && x.body == y.body;
      },
      a.v);
}

// Binding strength: sums < products < unary minus < powers < atoms.
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

bool is_plain_literal(const Scalar& s) {
  if (s.is_integer())
    return sgn(s.integer()) >= 0;
  if (s.is_real())
    return !std::signbit(s.real()) && std::isfinite(s.real());
  return s.complex() == Scalar::Complex(0.0, 1.0);
}

int precedence(const Expr& e) {
  const Node& n = e.node();
  if (const auto* num = std::get_if<Num>(&n.v))
    return is_plain_literal(num->value) || num->value.is_complex() ? kAtom : kUnary;
  if (std::holds_alternative<Neg>(n.v))
    return kUnary;
  if (const auto* bin = std::get_if<Binary>(&n.v)) {
    switch (bin->op) {
      case BinaryOp::Add:
      case BinaryOp::Sub: return kSum;
      case BinaryOp::Mul:
      case BinaryOp::Div: return kProduct;
      case BinaryOp::Pow: return kPower;
    }
  }
  return kAtom;
}

std::string real_literal(double r) { return format_real(r); }

class Formatter {
 public:
  explicit Formatter(bool unicode) : unicode_(unicode) {}

  void emit(const Expr& e) {
    std::visit([this](const auto& x) { emit_node(x); }, e.node().v);
  }

  std::string str() const { return out_.str(); }

 private:
  void wrap(const Expr& e, bool parens) {
    if (parens)
      out_ << '(';
    emit(e);
    if (parens)
      out_ << ')';
  }

  void emit_node(const Num& n) {
    const Scalar& s = n.value;
    if (s.is_integer()) {
      out_ << s.integer().get_str();
    } else if (s.is_real()) {
      out_ << real_literal(s.real());
    } else if (s.complex() == Scalar::Complex(0.0, 1.0)) {
      out_ << 'i';
    } else {
      const auto& c = s.complex();
      out_ << '(' << real_literal(c.real()) << " + " << real_literal(c.imag()) << "*i)";
    }
  }

  void emit_node(const Var& v) { out_ << v.name; }

  void emit_node(const Neg& n) {
    out_ << '-';
    wrap(n.operand, precedence(n.operand) < kUnary);
  }

  void emit_node(const Binary& b) {
    switch (b.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
        wrap(b.lhs, precedence(b.lhs) < kSum);
        out_ << (b.op == BinaryOp::Add ? " + " : " - ");
        wrap(b.rhs, precedence(b.rhs) <= kSum);
        break;
      case BinaryOp::Mul:
      case BinaryOp::Div:
        wrap(b.lhs, precedence(b.lhs) < kProduct);
        out_ << (b.op == BinaryOp::Mul ? "*" : "/");
        wrap(b.rhs, precedence(b.rhs) <= kProduct);
        break;
      case BinaryOp::Pow:
        wrap(b.lhs, precedence(b.lhs) < kAtom);
        out_ << '^';
        wrap(b.rhs, precedence(b.rhs) < kUnary);
        break;
    }
  }

  void emit_node(const Call& c) {
    out_ << function_name(c.fn) << '(';
    emit(c.arg);
    out_ << ')';
  }

  void emit_node(const Iteral& it) {
    const std::string count =
        it.count.is_unbounded() ? (unicode_ ? "∞" : "inf") : std::to_string(it.count.count());
    if (unicode_) {
      out_ << "И_{" << it.var << '=';
      emit(it.init);
      out_ << "}^{" << count << "}(";
    } else {
      out_ << "I[" << it.var << '=';
      emit(it.init);
      out_ << ", n=" << count << "](";
    }
    emit(it.body);
    out_ << ')';
  }

  bool unicode_;
  std::ostringstream out_;
};

}  // namespace

bool operator==(const Expr& a, const Expr& b) {
  return a.node_ == b.node_ || node_equal(*a.node_, *b.node_);
}

std::string_view function_name(Function fn) {
  switch (fn) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Abs: return "abs";
    case Function::Sqrt: return "sqrt";
  }
  return "?";
}

std::string format(const Expr& e) {
  Formatter f(false);
  f.emit(e);
  return f.str();
}

std::string format_unicode(const Expr& e) {
  Formatter f(true);
  f.emit(e);
  return f.str();
}

}  // namespace iteral::expr
