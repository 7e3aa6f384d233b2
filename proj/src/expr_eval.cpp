#include <vector>

#include "iteral/expr.hpp"

namespace iteral::expr {

void Env::bind(const std::string& name, Scalar value) { bindings_[name] = std::move(value); }

const Scalar* Env::find(std::string_view name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

const Scalar& Env::lookup(std::string_view name) const {
  if (const Scalar* s = find(name))
    return *s;
  throw EvalError("unbound variable '" + std::string(name) + "'");
}

namespace {

// Innermost binding first, falling back to the caller's environment.
struct Scope {
  const Scope* parent;
  std::string_view name;
  const Scalar* value;
  const Env* env;

  const Scalar& lookup(std::string_view n) const {
    for (const Scope* s = this; s; s = s->parent)
      if (s->value && s->name == n)
        return *s->value;
    return env->lookup(n);
  }
};

void first_unbound(const Expr& e, std::vector<std::string_view>& bound, const Env& env) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Var>) {
          for (auto it = bound.rbegin(); it != bound.rend(); ++it)
            if (*it == x.name)
              return;
          env.lookup(x.name);
        } else if constexpr (std::is_same_v<T, Neg>) {
          first_unbound(x.operand, bound, env);
        } else if constexpr (std::is_same_v<T, Binary>) {
          first_unbound(x.lhs, bound, env);
          first_unbound(x.rhs, bound, env);
        } else if constexpr (std::is_same_v<T, Call>) {
          first_unbound(x.arg, bound, env);
        } else if constexpr (std::is_same_v<T, Iteral>) {
          first_unbound(x.init, bound, env);
          bound.push_back(x.var);
          first_unbound(x.body, bound, env);
          bound.pop_back();
        }
      },
      e.node().v);
}

class Evaluator {
 public:
  explicit Evaluator(const ConvergencePolicy& policy) : policy_(policy) {}

  // Nullopt means evaluation stopped; the reason is in halt().
  std::optional<Scalar> value(const Expr& e, const Scope& scope) {
    return std::visit([&](const auto& x) { return eval_node(x, scope); }, e.node().v);
  }

  IterOutcome<Scalar> run_iteral(const Iteral& it, const Scope& scope) {
    std::optional<Scalar> init = value(it.init, scope);
    if (!init)
      return halt_;
    auto body = [&](const Scalar& x) -> std::optional<Scalar> {
      Scope inner{&scope, it.var, &x, scope.env};
      Evaluator sub(policy_);
      return sub.value(it.body, inner);
    };
    return iterate(body, *init, it.count, policy_);
  }

  const IterOutcome<Scalar>& halt() const { return halt_; }

 private:
  std::optional<Scalar> stop_undefined() {
    halt_ = outcome::DomainExit{0};
    return std::nullopt;
  }

  std::optional<Scalar> eval_node(const Num& n, const Scope&) { return n.value; }

  std::optional<Scalar> eval_node(const Var& v, const Scope& scope) { return scope.lookup(v.name); }

  std::optional<Scalar> eval_node(const Neg& n, const Scope& scope) {
    auto a = value(n.operand, scope);
    if (!a)
      return std::nullopt;
    return negate(*a);
  }

  std::optional<Scalar> eval_node(const Binary& b, const Scope& scope) {
    auto lhs = value(b.lhs, scope);
    if (!lhs)
      return std::nullopt;
    auto rhs = value(b.rhs, scope);
    if (!rhs)
      return std::nullopt;
    std::optional<Scalar> r;
    switch (b.op) {
      case BinaryOp::Add: r = add(*lhs, *rhs); break;
      case BinaryOp::Sub: r = sub(*lhs, *rhs); break;
      case BinaryOp::Mul: r = mul(*lhs, *rhs); break;
      case BinaryOp::Div: r = div(*lhs, *rhs); break;
      case BinaryOp::Pow: r = power(*lhs, *rhs); break;
    }
    if (!r)
      return stop_undefined();
    return r;
  }

  std::optional<Scalar> eval_node(const Call& c, const Scope& scope) {
    auto a = value(c.arg, scope);
    if (!a)
      return std::nullopt;
    auto r = apply_function(c.fn, *a);
    if (!r)
      return stop_undefined();
    return r;
  }

  std::optional<Scalar> eval_node(const Iteral& it, const Scope& scope) {
    IterOutcome<Scalar> o = run_iteral(it, scope);
    if (auto v = value_of(o))
      return v;
    halt_ = std::move(o);
    return std::nullopt;
  }

  ConvergencePolicy policy_;
  IterOutcome<Scalar> halt_ = outcome::DomainExit{0};
};

}  // namespace

IterOutcome<Scalar> eval(const Expr& e, const Env& env, const ConvergencePolicy& policy) {
  std::vector<std::string_view> bound;
  first_unbound(e, bound, env);

  const Scope root{nullptr, {}, nullptr, &env};
  Evaluator ev(policy);
  if (const auto* it = std::get_if<Iteral>(&e.node().v))
    return ev.run_iteral(*it, root);
  if (auto v = ev.value(e, root))
    return outcome::Value<Scalar>{std::move(*v), 0};
  return ev.halt();
}

std::string describe(const IterOutcome<Scalar>& o) {
  using namespace outcome;
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Value<Scalar>>) {
          return x.value.to_string();
        } else if constexpr (std::is_same_v<T, Converged<Scalar>>) {
          return x.value.to_string() + " (converged after " + std::to_string(x.steps) + " steps)";
        } else if constexpr (std::is_same_v<T, Diverged>) {
          return std::string("diverged after ") + std::to_string(x.steps) + " steps (" +
                 (x.reason == DivergeReason::Bailout ? "bailout" : "step limit") + ")";
        } else if constexpr (std::is_same_v<T, Cycle>) {
          return "cycle: entry " + std::to_string(x.entry) + ", period " +
                 std::to_string(x.period) + " (detected after " + std::to_string(x.steps) +
                 " steps)";
        } else {
          return "domain exit after " + std::to_string(x.steps) + " steps";
        }
      },
      o);
}

}  // namespace iteral::expr
