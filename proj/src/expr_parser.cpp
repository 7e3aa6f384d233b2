#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

#include "iteral/expr.hpp"

namespace iteral::expr {

namespace {

constexpr int kMaxDepth = 512;

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBracket,
                 RBracket, Equals, Comma, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
  bool has_fraction = false;  // Number with '.' or an exponent
};

std::string describe_token(const Token& t) {
  if (t.kind == Tok::End)
    return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= src_.size())
      return {Tok::End, {}, start};
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)))
      return number(start);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return {Tok::Ident, src_.substr(start, pos_ - start), start};
    }
    ++pos_;
    const std::string_view text = src_.substr(start, 1);
    switch (c) {
      case '+': return {Tok::Plus, text, start};
      case '-': return {Tok::Minus, text, start};
      case '*': return {Tok::Star, text, start};
      case '/': return {Tok::Slash, text, start};
      case '^': return {Tok::Caret, text, start};
      case '(': return {Tok::LParen, text, start};
      case ')': return {Tok::RParen, text, start};
      case '[': return {Tok::LBracket, text, start};
      case ']': return {Tok::RBracket, text, start};
      case '=': return {Tok::Equals, text, start};
      case ',': return {Tok::Comma, text, start};
      default: break;
    }
    throw ParseError(start, "unexpected character '" + std::string(text) + "'");
  }

 private:
  bool digit_at(std::size_t i) const {
    return i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]));
  }

  Token number(std::size_t start) {
    bool fraction = false;
    while (digit_at(pos_))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.' && digit_at(pos_ + 1)) {
      fraction = true;
      ++pos_;
      while (digit_at(pos_))
        ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-'))
        ++look;
      if (digit_at(look)) {
        fraction = true;
        pos_ = look;
        while (digit_at(pos_))
          ++pos_;
      }
    }
    return {Tok::Number, src_.substr(start, pos_ - start), start, fraction};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  Expr parse_all() {
    Expr e = parse_expr();
    if (tok_.kind != Tok::End)
      throw ParseError(tok_.offset, "expected end of input, found " + describe_token(tok_));
    return e;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind)
      throw ParseError(tok_.offset,
                       std::string("expected ") + what + ", found " + describe_token(tok_));
    Token t = tok_;
    advance();
    return t;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : p(p) {
      if (++p.depth_ > kMaxDepth)
        throw ParseError(p.tok_.offset, "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
    Parser& p;
  };

  Expr parse_expr() {
    DepthGuard guard(*this);
    Expr lhs = parse_term();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      const BinaryOp op = tok_.kind == Tok::Plus ? BinaryOp::Add : BinaryOp::Sub;
      advance();
      lhs = make_binary(op, lhs, parse_term());
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    while (tok_.kind == Tok::Star || tok_.kind == Tok::Slash) {
      const BinaryOp op = tok_.kind == Tok::Star ? BinaryOp::Mul : BinaryOp::Div;
      advance();
      lhs = make_binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    DepthGuard guard(*this);
    if (tok_.kind == Tok::Minus) {
      advance();
      return make_neg(parse_unary());
    }
    return parse_power();
  }

  // '^' binds tighter than unary minus and is right associative; its
  // exponent may carry its own sign ("2^-1").
  Expr parse_power() {
    Expr base = parse_primary();
    if (tok_.kind == Tok::Caret) {
      advance();
      return make_binary(BinaryOp::Pow, base, parse_unary());
    }
    return base;
  }

  Expr parse_primary() {
    switch (tok_.kind) {
      case Tok::Number: return parse_number();
      case Tok::LParen: {
        advance();
        Expr inner = parse_expr();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident: return parse_identifier();
      default: break;
    }
    throw ParseError(tok_.offset, "expected a number, variable, function or iteral, found " +
                                      describe_token(tok_));
  }

  Expr parse_number() {
    const Token t = tok_;
    advance();
    if (!t.has_fraction)
      return make_num(Scalar(mpz_class(std::string(t.text), 10)));
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(value))
      throw ParseError(t.offset, "number out of range: " + std::string(t.text));
    return make_num(Scalar(value));
  }

  static std::optional<Function> lookup_function(std::string_view name) {
    if (name == "sin") return Function::Sin;
    if (name == "cos") return Function::Cos;
    if (name == "exp") return Function::Exp;
    if (name == "abs") return Function::Abs;
    if (name == "sqrt") return Function::Sqrt;
    return std::nullopt;
  }

  Expr parse_identifier() {
    const Token t = tok_;
    advance();
    if (t.text == "I" && tok_.kind == Tok::LBracket)
      return parse_iteral();
    if (t.text == "i")
      return make_num(Scalar(Scalar::Complex(0.0, 1.0)));
    if (auto fn = lookup_function(t.text)) {
      expect(Tok::LParen, "'(' after function name");
      Expr arg = parse_expr();
      expect(Tok::RParen, "')'");
      return make_call(*fn, arg);
    }
    return make_var(std::string(t.text));
  }

  Expr parse_iteral() {
    expect(Tok::LBracket, "'['");
    const Token var = expect(Tok::Ident, "bound variable name");
    if (is_reserved_name(var.text))
      throw ParseError(var.offset, "'" + std::string(var.text) + "' cannot be a bound variable");
    expect(Tok::Equals, "'='");
    Expr init = parse_expr();
    expect(Tok::Comma, "','");
    const Token n = expect(Tok::Ident, "'n'");
    if (n.text != "n")
      throw ParseError(n.offset, "expected 'n', found " + describe_token(n));
    expect(Tok::Equals, "'='");
    IterCount count = IterCount::unbounded();
    if (tok_.kind == Tok::Ident && tok_.text == "inf") {
      advance();
    } else if (tok_.kind == Tok::Number && !tok_.has_fraction) {
      std::uint64_t k = 0;
      auto [ptr, ec] = std::from_chars(tok_.text.data(), tok_.text.data() + tok_.text.size(), k);
      if (ec != std::errc() || ptr != tok_.text.data() + tok_.text.size())
        throw ParseError(tok_.offset, "iteration count out of range: " + std::string(tok_.text));
      count = IterCount::finite(k);
      advance();
    } else {
      throw ParseError(tok_.offset,
                       "expected a natural iteration count or 'inf', found " + describe_token(tok_));
    }
    expect(Tok::RBracket, "']'");
    expect(Tok::LParen, "'(' before iteral body");
    Expr body = parse_expr();
    expect(Tok::RParen, "')'");
    return make_iteral(std::string(var.text), init, count, body);
  }

  Lexer lexer_;
  Token tok_{Tok::End, {}, 0};
  int depth_ = 0;
};

}  // namespace

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("parse error at column " + std::to_string(offset + 1) + ": " + message),
      offset_(offset) {}

Expr parse(std::string_view src) { return Parser(src).parse_all(); }

bool is_reserved_name(std::string_view name) {
  return name == "i" || name == "sin" || name == "cos" || name == "exp" || name == "abs" ||
         name == "sqrt";
}

}  // namespace iteral::expr
