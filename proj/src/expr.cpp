#include "trapbound/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "trapbound/error.hpp"

namespace trapbound {

std::string_view name(UnaryOp op) noexcept {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Ln: return "ln";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Abs: return "abs";
  }
  return "?";
}

char symbol(BinaryOp op) noexcept {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

Expr Expr::constant(double v) {
  return Expr(std::make_shared<const Node>(Constant{v}));
}

Expr Expr::variable() { return Expr(std::make_shared<const Node>(Variable{})); }

Expr Expr::unary(UnaryOp op, Expr child) {
  return Expr(std::make_shared<const Node>(Unary{op, std::move(child)}));
}

Expr Expr::binary(BinaryOp op, Expr left, Expr right) {
  return Expr(
      std::make_shared<const Node>(Binary{op, std::move(left), std::move(right)}));
}

bool Expr::is_constant() const noexcept {
  return std::holds_alternative<Constant>(*node_);
}

double Expr::constant_value() const noexcept {
  return std::get<Constant>(*node_).value;
}

bool operator==(const Expr& lhs, const Expr& rhs) {
  if (lhs.node_ == rhs.node_) return true;
  const auto& l = *lhs.node_;
  const auto& r = *rhs.node_;
  if (l.index() != r.index()) return false;
  if (auto* c = std::get_if<Expr::Constant>(&l))
    return c->value == std::get<Expr::Constant>(r).value;
  if (std::holds_alternative<Expr::Variable>(l)) return true;
  if (auto* u = std::get_if<Expr::Unary>(&l)) {
    const auto& v = std::get<Expr::Unary>(r);
    return u->op == v.op && u->child == v.child;
  }
  const auto& b = std::get<Expr::Binary>(l);
  const auto& c = std::get<Expr::Binary>(r);
  return b.op == c.op && b.left == c.left && b.right == c.right;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(const Expr& e, double s, double v) {
  if (!std::isfinite(v)) throw DomainError(e.to_string(), s, "non-finite result");
  return v;
}

double eval_pow(const Expr& e, const Expr::Binary& b, double s) {
  const double base = b.left.eval(s);
  const double ex = b.right.eval(s);
  if (b.right.is_constant()) {
    if (base == 0.0 && ex < 0.0)
      throw DomainError(e.to_string(), s, "zero raised to a negative power");
    if (base < 0.0 && ex != std::trunc(ex))
      throw DomainError(e.to_string(), s,
                        "negative base with non-integer exponent");
  } else if (!(base > 0.0)) {
    throw DomainError(e.to_string(), s,
                      "variable exponent requires a positive base");
  }
  return std::pow(base, ex);
}

}  // namespace

double Expr::eval(double s) const {
  const Node& n = *node_;
  if (auto* c = std::get_if<Constant>(&n)) return c->value;
  if (std::holds_alternative<Variable>(n)) return s;
  if (auto* u = std::get_if<Unary>(&n)) {
    const double v = u->child.eval(s);
    switch (u->op) {
      case UnaryOp::Neg: return -v;
      case UnaryOp::Ln:
        if (!(v > 0.0)) throw DomainError(to_string(), s, "argument must be positive");
        return std::log(v);
      case UnaryOp::Exp: return checked(*this, s, std::exp(v));
      case UnaryOp::Sin: return std::sin(v);
      case UnaryOp::Cos: return std::cos(v);
      case UnaryOp::Sqrt:
        if (v < 0.0) throw DomainError(to_string(), s, "argument must be non-negative");
        return std::sqrt(v);
      case UnaryOp::Abs: return std::fabs(v);
    }
  }
  const auto& b = std::get<Binary>(n);
  if (b.op == BinaryOp::Pow) return checked(*this, s, eval_pow(*this, b, s));
  const double l = b.left.eval(s);
  const double r = b.right.eval(s);
  switch (b.op) {
    case BinaryOp::Add: return checked(*this, s, l + r);
    case BinaryOp::Sub: return checked(*this, s, l - r);
    case BinaryOp::Mul: return checked(*this, s, l * r);
    case BinaryOp::Div:
      if (r == 0.0) throw DomainError(to_string(), s, "division by zero");
      return checked(*this, s, l / r);
    case BinaryOp::Pow: break;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength of the printed form; a child printed below the strength
// its slot requires gets parentheses.
constexpr int kSum = 1, kProduct = 2, kPrefix = 3, kPower = 4, kAtom = 5;

int strength(const Expr& e) {
  const auto& n = e.node();
  // Negative constants print parenthesized, so they are atoms too.
  if (std::holds_alternative<Expr::Constant>(n)) return kAtom;
  if (std::holds_alternative<Expr::Variable>(n)) return kAtom;
  if (auto* u = std::get_if<Expr::Unary>(&n)) return u->op == UnaryOp::Neg ? kPrefix : kAtom;
  switch (std::get<Expr::Binary>(n).op) {
    case BinaryOp::Add:
    case BinaryOp::Sub: return kSum;
    case BinaryOp::Mul:
    case BinaryOp::Div: return kProduct;
    case BinaryOp::Pow: return kPower;
  }
  return kAtom;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, std::fabs(v));
  std::string digits(buf, res.ptr);
  return v < 0 ? "(-" + digits + ")" : digits;
}

void print(const Expr& e, std::string& out);

void print_slot(const Expr& e, int need, std::string& out) {
  if (strength(e) < need) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  const auto& n = e.node();
  if (auto* c = std::get_if<Expr::Constant>(&n)) {
    out += format_number(c->value);
  } else if (std::holds_alternative<Expr::Variable>(n)) {
    out += 's';
  } else if (auto* u = std::get_if<Expr::Unary>(&n)) {
    if (u->op == UnaryOp::Neg) {
      out += '-';
      print_slot(u->child, kPrefix, out);
    } else {
      out += name(u->op);
      out += '(';
      print(u->child, out);
      out += ')';
    }
  } else {
    const auto& b = std::get<Expr::Binary>(n);
    switch (b.op) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
        print_slot(b.left, kSum, out);
        out += symbol(b.op);
        print_slot(b.right, kProduct, out);
        break;
      case BinaryOp::Mul:
      case BinaryOp::Div:
        print_slot(b.left, kProduct, out);
        out += symbol(b.op);
        print_slot(b.right, kPrefix, out);
        break;
      case BinaryOp::Pow:
        print_slot(b.left, kAtom, out);
        out += '^';
        print_slot(b.right, kPrefix, out);
        break;
    }
  }
}

}  // namespace

std::string Expr::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("expected operator or end of input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    throw SyntaxError(pos_, expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(BinaryOp::Add, lhs, term());
      else if (accept('-'))
        lhs = Expr::binary(BinaryOp::Sub, lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(BinaryOp::Mul, lhs, factor());
      else if (accept('/'))
        lhs = Expr::binary(BinaryOp::Div, lhs, factor());
      else
        return lhs;
    }
  }

  // "^" binds tighter than prefix minus: -s^2 is -(s^2); the exponent may
  // itself be negated (2^-1).
  Expr factor() {
    if (accept('-')) return Expr::unary(UnaryOp::Neg, factor());
    Expr base = primary();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, factor());
    return base;
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected expression, found end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (accept('(')) {
      Expr inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail(std::string("expected expression, found '") + c + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) {
      pos_ = start;
      fail("expected digits in number");
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc{} || !std::isfinite(v)) {
      pos_ = start;
      fail("number out of range");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isalnum(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    if (id == "s") return Expr::variable();
    static constexpr UnaryOp funcs[] = {UnaryOp::Ln,  UnaryOp::Exp,
                                        UnaryOp::Sin, UnaryOp::Cos,
                                        UnaryOp::Sqrt, UnaryOp::Abs};
    for (UnaryOp op : funcs) {
      if (id == name(op)) {
        if (!accept('(')) fail("expected '(' after " + std::string(id));
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::unary(op, arg);
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(id) +
         "' (expected s, ln, exp, sin, cos, sqrt or abs)");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

FunctionDef FunctionDef::from_text(std::string_view text, std::string label) {
  return FunctionDef{parse(text), std::move(label), std::nullopt};
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_value(const Expr& e, double v) {
  return e.is_constant() && e.constant_value() == v;
}

// Builders used while differentiating: fold constant-op-constant and drop
// neutral/absorbing operands.
Expr fold_or(BinaryOp op, const Expr& l, const Expr& r) {
  if (l.is_constant() && r.is_constant()) {
    const double a = l.constant_value(), b = r.constant_value();
    double v = NAN;
    switch (op) {
      case BinaryOp::Add: v = a + b; break;
      case BinaryOp::Sub: v = a - b; break;
      case BinaryOp::Mul: v = a * b; break;
      case BinaryOp::Div: if (b != 0.0) v = a / b; break;
      case BinaryOp::Pow:
        if (a > 0.0 || (a == 0.0 && b > 0.0) || b == std::trunc(b)) v = std::pow(a, b);
        break;
    }
    if (std::isfinite(v)) return Expr::constant(v);
  }
  return Expr::binary(op, l, r);
}

Expr neg(const Expr& e) {
  if (e.is_constant()) return Expr::constant(-e.constant_value());
  if (auto* u = std::get_if<Expr::Unary>(&e.node()); u && u->op == UnaryOp::Neg)
    return u->child;
  return Expr::unary(UnaryOp::Neg, e);
}

Expr add(const Expr& l, const Expr& r) {
  if (is_value(l, 0.0)) return r;
  if (is_value(r, 0.0)) return l;
  return fold_or(BinaryOp::Add, l, r);
}

Expr sub(const Expr& l, const Expr& r) {
  if (is_value(r, 0.0)) return l;
  if (is_value(l, 0.0)) return neg(r);
  return fold_or(BinaryOp::Sub, l, r);
}

Expr mul(const Expr& l, const Expr& r) {
  if (is_value(l, 0.0) || is_value(r, 0.0)) return Expr::constant(0.0);
  if (is_value(l, 1.0)) return r;
  if (is_value(r, 1.0)) return l;
  return fold_or(BinaryOp::Mul, l, r);
}

Expr div(const Expr& l, const Expr& r) {
  if (is_value(l, 0.0)) return Expr::constant(0.0);
  if (is_value(r, 1.0)) return l;
  return fold_or(BinaryOp::Div, l, r);
}

Expr pow(const Expr& l, const Expr& r) {
  if (is_value(r, 1.0)) return l;
  if (is_value(r, 0.0)) return Expr::constant(1.0);
  return fold_or(BinaryOp::Pow, l, r);
}

Expr fn(UnaryOp op, const Expr& e) { return Expr::unary(op, e); }

}  // namespace

Expr differentiate(const Expr& e) {
  const auto& n = e.node();
  if (std::holds_alternative<Expr::Constant>(n)) return Expr::constant(0.0);
  if (std::holds_alternative<Expr::Variable>(n)) return Expr::constant(1.0);
  if (auto* u = std::get_if<Expr::Unary>(&n)) {
    const Expr& c = u->child;
    switch (u->op) {
      case UnaryOp::Neg: return neg(differentiate(c));
      case UnaryOp::Ln: return div(differentiate(c), c);
      case UnaryOp::Exp: return mul(e, differentiate(c));
      case UnaryOp::Sin: return mul(fn(UnaryOp::Cos, c), differentiate(c));
      case UnaryOp::Cos: return neg(mul(fn(UnaryOp::Sin, c), differentiate(c)));
      case UnaryOp::Sqrt:
        return div(differentiate(c), mul(Expr::constant(2.0), e));
      case UnaryOp::Abs: throw NotDifferentiableError(e.to_string());
    }
  }
  const auto& b = std::get<Expr::Binary>(n);
  const Expr& u = b.left;
  const Expr& v = b.right;
  switch (b.op) {
    case BinaryOp::Add: return add(differentiate(u), differentiate(v));
    case BinaryOp::Sub: return sub(differentiate(u), differentiate(v));
    case BinaryOp::Mul:
      return add(mul(differentiate(u), v), mul(u, differentiate(v)));
    case BinaryOp::Div:
      return div(sub(mul(differentiate(u), v), mul(u, differentiate(v))),
                 pow(v, Expr::constant(2.0)));
    case BinaryOp::Pow:
      if (v.is_constant()) {
        const double c = v.constant_value();
        return mul(mul(v, pow(u, Expr::constant(c - 1.0))), differentiate(u));
      }
      // d(u^v) = u^v * (v' ln u + v u'/u)
      return mul(e, add(mul(differentiate(v), fn(UnaryOp::Ln, u)),
                        div(mul(v, differentiate(u)), u)));
  }
  return Expr::constant(0.0);
}

Expr differentiate(const Expr& e, int order) {
  if (order < 0) throw ArgumentError("derivative order must be non-negative");
  Expr d = e;
  for (int i = 0; i < order; ++i) d = differentiate(d);
  return d;
}

}  // namespace trapbound
