#include "fracbvp/expression.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace fracbvp {

enum class Kind {
  kNumber,
  kVarT,
  kVarX,  // index in [0, m)
  kVarU,  // index in [0, r)
  kAdd,
  kSub,
  kMul,
  kDiv,
  kPow,
  kNeg,
  kFun,
};

enum class Fun { kSin, kCos, kTan, kExp, kLn, kAbs, kTanh, kSqrt };

struct Expression::Node {
  Kind kind;
  double number = 0.0;
  int index = 0;
  Fun fun = Fun::kSin;
  NodePtr a = nullptr, b = nullptr;
  std::size_t offset = 0;  // byte position of the defining token
};

namespace {

using Node = Expression::Node;
using NodePtr = Expression::NodePtr;

// value/derivative pair for one directional forward pass
struct Dual {
  double v;
  double d;
};

[[noreturn]] void eval_fail(const char* what, const Node& n) {
  throw EvalError(what, n.offset);
}

bool is_integer(double x) { return std::floor(x) == x && std::fabs(x) <= 1e15; }

Dual eval_node(const Node& n, double t, std::span<const double> x,
               std::span<const double> u, int seed) {
  switch (n.kind) {
    case Kind::kNumber:
      return {n.number, 0.0};
    case Kind::kVarT:
      return {t, 0.0};
    case Kind::kVarX:
      return {x[n.index], seed == n.index ? 1.0 : 0.0};
    case Kind::kVarU:
      return {u[n.index],
              seed == static_cast<int>(x.size()) + n.index ? 1.0 : 0.0};
    case Kind::kAdd: {
      const Dual l = eval_node(*n.a, t, x, u, seed);
      const Dual r = eval_node(*n.b, t, x, u, seed);
      return {l.v + r.v, l.d + r.d};
    }
    case Kind::kSub: {
      const Dual l = eval_node(*n.a, t, x, u, seed);
      const Dual r = eval_node(*n.b, t, x, u, seed);
      return {l.v - r.v, l.d - r.d};
    }
    case Kind::kMul: {
      const Dual l = eval_node(*n.a, t, x, u, seed);
      const Dual r = eval_node(*n.b, t, x, u, seed);
      return {l.v * r.v, l.d * r.v + l.v * r.d};
    }
    case Kind::kDiv: {
      const Dual l = eval_node(*n.a, t, x, u, seed);
      const Dual r = eval_node(*n.b, t, x, u, seed);
      if (r.v == 0.0) eval_fail("division by zero", n);
      const double q = l.v / r.v;
      return {q, (l.d - q * r.d) / r.v};
    }
    case Kind::kPow: {
      const Dual base = eval_node(*n.a, t, x, u, seed);
      const Dual ex = eval_node(*n.b, t, x, u, seed);
      if (ex.d != 0.0) {
        // variable exponent: a^b = exp(b ln a) needs a > 0
        if (base.v <= 0.0) eval_fail("variable exponent needs a positive base", n);
        const double v = std::pow(base.v, ex.v);
        return {v, v * (ex.d * std::log(base.v) + ex.v * base.d / base.v)};
      }
      if (is_integer(ex.v)) {
        if (base.v == 0.0 && ex.v < 0.0) eval_fail("zero base with negative exponent", n);
        const double v = std::pow(base.v, ex.v);
        const double d =
            ex.v == 0.0 ? 0.0 : ex.v * std::pow(base.v, ex.v - 1.0) * base.d;
        return {v, d};
      }
      if (base.v <= 0.0) eval_fail("fractional power of a nonpositive base", n);
      const double v = std::pow(base.v, ex.v);
      return {v, ex.v * v / base.v * base.d};
    }
    case Kind::kNeg: {
      const Dual a = eval_node(*n.a, t, x, u, seed);
      return {-a.v, -a.d};
    }
    case Kind::kFun: {
      const Dual a = eval_node(*n.a, t, x, u, seed);
      switch (n.fun) {
        case Fun::kSin:
          return {std::sin(a.v), std::cos(a.v) * a.d};
        case Fun::kCos:
          return {std::cos(a.v), -std::sin(a.v) * a.d};
        case Fun::kTan: {
          const double c = std::cos(a.v);
          const double v = std::tan(a.v);
          if (!std::isfinite(v)) eval_fail("tan pole", n);
          return {v, a.d / (c * c)};
        }
        case Fun::kExp: {
          const double v = std::exp(a.v);
          if (!std::isfinite(v)) eval_fail("exp overflow", n);
          return {v, v * a.d};
        }
        case Fun::kLn:
          if (a.v <= 0.0) eval_fail("ln of a nonpositive value", n);
          return {std::log(a.v), a.d / a.v};
        case Fun::kAbs:
          // sign(0) := 0
          return {std::fabs(a.v), (a.v > 0.0 ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0)) * a.d};
        case Fun::kTanh: {
          const double v = std::tanh(a.v);
          return {v, (1.0 - v * v) * a.d};
        }
        case Fun::kSqrt: {
          if (a.v < 0.0) eval_fail("sqrt of a negative value", n);
          const double v = std::sqrt(a.v);
          if (a.v == 0.0) {
            if (a.d != 0.0) eval_fail("sqrt derivative is singular at zero", n);
            return {0.0, 0.0};
          }
          return {v, a.d / (2.0 * v)};
        }
      }
      eval_fail("unknown function", n);
    }
  }
  eval_fail("malformed tree", n);
}

// ---------------------------------------------------------------------------
// parsing

struct FunName {
  const char* name;
  Fun fun;
};
constexpr FunName kFunctions[] = {
    {"sin", Fun::kSin},   {"cos", Fun::kCos}, {"tan", Fun::kTan},
    {"exp", Fun::kExp},   {"ln", Fun::kLn},   {"abs", Fun::kAbs},
    {"tanh", Fun::kTanh}, {"sqrt", Fun::kSqrt},
};

class Parser {
public:
  Parser(const std::string& text, int m, int r) : text_(text), m_(m), r_(r) {}

  NodePtr run() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr make(Node&& n) { return std::make_shared<Node>(std::move(n)); }

  NodePtr parse_expr() {
    NodePtr left = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (consume('+')) {
        left = make({.kind = Kind::kAdd, .a = left, .b = parse_term(), .offset = at});
      } else if (consume('-')) {
        left = make({.kind = Kind::kSub, .a = left, .b = parse_term(), .offset = at});
      } else {
        return left;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr left = parse_unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (consume('*')) {
        left = make({.kind = Kind::kMul, .a = left, .b = parse_unary(), .offset = at});
      } else if (consume('/')) {
        left = make({.kind = Kind::kDiv, .a = left, .b = parse_unary(), .offset = at});
      } else {
        return left;
      }
    }
  }

  NodePtr parse_unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (consume('-')) {
      return make({.kind = Kind::kNeg, .a = parse_unary(), .offset = at});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr left = parse_atom();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (consume('^')) {
        left = make({.kind = Kind::kPow, .a = left, .b = parse_atom(), .offset = at});
      } else {
        return left;
      }
    }
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) {
      throw ParseError("expected an operand, found end of input", pos_);
    }
    const std::size_t at = pos_;
    const char c = text_[pos_];

    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      if (!consume(')')) {
        throw ParseError("expected ')'", pos_);
      }
      return inner;
    }

    if ((c >= '0' && c <= '9') ||
        (c == '.' && pos_ + 1 < text_.size() && text_[pos_ + 1] >= '0' &&
         text_[pos_ + 1] <= '9')) {
      double value = 0.0;
      const char* begin = text_.data() + pos_;
      const char* end = text_.data() + text_.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc{}) {
        throw ParseError("malformed number", at);
      }
      pos_ = static_cast<std::size_t>(ptr - text_.data());
      return make({.kind = Kind::kNumber, .number = value, .offset = at});
    }

    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             ((text_[end] >= 'a' && text_[end] <= 'z') ||
              (text_[end] >= 'A' && text_[end] <= 'Z') ||
              (text_[end] >= '0' && text_[end] <= '9') || text_[end] == '_')) {
        ++end;
      }
      const std::string name = text_.substr(pos_, end - pos_);
      pos_ = end;
      return finish_name(name, at);
    }

    throw ParseError(std::string("unexpected character '") + c + "'", at);
  }

  NodePtr finish_name(const std::string& name, std::size_t at) {
    for (const auto& f : kFunctions) {
      if (name == f.name) {
        if (!consume('(')) {
          throw ParseError("function '" + name + "' needs parentheses", pos_);
        }
        NodePtr arg = parse_expr();
        if (!consume(')')) {
          throw ParseError("expected ')'", pos_);
        }
        return make({.kind = Kind::kFun, .fun = f.fun, .a = arg, .offset = at});
      }
    }
    if (name == "t") return make({.kind = Kind::kVarT, .offset = at});
    if (name == "pi") {
      return make({.kind = Kind::kNumber, .number = std::numbers::pi, .offset = at});
    }
    if (name == "e") {
      return make({.kind = Kind::kNumber, .number = std::numbers::e, .offset = at});
    }
    if ((name[0] == 'x' || name[0] == 'u') && name.size() > 1) {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i) {
        if (name[i] < '0' || name[i] > '9') {
          digits = false;
          break;
        }
      }
      if (digits) {
        const long idx = std::strtol(name.c_str() + 1, nullptr, 10);
        const bool is_x = name[0] == 'x';
        const long limit = is_x ? m_ : r_;
        if (idx < 1 || idx > limit) {
          throw ParseError("variable " + name + " out of range (" +
                               (is_x ? "m = " : "r = ") + std::to_string(limit) + ")",
                           at);
        }
        return make({.kind = is_x ? Kind::kVarX : Kind::kVarU,
                     .index = static_cast<int>(idx - 1),
                     .offset = at});
      }
    }
    throw ParseError("unknown identifier '" + name + "'", at);
  }

  const std::string& text_;
  int m_;
  int r_;
  std::size_t pos_ = 0;
};

void print_node(const Node& n, std::string* out) {
  char buf[40];
  switch (n.kind) {
    case Kind::kNumber:
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      *out += buf;
      return;
    case Kind::kVarT:
      *out += 't';
      return;
    case Kind::kVarX:
      *out += 'x';
      *out += std::to_string(n.index + 1);
      return;
    case Kind::kVarU:
      *out += 'u';
      *out += std::to_string(n.index + 1);
      return;
    case Kind::kAdd:
    case Kind::kSub:
    case Kind::kMul:
    case Kind::kDiv:
    case Kind::kPow: {
      const char op = n.kind == Kind::kAdd   ? '+'
                      : n.kind == Kind::kSub ? '-'
                      : n.kind == Kind::kMul ? '*'
                      : n.kind == Kind::kDiv ? '/'
                                             : '^';
      *out += '(';
      print_node(*n.a, out);
      *out += op;
      print_node(*n.b, out);
      *out += ')';
      return;
    }
    case Kind::kNeg:
      *out += "(-";
      print_node(*n.a, out);
      *out += ')';
      return;
    case Kind::kFun: {
      static const char* names[] = {"sin", "cos", "tan",  "exp",
                                    "ln",  "abs", "tanh", "sqrt"};
      *out += names[static_cast<int>(n.fun)];
      *out += '(';
      print_node(*n.a, out);
      *out += ')';
      return;
    }
  }
}

bool trees_equal(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::kNumber:
      return a.number == b.number;
    case Kind::kVarT:
      return true;
    case Kind::kVarX:
    case Kind::kVarU:
      return a.index == b.index;
    case Kind::kNeg:
      return trees_equal(*a.a, *b.a);
    case Kind::kFun:
      return a.fun == b.fun && trees_equal(*a.a, *b.a);
    default:
      return trees_equal(*a.a, *b.a) && trees_equal(*a.b, *b.b);
  }
}

void scan_vars(const Node& n, int* max_x, int* max_u, bool* uses_t) {
  switch (n.kind) {
    case Kind::kVarT:
      *uses_t = true;
      return;
    case Kind::kVarX:
      *max_x = std::max(*max_x, n.index + 1);
      return;
    case Kind::kVarU:
      *max_u = std::max(*max_u, n.index + 1);
      return;
    case Kind::kNumber:
      return;
    case Kind::kNeg:
    case Kind::kFun:
      scan_vars(*n.a, max_x, max_u, uses_t);
      return;
    default:
      scan_vars(*n.a, max_x, max_u, uses_t);
      scan_vars(*n.b, max_x, max_u, uses_t);
      return;
  }
}

}  // namespace

Expression::Expression(NodePtr root, int m, int r)
    : root_(std::move(root)), m_(m), r_(r) {
  scan_vars(*root_, &max_x_, &max_u_, &uses_t_);
}

Expression Expression::parse(const std::string& text, int m, int r) {
  if (m < 0 || r < 0) {
    throw std::invalid_argument("Expression::parse: negative arity");
  }
  Parser p(text, m, r);
  return Expression(p.run(), m, r);
}

double Expression::eval(double t, std::span<const double> x,
                        std::span<const double> u) const {
  return eval_node(*root_, t, x, u, /*seed=*/-1).v;
}

double Expression::eval_derivative(double t, std::span<const double> x,
                                   std::span<const double> u, int seed,
                                   double* value) const {
  const Dual d = eval_node(*root_, t, x, u, seed);
  if (value != nullptr) *value = d.v;
  return d.d;
}

std::string Expression::to_string() const {
  std::string out;
  print_node(*root_, &out);
  return out;
}

bool Expression::same_tree(const Expression& other) const {
  return trees_equal(*root_, *other.root_);
}

Expression Expression::shifted_by(const Expression& base,
                                  const Expression& direction, double eps) {
  auto eps_node = std::make_shared<Node>(
      Node{.kind = Kind::kNumber, .number = eps, .offset = 0});
  auto scaled = std::make_shared<Node>(Node{
      .kind = Kind::kMul, .a = eps_node, .b = direction.root_, .offset = 0});
  auto sum = std::make_shared<Node>(
      Node{.kind = Kind::kAdd, .a = base.root_, .b = scaled, .offset = 0});
  return Expression(sum, std::max(base.m_, direction.m_),
                    std::max(base.r_, direction.r_));
}

}  // namespace fracbvp
