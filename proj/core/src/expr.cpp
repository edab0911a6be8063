#include "mfrac/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <utility>

namespace mfrac {

struct Expr::Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;
  Function func = Function::Sin;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

const Expr::Node& node_of(const Expr& e) { return *e.node_; }

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

struct FunctionEntry {
  std::string_view name;
  Function func;
};

constexpr FunctionEntry kFunctions[] = {
    {"sin", Function::Sin},   {"cos", Function::Cos},   {"exp", Function::Exp},
    {"ln", Function::Ln},     {"sqrt", Function::Sqrt}, {"abs", Function::Abs},
};

bool same_tree(const Expr::Node& x, const Expr::Node& y) {
  if (&x == &y) return true;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case NodeKind::Constant:
      return x.value == y.value;
    case NodeKind::Variable:
      return true;
    case NodeKind::Neg:
      return same_tree(*x.a, *y.a);
    case NodeKind::Call:
      return x.func == y.func && same_tree(*x.a, *y.a);
    default:
      return same_tree(*x.a, *y.a) && same_tree(*x.b, *y.b);
  }
}

std::string format_constant(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void print_node(const Expr::Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print_node(*n.a, out);
    out += ' ';
    out += op;
    out += ' ';
    print_node(*n.b, out);
    out += ')';
  };
  switch (n.kind) {
    case NodeKind::Constant:
      out += format_constant(n.value);
      break;
    case NodeKind::Variable:
      out += 'x';
      break;
    case NodeKind::Add:
      binary("+");
      break;
    case NodeKind::Sub:
      binary("-");
      break;
    case NodeKind::Mul:
      binary("*");
      break;
    case NodeKind::Div:
      binary("/");
      break;
    case NodeKind::Pow:
      binary("^");
      break;
    case NodeKind::Neg:
      out += "(-";
      print_node(*n.a, out);
      out += ')';
      break;
    case NodeKind::Call:
      out += function_name(n.func);
      out += '(';
      print_node(*n.a, out);
      out += ')';
      break;
  }
}

std::string node_text(const Expr::Node& n) {
  std::string s;
  print_node(n, s);
  return s;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) {
      fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    }
    return e;
  }

 private:
  static NodePtr make(NodeKind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string describe_here() const {
    if (pos_ >= src_.size()) return "end of input";
    return std::string("'") + src_[pos_] + "'";
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    throw SyntaxError(pos_, std::move(expected), describe_here());
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = make(NodeKind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = make(NodeKind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(NodeKind::Mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = make(NodeKind::Div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_unary();
    if (accept('^')) return make(NodeKind::Pow, base, parse_factor());
    return base;
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(NodeKind::Neg, parse_unary());
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(primary_expected());
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (accept('(')) {
      NodePtr inner = parse_expr();
      if (!accept(')')) fail({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
      return inner;
    }
    fail(primary_expected());
  }

  static std::vector<std::string> primary_expected() {
    return {"number", "'x'", "'t'", "function name", "'('", "'-'"};
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa_digits = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa_digits += digits();
    }
    if (mantissa_digits == 0) {
      pos_ = start;
      fail({"digit"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t exp_start = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        // Not an exponent after all; leave the 'e' for the caller to reject.
        pos_ = exp_start;
      }
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec == std::errc::result_out_of_range) {
      // from_chars leaves value untouched on overflow/underflow; match strtod.
      value = std::strtod(std::string(src_.substr(start, pos_ - start)).c_str(), nullptr);
    } else if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail({"number"});
    }
    auto n = std::make_shared<Expr::Node>();
    n->kind = NodeKind::Constant;
    n->value = value;
    return n;
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = src_.substr(start, pos_ - start);
    if (name == "x" || name == "t") return make(NodeKind::Variable);
    for (const auto& entry : kFunctions) {
      if (entry.name == name) {
        if (!accept('(')) fail({"'('"});
        NodePtr arg = parse_expr();
        if (!accept(')')) fail({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"});
        auto n = std::make_shared<Expr::Node>();
        n->kind = NodeKind::Call;
        n->func = entry.func;
        n->a = std::move(arg);
        return n;
      }
    }
    throw UnknownIdentifierError(start, std::string(name));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation, shared between double and DualNumber so that the value
// component follows exactly the same floating-point path.

double value_of(double v) { return v; }
double value_of(const DualNumber& d) { return d.val; }

template <class S>
S lift(double c) {
  if constexpr (std::is_same_v<S, double>) {
    return c;
  } else {
    return DualNumber::constant(c);
  }
}

[[noreturn]] void domain_failure(const Expr::Node& n, const std::string& why) {
  throw DomainError(why + " in '" + node_text(n) + "'");
}

template <class S>
S integer_power(S base, std::int64_t n) {
  const bool invert = n < 0;
  std::uint64_t m = invert ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  S result = lift<S>(1.0);
  S square = base;
  bool first = true;
  while (m > 0) {
    if (m & 1U) {
      if (first) {
        result = square;
        first = false;
      } else {
        result = result * square;
      }
    }
    m >>= 1U;
    if (m > 0) square = square * square;
  }
  if (invert) result = lift<S>(1.0) / result;
  return result;
}

template <class S>
S evaluate(const Expr::Node& n, const S& var);

template <class S>
S evaluate_pow(const Expr::Node& n, const S& var) {
  const S base = evaluate(*n.a, var);
  const S exponent = evaluate(*n.b, var);
  const double b = value_of(base);
  const double p = value_of(exponent);
  constexpr bool dual = std::is_same_v<S, DualNumber>;

  const double rounded = std::round(p);
  if (std::abs(p - rounded) < 1e-12 && std::abs(rounded) < 9.0e18) {
    const auto k = static_cast<std::int64_t>(rounded);
    if (k < 0 && b == 0.0) domain_failure(n, "division by zero (zero base, negative power)");
    S result = integer_power(base, k);
    if constexpr (dual) {
      if (exponent.der != 0.0) {
        if (!(b > 0.0)) domain_failure(n, "non-differentiable power with non-positive base");
        result.der += result.val * exponent.der * std::log(b);
      }
    }
    return result;
  }

  if (b < 0.0) domain_failure(n, "negative base raised to non-integer power");
  if (b == 0.0) {
    if (p < 0.0) domain_failure(n, "division by zero (zero base, negative power)");
    if constexpr (dual) {
      if (p < 1.0 && (base.der != 0.0 || exponent.der != 0.0)) {
        domain_failure(n, "non-differentiable power at zero base");
      }
      return DualNumber{std::pow(b, p), 0.0};
    } else {
      return std::pow(b, p);
    }
  }
  if constexpr (dual) {
    const double v = std::pow(b, p);
    return DualNumber{v, v * (exponent.der * std::log(b) + p * base.der / b)};
  } else {
    return std::pow(b, p);
  }
}

template <class S>
S evaluate_call(const Expr::Node& n, const S& var) {
  using std::abs, std::cos, std::exp, std::log, std::sin, std::sqrt;
  const S arg = evaluate(*n.a, var);
  const double x = value_of(arg);
  constexpr bool dual = std::is_same_v<S, DualNumber>;
  switch (n.func) {
    case Function::Sin:
      return sin(arg);
    case Function::Cos:
      return cos(arg);
    case Function::Exp:
      return exp(arg);
    case Function::Ln:
      if (!(x > 0.0)) domain_failure(n, "ln of non-positive value " + std::to_string(x));
      return log(arg);
    case Function::Sqrt:
      if (x < 0.0) domain_failure(n, "sqrt of negative value " + std::to_string(x));
      if constexpr (dual) {
        if (x == 0.0) domain_failure(n, "sqrt is not differentiable at 0");
      }
      return sqrt(arg);
    case Function::Abs:
      if constexpr (dual) {
        if (x == 0.0) domain_failure(n, "abs is not differentiable at 0");
      }
      return abs(arg);
  }
  domain_failure(n, "unknown function");
}

template <class S>
S evaluate(const Expr::Node& n, const S& var) {
  switch (n.kind) {
    case NodeKind::Constant:
      return lift<S>(n.value);
    case NodeKind::Variable:
      return var;
    case NodeKind::Add:
      return evaluate(*n.a, var) + evaluate(*n.b, var);
    case NodeKind::Sub:
      return evaluate(*n.a, var) - evaluate(*n.b, var);
    case NodeKind::Mul:
      return evaluate(*n.a, var) * evaluate(*n.b, var);
    case NodeKind::Div: {
      const S num = evaluate(*n.a, var);
      const S den = evaluate(*n.b, var);
      if (value_of(den) == 0.0) domain_failure(n, "division by zero");
      return num / den;
    }
    case NodeKind::Pow:
      return evaluate_pow(n, var);
    case NodeKind::Neg:
      return -evaluate(*n.a, var);
    case NodeKind::Call:
      return evaluate_call(n, var);
  }
  domain_failure(n, "malformed node");
}

std::string join_expected(const std::vector<std::string>& expected) {
  std::string s;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) s += ", ";
    s += expected[i];
  }
  return s;
}

}  // namespace

const char* function_name(Function f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name.data();
  }
  return "?";
}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : ParseError("syntax error at offset " + std::to_string(offset) + ": expected one of {" +
                     join_expected(expected) + "}, found " + found,
                 offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

UnknownIdentifierError::UnknownIdentifierError(std::size_t offset, std::string identifier)
    : ParseError("unknown identifier '" + identifier + "' at offset " + std::to_string(offset),
                 offset),
      identifier_(std::move(identifier)) {}

Expr Expr::constant(double c) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Constant;
  n->value = c;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Variable;
  return Expr(std::move(n));
}

Expr Expr::add(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Add;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::move(n));
}

Expr Expr::sub(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Sub;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::move(n));
}

Expr Expr::mul(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Mul;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::move(n));
}

Expr Expr::div(Expr a, Expr b) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Div;
  n->a = a.node_;
  n->b = b.node_;
  return Expr(std::move(n));
}

Expr Expr::pow(Expr base, Expr exponent) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Pow;
  n->a = base.node_;
  n->b = exponent.node_;
  return Expr(std::move(n));
}

Expr Expr::neg(Expr a) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Neg;
  n->a = a.node_;
  return Expr(std::move(n));
}

Expr Expr::call(Function f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->a = arg.node_;
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node_->kind; }

double Expr::constant_value() const {
  return node_->kind == NodeKind::Constant ? node_->value : 0.0;
}

Function Expr::function() const { return node_->func; }

std::vector<Expr> Expr::operands() const {
  std::vector<Expr> out;
  if (node_->a) out.push_back(Expr(node_->a));
  if (node_->b) out.push_back(Expr(node_->b));
  return out;
}

bool operator==(const Expr& a, const Expr& b) { return same_tree(*a.node_, *b.node_); }

Expr operator+(Expr a, Expr b) { return Expr::add(std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::sub(std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::mul(std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::div(std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::neg(std::move(a)); }

Expr wrap_node(std::shared_ptr<const Expr::Node> node) { return Expr(std::move(node)); }

Expr parse(std::string_view source) { return wrap_node(Parser(source).parse_all()); }

std::string print(const Expr& e) {
  std::string out;
  print_node(node_of(e), out);
  return out;
}

double eval(const Expr& e, double t) { return evaluate<double>(node_of(e), t); }

DualNumber eval_dual(const Expr& e, double t) {
  return evaluate<DualNumber>(node_of(e), DualNumber::variable(t));
}

}  // namespace mfrac
