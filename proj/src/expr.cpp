#include "lvie/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <variant>

namespace lvie::expr {

SyntaxError::SyntaxError(const std::string& what, std::size_t position)
    : std::runtime_error("syntax error at position " + std::to_string(position) + ": " + what),
      position_(position) {}

UnknownIdentifier::UnknownIdentifier(std::string name, std::size_t position)
    : SyntaxError("unknown identifier '" + name + "'", position), name_(std::move(name)) {}

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Cos, Sin, Exp, Ln, Sqrt, Abs };

struct Number {
  double value;
};
struct Variable {
  char name;  // 't' or 's'
};
struct Negate {
  std::shared_ptr<const Node> operand;
};
struct Binary {
  BinaryOp op;
  std::shared_ptr<const Node> lhs, rhs;
};
struct Call {
  Function fn;
  std::shared_ptr<const Node> arg;
};

struct Node {
  std::variant<Number, Variable, Negate, Binary, Call> v;
};

namespace {

using NodePtr = std::shared_ptr<const Node>;

struct FunctionName {
  std::string_view name;
  Function fn;
};

constexpr std::array<FunctionName, 6> kFunctions{{{"cos", Function::Cos},
                                                  {"sin", Function::Sin},
                                                  {"exp", Function::Exp},
                                                  {"ln", Function::Ln},
                                                  {"sqrt", Function::Sqrt},
                                                  {"abs", Function::Abs}}};

template <class T>
NodePtr make(T value) {
  return std::make_shared<const Node>(Node{std::move(value)});
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    NodePtr root = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) {
      if (text_[pos_] == ')') throw SyntaxError("unbalanced ')'", pos_);
      throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    }
    return root;
  }

  bool uses_t = false;
  bool uses_s = false;

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make(Binary{BinaryOp::Add, lhs, parse_product()});
      } else if (accept('-')) {
        lhs = make(Binary{BinaryOp::Sub, lhs, parse_product()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Binary{BinaryOp::Mul, lhs, parse_unary()});
      } else if (accept('/')) {
        lhs = make(Binary{BinaryOp::Div, lhs, parse_unary()});
      } else {
        return lhs;
      }
    }
  }

  // Every recursive path (parentheses, unary minus, ^ chains) passes through
  // here, so this bounds the native stack depth.
  NodePtr parse_unary() {
    struct DepthGuard {
      int& depth;
      DepthGuard(int& d, std::size_t pos) : depth(d) {
        if (++depth > kMaxDepth) {
          --depth;
          throw SyntaxError("expression nested too deeply", pos);
        }
      }
      ~DepthGuard() { --depth; }
    } guard(depth_, pos_);
    if (accept('-')) return make(Negate{parse_unary()});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Binary{BinaryOp::Pow, base, parse_unary()});
    return base;
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_sum();
      expect_close();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  void expect_close() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("expected ')' before end of input", pos_);
    if (text_[pos_] != ')') throw SyntaxError(std::string("expected ')' but found '") + text_[pos_] + "'", pos_);
    ++pos_;
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw SyntaxError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // 'e' belongs to something else
    }
    const std::string literal(text_.substr(start, pos_ - start));
    return make(Number{std::strtod(literal.c_str(), nullptr)});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    for (const auto& f : kFunctions) {
      if (f.name == name) {
        if (!accept('(')) throw SyntaxError("expected '(' after " + std::string(name), pos_);
        NodePtr arg = parse_sum();
        expect_close();
        return make(Call{f.fn, arg});
      }
    }
    if (name == "t" || name == "s") {
      (name == "t" ? uses_t : uses_s) = true;
      return make(Variable{name[0]});
    }
    throw UnknownIdentifier(std::string(name), start);
  }

  static constexpr int kMaxDepth = 200;

  std::string_view text_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

double checked(double value, const char* what) {
  if (!std::isfinite(value)) throw EvalError(std::string("non-finite result in ") + what);
  return value;
}

double power(double base, double exponent) {
  if (std::nearbyint(exponent) == exponent && std::abs(exponent) < 1e9) {
    if (base == 0.0 && exponent < 0) throw EvalError("division by zero in ^");
    return checked(std::pow(base, exponent), "^");
  }
  if (base <= 0.0) throw EvalError("non-integer power of a non-positive base");
  return checked(std::exp(exponent * std::log(base)), "^");
}

struct Evaluator {
  double t;
  std::optional<double> s;

  double operator()(const Number& n) const { return n.value; }
  double operator()(const Variable& v) const {
    if (v.name == 't') return t;
    if (!s) throw EvalError("expression references s but no s was supplied");
    return *s;
  }
  double operator()(const Negate& n) const { return -std::visit(*this, n.operand->v); }
  double operator()(const Binary& b) const {
    const double l = std::visit(*this, b.lhs->v);
    const double r = std::visit(*this, b.rhs->v);
    switch (b.op) {
      case BinaryOp::Add: return checked(l + r, "+");
      case BinaryOp::Sub: return checked(l - r, "-");
      case BinaryOp::Mul: return checked(l * r, "*");
      case BinaryOp::Div:
        if (r == 0.0) throw EvalError("division by zero");
        return checked(l / r, "/");
      case BinaryOp::Pow: return power(l, r);
    }
    return 0.0;
  }
  double operator()(const Call& c) const {
    const double x = std::visit(*this, c.arg->v);
    switch (c.fn) {
      case Function::Cos: return std::cos(x);
      case Function::Sin: return std::sin(x);
      case Function::Exp: return checked(std::exp(x), "exp");
      case Function::Ln:
        if (x <= 0.0) throw EvalError("ln of a non-positive value");
        return std::log(x);
      case Function::Sqrt:
        if (x < 0.0) throw EvalError("sqrt of a negative value");
        return std::sqrt(x);
      case Function::Abs: return std::abs(x);
    }
    return 0.0;
  }
};

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

struct Printer {
  std::string operator()(const Number& n) const { return format_number(n.value); }
  std::string operator()(const Variable& v) const { return std::string(1, v.name); }
  std::string operator()(const Negate& n) const { return "Neg(" + std::visit(*this, n.operand->v) + ")"; }
  std::string operator()(const Binary& b) const {
    static constexpr std::array<const char*, 5> names{"Add", "Sub", "Mul", "Div", "Pow"};
    return std::string(names[static_cast<int>(b.op)]) + "(" + std::visit(*this, b.lhs->v) + "," +
           std::visit(*this, b.rhs->v) + ")";
  }
  std::string operator()(const Call& c) const {
    return std::string(kFunctions[static_cast<int>(c.fn)].name) + "(" + std::visit(*this, c.arg->v) + ")";
  }
};

}  // namespace

Expr::Expr(std::shared_ptr<const Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

double Expr::eval(double t, std::optional<double> s) const {
  const double value = std::visit(Evaluator{t, s}, root_->v);
  if (!std::isfinite(value)) throw EvalError("non-finite result");
  return value;
}

std::string Expr::to_string() const { return std::visit(Printer{}, root_->v); }

Expr parse(std::string_view text) {
  Parser parser(text);
  NodePtr root = parser.parse_all();
  Expr e(std::move(root), std::string(text));
  e.uses_t_ = parser.uses_t;
  e.uses_s_ = parser.uses_s;
  return e;
}

}  // namespace lvie::expr
