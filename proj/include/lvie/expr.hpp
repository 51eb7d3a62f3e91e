#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lvie::expr {

/// Raised by parse() for malformed input. position() is a 0-based offset
/// into the source text.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public SyntaxError {
 public:
  UnknownIdentifier(std::string name, std::size_t position);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Raised by Expr::eval for a missing `s` or a non-finite/undefined result.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node;

/// Immutable expression tree over t, s, real literals, + - * / ^, unary
/// minus and cos/sin/exp/ln/sqrt/abs. Copies share the tree.
class Expr {
 public:
  double eval(double t, std::optional<double> s = std::nullopt) const;

  bool references_s() const noexcept { return uses_s_; }
  bool references_t() const noexcept { return uses_t_; }

  /// Prefix rendering, e.g. "Add(Pow(t,2),1)".
  std::string to_string() const;
  const std::string& source() const noexcept { return source_; }

 private:
  friend Expr parse(std::string_view text);
  Expr(std::shared_ptr<const Node> root, std::string source);

  std::shared_ptr<const Node> root_;
  std::string source_;
  bool uses_t_ = false;
  bool uses_s_ = false;
};

/// Precedence, tightest first: ^ (right-assoc), unary -, * /, + -.
Expr parse(std::string_view text);

}  // namespace lvie::expr
