#pragma once

// Real-valued expression language in the time variable t and named
// parameters. Grammar (whitespace insignificant):
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*
//   factor  := '-' factor | power
//   power   := primary ('^' integer)?
//   primary := number | 't' | 'pi' | ident | fn '(' expr ')' | '(' expr ')'
//   fn      := sin | cos | tan | exp | sqrt | abs
//
// '^' binds tighter than unary minus, so -t^2 is -(t^2). Exponents are
// (optionally signed) integer literals. There is no implicit
// multiplication: "2t" is a syntax error.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace cqdist {

using ParamMap = std::map<std::string, double, std::less<>>;

/// Value together with its derivative in t.
struct DualValue {
  double value = 0.0;
  double deriv = 0.0;
};

enum class Func { Sin, Cos, Tan, Exp, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div };

class Expr;

namespace node {
struct Const {
  double value;
};
struct VarT {};
struct Param {
  std::string name;
};
struct Neg {
  std::shared_ptr<const Expr> arg;
};
struct Binary {
  BinaryOp op;
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};
struct Pow {
  std::shared_ptr<const Expr> base;
  int exponent;
};
struct Call {
  Func fn;
  std::shared_ptr<const Expr> arg;
};
}  // namespace node

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  using Node = std::variant<node::Const, node::VarT, node::Param, node::Neg, node::Binary,
                            node::Pow, node::Call>;

  Expr() : Expr(node::Const{0.0}) {}
  explicit Expr(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static Expr constant(double v) { return Expr(node::Const{v}); }
  static Expr var_t() { return Expr(node::VarT{}); }
  static Expr param(std::string name);
  static Expr neg(Expr a);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr pow(Expr base, int exponent);
  static Expr call(Func fn, Expr arg);

  const Node& node() const noexcept { return *node_; }

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> node_;
};

/// Throws ParseError (with byte offset) on malformed input.
Expr parse(std::string_view src);

/// Fully parenthesized source text; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

/// Throws DomainError on unbound parameters, division by zero, sqrt of a
/// negative number or a non-finite result.
double eval(const Expr& e, double t, const ParamMap& params = {});

/// Forward-mode value and d/dt. The value is bit-identical to eval().
/// abs() has derivative 0 at its kink.
DualValue eval_dual(const Expr& e, double t, const ParamMap& params = {});

bool is_valid_param_name(std::string_view name);

std::string_view func_name(Func fn);

}  // namespace cqdist
