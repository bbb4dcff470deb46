#include "cqdist/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

#include "cqdist/error.hpp"

namespace cqdist {

namespace {

struct FuncEntry {
  std::string_view name;
  Func fn;
};

constexpr FuncEntry kFuncs[] = {
    {"sin", Func::Sin}, {"cos", Func::Cos},   {"tan", Func::Tan},
    {"exp", Func::Exp}, {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
};

const FuncEntry* find_func(std::string_view name) {
  for (const auto& f : kFuncs)
    if (f.name == name) return &f;
  return nullptr;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr run() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(fmt::format("unexpected '{}'", src_[pos_]), pos_);
    return e;
  }

 private:
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

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == src_.size()) throw ParseError(fmt::format("expected '{}' but input ended", c), pos_);
      throw ParseError(fmt::format("expected '{}'", c), pos_);
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::Add, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::Sub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::Mul, std::move(lhs), factor());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::Div, std::move(lhs), factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::neg(factor());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      negative = src_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("exponent must be an integer literal", start);
    if (pos_ < src_.size() &&
        (src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' || is_ident_char(src_[pos_]))) {
      throw ParseError("exponent must be an integer literal", start);
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(src_.data() + digits, src_.data() + pos_, value);
    if (ec != std::errc{}) throw ParseError("exponent out of range", start);
    return Expr::pow(std::move(base), negative ? -value : value);
  }

  Expr primary() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (is_ident_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      const std::string_view name = src_.substr(start, pos_ - start);
      skip_ws();
      const bool call = pos_ < src_.size() && src_[pos_] == '(';
      if (call) {
        const FuncEntry* f = find_func(name);
        if (f == nullptr) throw ParseError(fmt::format("unknown function '{}'", name), start);
        ++pos_;
        Expr arg = expr();
        expect(')');
        return Expr::call(f->fn, std::move(arg));
      }
      if (find_func(name) != nullptr) {
        throw ParseError(fmt::format("function '{}' requires an argument list", name), start);
      }
      if (name == "t") return Expr::var_t();
      if (name == "pi") return Expr::constant(std::numbers::pi);
      return Expr::param(std::string(name));
    }
    throw ParseError(fmt::format("unexpected '{}'", c), pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      const std::size_t from = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return pos_ - from;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent in number", start);
    }
    if (pos_ < src_.size() && is_ident_char(src_[pos_])) {
      throw ParseError("implicit multiplication is not allowed", pos_);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc{} || !std::isfinite(value)) throw ParseError("number out of range", start);
    return Expr::constant(value);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Dual arithmetic. The value component of every operation performs exactly
// the double operation eval() does, so the two paths agree bit for bit.
struct Dual {
  double v;
  double d;
};

Dual operator-(Dual a) { return {-a.v, -a.d}; }
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) {
  const double q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

double value_of(double x) { return x; }
double value_of(Dual x) { return x.v; }
bool finite(double x) { return std::isfinite(x); }
bool finite(Dual x) { return std::isfinite(x.v) && std::isfinite(x.d); }

double lift(double c, double) { return c; }
Dual lift(double c, Dual) { return {c, 0.0}; }

double apply(Func fn, double x) {
  switch (fn) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan: return std::tan(x);
    case Func::Exp: return std::exp(x);
    case Func::Sqrt: return std::sqrt(x);
    case Func::Abs: return std::abs(x);
  }
  return 0.0;
}

Dual apply(Func fn, Dual x) {
  switch (fn) {
    case Func::Sin: return {std::sin(x.v), std::cos(x.v) * x.d};
    case Func::Cos: return {std::cos(x.v), -std::sin(x.v) * x.d};
    case Func::Tan: {
      const double tv = std::tan(x.v);
      return {tv, (1.0 + tv * tv) * x.d};
    }
    case Func::Exp: {
      const double ev = std::exp(x.v);
      return {ev, ev * x.d};
    }
    case Func::Sqrt: {
      const double sv = std::sqrt(x.v);
      if (sv == 0.0) return {sv, x.d == 0.0 ? 0.0 : HUGE_VAL};
      return {sv, x.d / (2.0 * sv)};
    }
    case Func::Abs:
      return {std::abs(x.v), x.v > 0.0 ? x.d : (x.v < 0.0 ? -x.d : 0.0)};
  }
  return {};
}

template <class S>
S int_pow(S base, int exponent) {
  unsigned n = exponent < 0 ? 0u - static_cast<unsigned>(exponent) : static_cast<unsigned>(exponent);
  S result = lift(1.0, base);
  bool first = true;
  while (n != 0) {
    if (n & 1u) {
      result = first ? base : result * base;
      first = false;
    }
    n >>= 1u;
    if (n != 0) base = base * base;
  }
  return result;
}

template <class S>
class Evaluator {
 public:
  Evaluator(double t, const ParamMap& params) : t_(t), params_(params) {}

  S operator()(const Expr& e) const {
    S r = std::visit([this](const auto& n) { return eval_node(n); }, e.node());
    if (!finite(r)) throw DomainError("non-finite result", t_);
    return r;
  }

 private:
  S eval_node(const node::Const& n) const { return lift(n.value, seed()); }
  S eval_node(const node::VarT&) const { return seed(); }
  S eval_node(const node::Param& n) const {
    const auto it = params_.find(n.name);
    if (it == params_.end()) throw DomainError(fmt::format("unbound parameter '{}'", n.name), t_);
    return lift(it->second, seed());
  }
  S eval_node(const node::Neg& n) const { return -(*this)(*n.arg); }
  S eval_node(const node::Binary& n) const {
    const S a = (*this)(*n.lhs);
    const S b = (*this)(*n.rhs);
    switch (n.op) {
      case BinaryOp::Add: return a + b;
      case BinaryOp::Sub: return a - b;
      case BinaryOp::Mul: return a * b;
      case BinaryOp::Div:
        if (value_of(b) == 0.0) throw DomainError("division by zero", t_);
        return a / b;
    }
    return a;
  }
  S eval_node(const node::Pow& n) const {
    const S base = (*this)(*n.base);
    if (n.exponent >= 0) return int_pow(base, n.exponent);
    if (value_of(base) == 0.0) throw DomainError("division by zero in negative power", t_);
    return lift(1.0, base) / int_pow(base, n.exponent);
  }
  S eval_node(const node::Call& n) const {
    const S x = (*this)(*n.arg);
    if (n.fn == Func::Sqrt && value_of(x) < 0.0) throw DomainError("sqrt of negative value", t_);
    return apply(n.fn, x);
  }

  S seed() const {
    if constexpr (std::is_same_v<S, Dual>) {
      return Dual{t_, 1.0};
    } else {
      return t_;
    }
  }

  double t_;
  const ParamMap& params_;
};

bool is_atomic(const Expr& e) {
  return std::visit(
      [](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Const>) return n.value >= 0.0 && !std::signbit(n.value);
        return std::is_same_v<N, node::VarT> || std::is_same_v<N, node::Param> ||
               std::is_same_v<N, node::Call> || std::is_same_v<N, node::Binary>;
      },
      e.node());
}

std::string wrapped(const Expr& e) {
  return is_atomic(e) ? to_string(e) : "(" + to_string(e) + ")";
}

}  // namespace

Expr Expr::param(std::string name) {
  if (!is_valid_param_name(name)) throw std::invalid_argument("invalid parameter name '" + name + "'");
  return Expr(node::Param{std::move(name)});
}

Expr Expr::neg(Expr a) { return Expr(node::Neg{std::make_shared<const Expr>(std::move(a))}); }

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(node::Binary{op, std::make_shared<const Expr>(std::move(lhs)),
                           std::make_shared<const Expr>(std::move(rhs))});
}

Expr Expr::pow(Expr base, int exponent) {
  return Expr(node::Pow{std::make_shared<const Expr>(std::move(base)), exponent});
}

Expr Expr::call(Func fn, Expr arg) {
  return Expr(node::Call{fn, std::make_shared<const Expr>(std::move(arg))});
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b.node());
        if constexpr (std::is_same_v<N, node::Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<N, node::VarT>) {
          return true;
        } else if constexpr (std::is_same_v<N, node::Param>) {
          return x.name == y.name;
        } else if constexpr (std::is_same_v<N, node::Neg>) {
          return *x.arg == *y.arg;
        } else if constexpr (std::is_same_v<N, node::Binary>) {
          return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        } else if constexpr (std::is_same_v<N, node::Pow>) {
          return x.exponent == y.exponent && *x.base == *y.base;
        } else {
          return x.fn == y.fn && *x.arg == *y.arg;
        }
      },
      a.node());
}

Expr parse(std::string_view src) { return Parser(src).run(); }

std::string to_string(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Const>) {
          return n.value < 0.0 ? fmt::format("(-{})", -n.value) : fmt::format("{}", n.value);
        } else if constexpr (std::is_same_v<N, node::VarT>) {
          return "t";
        } else if constexpr (std::is_same_v<N, node::Param>) {
          return n.name;
        } else if constexpr (std::is_same_v<N, node::Neg>) {
          return "-" + wrapped(*n.arg);
        } else if constexpr (std::is_same_v<N, node::Binary>) {
          static constexpr const char* kOps[] = {" + ", " - ", " * ", " / "};
          return "(" + to_string(*n.lhs) + kOps[static_cast<int>(n.op)] + to_string(*n.rhs) + ")";
        } else if constexpr (std::is_same_v<N, node::Pow>) {
          return wrapped(*n.base) + "^" + std::to_string(n.exponent);
        } else {
          return std::string(func_name(n.fn)) + "(" + to_string(*n.arg) + ")";
        }
      },
      e.node());
}

double eval(const Expr& e, double t, const ParamMap& params) {
  return Evaluator<double>(t, params)(e);
}

DualValue eval_dual(const Expr& e, double t, const ParamMap& params) {
  const Dual r = Evaluator<Dual>(t, params)(e);
  return {r.v, r.d};
}

bool is_valid_param_name(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front())) return false;
  for (char c : name)
    if (!is_ident_char(c)) return false;
  return name != "t" && name != "pi" && find_func(name) == nullptr;
}

std::string_view func_name(Func fn) {
  for (const auto& f : kFuncs)
    if (f.fn == fn) return f.name;
  return "?";
}

}  // namespace cqdist
