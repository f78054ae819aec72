#include "greenbvp/expr.hpp"

#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "greenbvp/params.hpp"

namespace greenbvp {

ParseError::ParseError(const std::string& message, std::size_t offset,
                       std::vector<std::string> expected)
    : InputError(message + " at offset " + std::to_string(offset)),
      offset_(offset),
      expected_(std::move(expected)) {}

EvalDomainError::EvalDomainError(const std::string& message, std::size_t offset, double t,
                                 double u)
    : DomainError(message + " (sub-expression at offset " + std::to_string(offset) +
                  ", t=" + std::to_string(t) + ", u=" + std::to_string(u) + ")"),
      offset_(offset),
      t_(t),
      u_(u) {}

namespace expr_detail {

enum class Op { number, pi, var_t, var_u, neg, add, sub, mul, div, pow, call };
enum class Fn { sin, cos, sinh, cosh, exp, log, sqrt, abs, min, max, pow };

using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::number;
  double value = 0.0;
  Fn fn = Fn::sin;
  std::vector<NodePtr> args;
  std::size_t pos = 0;
};

}  // namespace expr_detail

namespace {

using expr_detail::Fn;
using expr_detail::Node;
using expr_detail::NodePtr;
using expr_detail::Op;

struct FnInfo {
  std::string_view name;
  Fn fn;
  std::size_t arity;
};

constexpr std::array<FnInfo, 11> kFunctions{{
    {"sin", Fn::sin, 1},   {"cos", Fn::cos, 1},   {"sinh", Fn::sinh, 1},
    {"cosh", Fn::cosh, 1}, {"exp", Fn::exp, 1},   {"log", Fn::log, 1},
    {"sqrt", Fn::sqrt, 1}, {"abs", Fn::abs, 1},   {"min", Fn::min, 2},
    {"max", Fn::max, 2},   {"pow", Fn::pow, 2},
}};

const FnInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::string_view function_name(Fn fn) {
  for (const auto& f : kFunctions) {
    if (f.fn == fn) return f.name;
  }
  return "?";
}

NodePtr make(Op op, std::size_t pos, std::vector<NodePtr> args = {}, double value = 0.0,
             Fn fn = Fn::sin) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->pos = pos;
  n->args = std::move(args);
  n->value = value;
  n->fn = fn;
  return n;
}

const std::vector<std::string> kOperandStart{"number", "identifier", "'('", "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_, kOperandStart);
    NodePtr root = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) {
      throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_,
                       {"operator", "end of input"});
    }
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::optional<char> peek() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    return text_[pos_];
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      const auto c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t at = pos_++;
      NodePtr rhs = parse_term();
      lhs = make(*c == '+' ? Op::add : Op::sub, at, {lhs, rhs});
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (true) {
      const auto c = peek();
      if (c != '*' && c != '/') return lhs;
      const std::size_t at = pos_++;
      NodePtr rhs = parse_unary();
      lhs = make(*c == '*' ? Op::mul : Op::div, at, {lhs, rhs});
    }
  }

  NodePtr parse_unary() {
    if (peek() == '-') {
      const std::size_t at = pos_++;
      return make(Op::neg, at, {parse_unary()});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (peek() == '^') {
      const std::size_t at = pos_++;
      NodePtr exponent = parse_unary();
      return make(Op::pow, at, {base, exponent});
    }
    return base;
  }

  NodePtr parse_primary() {
    const auto c = peek();
    if (!c) throw ParseError("unexpected end of input", pos_, kOperandStart);
    const std::size_t start = pos_;
    if (*c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(*c)) || *c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(*c)) || *c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "t") return make(Op::var_t, start);
      if (name == "u") return make(Op::var_u, start);
      if (name == "pi") return make(Op::pi, start, {}, kPi);
      const FnInfo* info = find_function(name);
      if (!info) throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      if (peek() != '(') {
        throw ParseError("expected '(' after function name '" + std::string(name) + "'",
                         pos_, {"'('"});
      }
      ++pos_;
      std::vector<NodePtr> args{parse_expr()};
      while (peek() == ',') {
        ++pos_;
        args.push_back(parse_expr());
      }
      expect(')');
      if (args.size() != info->arity) {
        throw ParseError("function '" + std::string(name) + "' takes " +
                             std::to_string(info->arity) + " argument(s), got " +
                             std::to_string(args.size()),
                         start);
      }
      return make(Op::call, start, std::move(args), 0.0, info->fn);
    }
    throw ParseError(std::string("unexpected character '") + *c + "'", start, kOperandStart);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string_view lit = text_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (ec != std::errc() || ptr != lit.data() + lit.size() || !std::isfinite(value)) {
      throw ParseError("malformed number '" + std::string(lit) + "'", start, {"number"});
    }
    return make(Op::number, start, {}, value);
  }

  void expect(char c) {
    if (peek() != c) {
      std::string what = pos_ >= text_.size() ? std::string("unexpected end of input")
                                               : std::string("unexpected character '") +
                                                     text_[pos_] + "'";
      throw ParseError(what, pos_, {std::string("'") + c + "'"});
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double checked_pow(double base, double exponent, std::size_t pos, double t, double u) {
  if (base == 0.0 && exponent < 0.0) {
    throw EvalDomainError("zero raised to a negative power", pos, t, u);
  }
  if (base < 0.0 && exponent != std::trunc(exponent)) {
    throw EvalDomainError("negative base with non-integer exponent", pos, t, u);
  }
  return std::pow(base, exponent);
}

double eval_node(const Node& n, double t, double u) {
  switch (n.op) {
    case Op::number:
    case Op::pi: return n.value;
    case Op::var_t: return t;
    case Op::var_u: return u;
    case Op::neg: return -eval_node(*n.args[0], t, u);
    case Op::add: return eval_node(*n.args[0], t, u) + eval_node(*n.args[1], t, u);
    case Op::sub: return eval_node(*n.args[0], t, u) - eval_node(*n.args[1], t, u);
    case Op::mul: return eval_node(*n.args[0], t, u) * eval_node(*n.args[1], t, u);
    case Op::div: {
      const double num = eval_node(*n.args[0], t, u);
      const double den = eval_node(*n.args[1], t, u);
      if (den == 0.0) throw EvalDomainError("division by zero", n.pos, t, u);
      return num / den;
    }
    case Op::pow:
      return checked_pow(eval_node(*n.args[0], t, u), eval_node(*n.args[1], t, u), n.pos, t, u);
    case Op::call: {
      const double x = eval_node(*n.args[0], t, u);
      switch (n.fn) {
        case Fn::sin: return std::sin(x);
        case Fn::cos: return std::cos(x);
        case Fn::sinh: return std::sinh(x);
        case Fn::cosh: return std::cosh(x);
        case Fn::exp: return std::exp(x);
        case Fn::log:
          if (!(x > 0.0)) throw EvalDomainError("log of non-positive argument", n.pos, t, u);
          return std::log(x);
        case Fn::sqrt:
          if (x < 0.0) throw EvalDomainError("sqrt of negative argument", n.pos, t, u);
          return std::sqrt(x);
        case Fn::abs: return std::abs(x);
        case Fn::min: return std::fmin(x, eval_node(*n.args[1], t, u));
        case Fn::max: return std::fmax(x, eval_node(*n.args[1], t, u));
        case Fn::pow: return checked_pow(x, eval_node(*n.args[1], t, u), n.pos, t, u);
      }
      break;
    }
  }
  return 0.0;
}

int precedence(const Node& n) {
  switch (n.op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void render(const Node& n, std::string& out);

void render_wrapped(const Node& n, bool wrap, std::string& out) {
  if (wrap) out += '(';
  render(n, out);
  if (wrap) out += ')';
}

void render(const Node& n, std::string& out) {
  switch (n.op) {
    case Op::number: out += format_number(n.value); return;
    case Op::pi: out += "pi"; return;
    case Op::var_t: out += 't'; return;
    case Op::var_u: out += 'u'; return;
    case Op::neg:
      out += '-';
      render_wrapped(*n.args[0], precedence(*n.args[0]) < 3, out);
      return;
    case Op::add:
    case Op::sub:
      render_wrapped(*n.args[0], false, out);
      out += n.op == Op::add ? " + " : " - ";
      render_wrapped(*n.args[1], precedence(*n.args[1]) <= 1, out);
      return;
    case Op::mul:
    case Op::div:
      render_wrapped(*n.args[0], precedence(*n.args[0]) < 2, out);
      out += n.op == Op::mul ? '*' : '/';
      render_wrapped(*n.args[1], precedence(*n.args[1]) <= 2, out);
      return;
    case Op::pow:
      render_wrapped(*n.args[0], precedence(*n.args[0]) <= 4, out);
      out += '^';
      render_wrapped(*n.args[1], precedence(*n.args[1]) < 3, out);
      return;
    case Op::call:
      out += function_name(n.fn);
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        render(*n.args[i], out);
      }
      out += ')';
      return;
  }
}

bool contains(const Node& n, Op op) {
  if (n.op == op) return true;
  for (const auto& a : n.args) {
    if (contains(*a, op)) return true;
  }
  return false;
}

NodePtr reflect(const NodePtr& n) {
  if (n->op == Op::var_t) {
    return make(Op::sub, n->pos, {make(Op::number, n->pos, {}, 1.0), n});
  }
  if (n->args.empty()) return n;
  std::vector<NodePtr> args;
  args.reserve(n->args.size());
  for (const auto& a : n->args) args.push_back(reflect(a));
  return make(n->op, n->pos, std::move(args), n->value, n->fn);
}

bool equal(const Node& a, const Node& b) {
  if (a.op != b.op || a.args.size() != b.args.size()) return false;
  if ((a.op == Op::number || a.op == Op::pi) && a.value != b.value) return false;
  if (a.op == Op::call && a.fn != b.fn) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (!equal(*a.args[i], *b.args[i])) return false;
  }
  return true;
}

}  // namespace

Expression::Expression(std::shared_ptr<const expr_detail::Node> root, std::string source)
    : root_(std::move(root)), source_(std::move(source)) {}

double Expression::eval(double t, double u) const { return eval_node(*root_, t, u); }

std::string Expression::to_string() const {
  std::string out;
  render(*root_, out);
  return out;
}

bool Expression::depends_on_t() const noexcept { return contains(*root_, Op::var_t); }
bool Expression::depends_on_u() const noexcept { return contains(*root_, Op::var_u); }

Expression Expression::reflect_t() const {
  NodePtr root = reflect(root_);
  std::string text;
  render(*root, text);
  return Expression(std::move(root), std::move(text));
}

bool Expression::structurally_equal(const Expression& other) const noexcept {
  return equal(*root_, *other.root_);
}

Expression parse(std::string_view text) {
  Parser p(text);
  NodePtr root = p.parse_all();
  return Expression(std::move(root), std::string(text));
}

}  // namespace greenbvp
