#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "greenbvp/error.hpp"

namespace greenbvp {

// Syntax error, unknown identifier or arity mismatch while parsing.
class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t offset,
             std::vector<std::string> expected = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Raised by evaluation instead of producing NaN: log of a non-positive
// number, sqrt of a negative number, 0^negative, negative^non-integer,
// division by zero. `offset` is the byte position of the failing
// sub-expression in the parsed text.
class EvalDomainError : public DomainError {
 public:
  EvalDomainError(const std::string& message, std::size_t offset, double t, double u);

  std::size_t offset() const noexcept { return offset_; }
  double t() const noexcept { return t_; }
  double u() const noexcept { return u_; }

 private:
  std::size_t offset_;
  double t_;
  double u_;
};

namespace expr_detail {
struct Node;
}

// Immutable expression in the variables t and u.
//
// Grammar (lowest to highest precedence):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative
//   primary := number | 't' | 'u' | 'pi' | name '(' expr (',' expr)* ')' | '(' expr ')'
// Functions: sin cos sinh cosh exp log sqrt abs (one argument),
// min max pow (two arguments).
class Expression {
 public:
  double eval(double t, double u) const;

  // Minimal-parenthesis rendering; parses back to an identical tree.
  std::string to_string() const;

  bool depends_on_t() const noexcept;
  bool depends_on_u() const noexcept;

  // The expression with t replaced by (1 - t).
  Expression reflect_t() const;

  bool structurally_equal(const Expression& other) const noexcept;

  const std::string& source() const noexcept { return source_; }

 private:
  friend Expression parse(std::string_view text);
  Expression(std::shared_ptr<const expr_detail::Node> root, std::string source);

  std::shared_ptr<const expr_detail::Node> root_;
  std::string source_;
};

Expression parse(std::string_view text);

}  // namespace greenbvp
