#ifndef LRE_PARSER_HPP
#define LRE_PARSER_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lre/syntax.hpp"

namespace lre {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raw s-expression with source position (1-based).
struct SExpr {
  bool is_atom = true;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_atom_named(std::string_view s) const { return is_atom && atom == s; }
};

std::vector<SExpr> read_sexps(std::string_view text);
// Exactly one datum, or ParseError.
SExpr read_sexp(std::string_view text);

Expr to_expr(const SExpr& s);
Type to_type(const SExpr& s);
BaseType to_base(const SExpr& s);
// `(x : type)` binding forms.
std::pair<std::string, Type> to_binding(const SExpr& s);
std::string to_ident(const SExpr& s);

Expr parse_expr(std::string_view text);
Type parse_type(std::string_view text);
// Types are recognized by their head (Bool, Unit, refine, fun, eqrt).
std::variant<Expr, Type> parse(std::string_view text);

bool is_reserved(std::string_view word);

}  // namespace lre

#endif  // LRE_PARSER_HPP
