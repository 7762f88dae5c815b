#ifndef LRE_QUERY_HPP
#define LRE_QUERY_HPP

#include <string_view>
#include <variant>
#include <vector>

#include "lre/parser.hpp"
#include "lre/syntax.hpp"

namespace lre {

// File-level forms.  Each may start with an optional `(env (x : t) ...)`.
struct Ascribe {  // (ascribe [env] e t)
  Env env;
  Expr expr;
  Type type;
};
struct SubtypeQuery {  // (subtype-query [env] t1 t2)
  Env env;
  Type sub;
  Type super;
};
struct LrQuery {  // (lr-query [env] e1 e2 t)
  Env env;
  Expr left;
  Expr right;
  Type type;
};
struct SymQuery {  // (sym-query [env] p t e1 e2)
  Env env;
  Expr proof;
  Type type;
  Expr left;
  Expr right;
};
struct TransQuery {  // (trans-query [env] p12 p23 t e1 e2 e3)
  Env env;
  Expr p12;
  Expr p23;
  Type type;
  Expr e1;
  Expr e2;
  Expr e3;
};

using Query = std::variant<Expr, Type, Ascribe, SubtypeQuery, LrQuery, SymQuery, TransQuery>;

Env to_env(const SExpr& s);
Query to_query(const SExpr& s);

/// Exactly one form.
Query parse_query(std::string_view text);
/// Any number of forms.
std::vector<Query> parse_queries(std::string_view text);

std::string to_string(const Env& env);

}  // namespace lre

#endif  // LRE_QUERY_HPP
