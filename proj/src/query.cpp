#include "lre/query.hpp"

namespace lre {

namespace {

[[noreturn]] void fail(const SExpr& s, const std::string& msg) { throw ParseError(s.line, s.column, msg); }

bool is_env(const SExpr& s) { return !s.is_atom && !s.items.empty() && s.items[0].is_atom_named("env"); }

// Splits off the optional env and checks the remaining arity.
std::pair<Env, std::vector<SExpr>> args(const SExpr& s, std::size_t n, const char* head) {
  std::vector<SExpr> rest(s.items.begin() + 1, s.items.end());
  Env env;
  if (!rest.empty() && is_env(rest.front())) {
    env = to_env(rest.front());
    rest.erase(rest.begin());
  }
  if (rest.size() != n)
    fail(s, std::string("'") + head + "' expects " + std::to_string(n) + " arguments after the optional env");
  return {env, rest};
}

}  // namespace

Env to_env(const SExpr& s) {
  if (!is_env(s)) fail(s, "expected '(env (x : type) ...)'");
  Env env;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    auto [x, t] = to_binding(s.items[i]);
    if (env.contains(x)) fail(s.items[i], "duplicate binding '" + x + "'");
    env = env.extended(x, t);
  }
  return env;
}

Query to_query(const SExpr& s) {
  if (!s.is_atom && !s.items.empty() && s.items[0].is_atom) {
    const std::string& h = s.items[0].atom;
    if (h == "ascribe") {
      auto [env, a] = args(s, 2, "ascribe");
      return Ascribe{env, to_expr(a[0]), to_type(a[1])};
    }
    if (h == "subtype-query") {
      auto [env, a] = args(s, 2, "subtype-query");
      return SubtypeQuery{env, to_type(a[0]), to_type(a[1])};
    }
    if (h == "lr-query") {
      auto [env, a] = args(s, 3, "lr-query");
      return LrQuery{env, to_expr(a[0]), to_expr(a[1]), to_type(a[2])};
    }
    if (h == "sym-query") {
      auto [env, a] = args(s, 4, "sym-query");
      return SymQuery{env, to_expr(a[0]), to_type(a[1]), to_expr(a[2]), to_expr(a[3])};
    }
    if (h == "trans-query") {
      auto [env, a] = args(s, 6, "trans-query");
      return TransQuery{env, to_expr(a[0]), to_expr(a[1]), to_type(a[2]), to_expr(a[3]), to_expr(a[4]),
                        to_expr(a[5])};
    }
    if (h == "refine" || h == "fun" || h == "eqrt") return to_type(s);
  }
  if (s.is_atom_named("Bool") || s.is_atom_named("Unit")) return to_type(s);
  return to_expr(s);
}

Query parse_query(std::string_view text) { return to_query(read_sexp(text)); }

std::vector<Query> parse_queries(std::string_view text) {
  std::vector<Query> out;
  for (const SExpr& s : read_sexps(text)) out.push_back(to_query(s));
  return out;
}

std::string to_string(const Env& env) {
  std::string s = "(env";
  for (const auto& [x, t] : env.bindings()) s += " (" + x + " : " + to_string(t) + ")";
  return s + ")";
}

}  // namespace lre
