#include "lre/parser.hpp"

#include <array>
#include <cctype>

namespace lre {

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

constexpr std::array kReserved{"true", "false", "unit", "lam",  "eq",   "beq", "xeq",
                               "refine", "fun", "eqrt", "Bool", "Unit", ":",   "env"};

bool is_delim(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';' || c == ':'; }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> all() {
    std::vector<SExpr> out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(datum());
      skip_ws();
    }
    return out;
  }

 private:
  SExpr datum() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(line_, col_, "unexpected end of input");
    SExpr s;
    s.line = line_;
    s.column = col_;
    char c = text_[pos_];
    if (c == ')') throw ParseError(line_, col_, "unexpected ')'");
    if (c == '(') {
      advance();
      s.is_atom = false;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError(s.line, s.column, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        s.items.push_back(datum());
      }
      return s;
    }
    if (c == ':') {
      advance();
      s.atom = ":";
      return s;
    }
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      s.atom += text_[pos_];
      advance();
    }
    return s;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

[[noreturn]] void fail(const SExpr& s, const std::string& msg) { throw ParseError(s.line, s.column, msg); }

bool head_is(const SExpr& s, std::string_view name) {
  return !s.is_atom && !s.items.empty() && s.items[0].is_atom_named(name);
}

void expect_arity(const SExpr& s, std::size_t n, std::string_view form) {
  if (s.items.size() != n)
    fail(s, "'" + std::string(form) + "' expects " + std::to_string(n - 1) + " arguments, got " +
                std::to_string(s.items.size() - 1));
}

std::optional<Const> base_const(const SExpr& s) {
  if (!s.is_atom) return std::nullopt;
  if (s.atom == "true") return Const::tt();
  if (s.atom == "false") return Const::ff();
  if (s.atom == "unit") return Const::unit();
  return std::nullopt;
}

}  // namespace

bool is_reserved(std::string_view word) {
  for (const char* r : kReserved)
    if (word == r) return true;
  return false;
}

std::vector<SExpr> read_sexps(std::string_view text) { return Reader(text).all(); }

SExpr read_sexp(std::string_view text) {
  auto all = read_sexps(text);
  if (all.empty()) throw ParseError(1, 1, "empty input");
  if (all.size() > 1) throw ParseError(all[1].line, all[1].column, "trailing input after datum");
  return all.front();
}

std::string to_ident(const SExpr& s) {
  if (!s.is_atom) fail(s, "expected an identifier");
  if (is_reserved(s.atom)) fail(s, "'" + s.atom + "' is reserved");
  unsigned char c0 = static_cast<unsigned char>(s.atom.front());
  if (!(std::isalpha(c0) || c0 == '_')) fail(s, "malformed identifier '" + s.atom + "'");
  return s.atom;
}

BaseType to_base(const SExpr& s) {
  if (s.is_atom_named("Bool")) return BaseType::Bool;
  if (s.is_atom_named("Unit")) return BaseType::Unit;
  fail(s, "expected a base type (Bool or Unit)");
}

std::pair<std::string, Type> to_binding(const SExpr& s) {
  if (s.is_atom || s.items.size() != 3 || !s.items[1].is_atom_named(":"))
    fail(s, "expected a binding '(name : type)'");
  return {to_ident(s.items[0]), to_type(s.items[2])};
}

Type to_type(const SExpr& s) {
  if (s.is_atom) return mk::base(to_base(s));
  if (s.items.empty()) fail(s, "empty type");
  if (head_is(s, "refine")) {
    expect_arity(s, 3, "refine");
    const SExpr& b = s.items[1];
    if (b.is_atom || b.items.size() != 3 || !b.items[1].is_atom_named(":"))
      fail(b, "expected '(name : base)'");
    return mk::refined(to_ident(b.items[0]), to_base(b.items[2]), to_expr(s.items[2]));
  }
  if (head_is(s, "fun")) {
    expect_arity(s, 3, "fun");
    auto [x, dom] = to_binding(s.items[1]);
    return mk::fun(x, dom, to_type(s.items[2]));
  }
  if (head_is(s, "eqrt")) {
    expect_arity(s, 4, "eqrt");
    return mk::eqrt(to_type(s.items[1]), to_expr(s.items[2]), to_expr(s.items[3]));
  }
  fail(s, "expected a type");
}

Expr to_expr(const SExpr& s) {
  if (s.is_atom) {
    if (auto c = base_const(s)) return mk::cnst(*c);
    return mk::var(to_ident(s));
  }
  if (s.items.empty()) fail(s, "empty application");
  if (head_is(s, "lam")) {
    expect_arity(s, 3, "lam");
    auto [x, t] = to_binding(s.items[1]);
    return mk::lam(x, t, to_expr(s.items[2]));
  }
  if (head_is(s, "eq")) {
    // (eq B) is the operator; (eq B c) is its staged form after one argument.
    if (s.items.size() == 2) return mk::eq(to_base(s.items[1]));
    if (s.items.size() == 3) {
      BaseType b = to_base(s.items[1]);
      auto c = base_const(s.items[2]);
      if (!c || c->base_of() != b) fail(s.items[2], "staged equality needs a constant of its base type");
      return mk::cnst(Const::eq_partial(*c, b));
    }
    fail(s, "'eq' expects a base type");
  }
  if (head_is(s, "beq")) {
    expect_arity(s, 5, "beq");
    return mk::beq(to_base(s.items[1]), to_expr(s.items[2]), to_expr(s.items[3]), to_expr(s.items[4]));
  }
  if (head_is(s, "xeq")) {
    expect_arity(s, 6, "xeq");
    auto [x, dom] = to_binding(s.items[1]);
    return mk::xeq(x, dom, to_type(s.items[2]), to_expr(s.items[3]), to_expr(s.items[4]), to_expr(s.items[5]));
  }
  if (s.items.size() == 1) fail(s, "application needs at least two items");
  if (!s.items[0].is_atom && s.items[0].items.empty()) fail(s.items[0], "empty application");
  if (s.items[0].is_atom && is_reserved(s.items[0].atom) && !base_const(s.items[0]))
    fail(s.items[0], "'" + s.items[0].atom + "' cannot head an application");
  Expr acc = to_expr(s.items[0]);
  for (std::size_t i = 1; i < s.items.size(); ++i) acc = mk::app(acc, to_expr(s.items[i]));
  return acc;
}

Expr parse_expr(std::string_view text) { return to_expr(read_sexp(text)); }
Type parse_type(std::string_view text) { return to_type(read_sexp(text)); }

std::variant<Expr, Type> parse(std::string_view text) {
  SExpr s = read_sexp(text);
  if (s.is_atom_named("Bool") || s.is_atom_named("Unit") || head_is(s, "refine") || head_is(s, "fun") ||
      head_is(s, "eqrt"))
    return to_type(s);
  return to_expr(s);
}

}  // namespace lre
