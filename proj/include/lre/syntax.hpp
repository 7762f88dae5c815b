#ifndef LRE_SYNTAX_HPP
#define LRE_SYNTAX_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lre {

enum class BaseType { Bool, Unit };

std::string_view to_string(BaseType b);

enum class ConstTag { True, False, UnitVal, EqOp, EqOpPartial };

/// A constant of the calculus.  `base` is meaningful for the two equality
/// forms; `inner` only for the staged operator produced by the first
/// reduction step of `(eq B)`.  Build through the factories below so that
/// irrelevant fields stay normalized and `==` is structural equality.
struct Const {
  ConstTag tag = ConstTag::UnitVal;
  BaseType base = BaseType::Unit;
  ConstTag inner = ConstTag::UnitVal;

  static Const tt() { return {ConstTag::True, BaseType::Bool, ConstTag::UnitVal}; }
  static Const ff() { return {ConstTag::False, BaseType::Bool, ConstTag::UnitVal}; }
  static Const unit() { return {ConstTag::UnitVal, BaseType::Unit, ConstTag::UnitVal}; }
  static Const eq(BaseType b) { return {ConstTag::EqOp, b, ConstTag::UnitVal}; }
  // `first` must be one of the three base constants.
  static Const eq_partial(const Const& first, BaseType b) {
    return {ConstTag::EqOpPartial, b, first.tag};
  }

  bool is_base_value() const {
    return tag == ConstTag::True || tag == ConstTag::False || tag == ConstTag::UnitVal;
  }
  // The base type a base constant inhabits.
  BaseType base_of() const { return tag == ConstTag::UnitVal ? BaseType::Unit : BaseType::Bool; }
  Const inner_const() const { return Const{inner, inner == ConstTag::UnitVal ? BaseType::Unit : BaseType::Bool, ConstTag::UnitVal}; }

  friend bool operator==(const Const&, const Const&) = default;
};

struct ExprNode;
struct TypeNode;
using Expr = std::shared_ptr<const ExprNode>;
using Type = std::shared_ptr<const TypeNode>;

struct Var {
  std::string name;
};
struct App {
  Expr fun;
  Expr arg;
};
struct Lam {
  std::string binder;
  Type annot;
  Expr body;
};
struct BEq {
  BaseType base;
  Expr left;
  Expr right;
  Expr proof;
};
// The binder scopes over `cod` only.
struct XEq {
  std::string binder;
  Type dom;
  Type cod;
  Expr left;
  Expr right;
  Expr proof;
};

struct ExprNode {
  std::variant<Const, Var, App, Lam, BEq, XEq> node;
};

struct Refined {
  std::string binder;
  BaseType base;
  Expr refinement;
};
struct Fun {
  std::string binder;
  Type dom;
  Type cod;
};
struct EqRT {
  Type index;
  Expr left;
  Expr right;
};

struct TypeNode {
  std::variant<Refined, Fun, EqRT> node;
};

template <class T>
const T* as(const Expr& e) {
  return std::get_if<T>(&e->node);
}
template <class T>
const T* as(const Type& t) {
  return std::get_if<T>(&t->node);
}

namespace mk {
Expr cnst(Const c);
Expr tt();
Expr ff();
Expr unit();
Expr eq(BaseType b);
Expr var(std::string name);
Expr app(Expr f, Expr a);
Expr app(Expr f, Expr a, Expr b);
Expr lam(std::string x, Type annot, Expr body);
Expr beq(BaseType b, Expr l, Expr r, Expr p);
Expr xeq(std::string x, Type dom, Type cod, Expr l, Expr r, Expr p);
// ((eq B) a) b
Expr eq_app(BaseType b, Expr a, Expr c);

Type refined(std::string v, BaseType b, Expr r);
// {v:B | true}
Type base(BaseType b);
Type fun(std::string x, Type dom, Type cod);
Type eqrt(Type index, Expr l, Expr r);
}  // namespace mk

/// Typing environment, innermost binding last.
class Env {
 public:
  Env() = default;
  explicit Env(std::vector<std::pair<std::string, Type>> bindings) : bindings_(std::move(bindings)) {}

  const std::vector<std::pair<std::string, Type>>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  std::optional<Type> lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name).has_value(); }
  Env extended(std::string name, Type t) const;
  std::set<std::string> names() const;

 private:
  std::vector<std::pair<std::string, Type>> bindings_;
};

std::set<std::string> free_vars(const Expr& e);
std::set<std::string> free_vars(const Type& t);

/// A name based on `base` that is not in `avoid` (primes appended).
std::string fresh_name(std::string base, const std::set<std::string>& avoid);

/// Capture-avoiding substitution e[x := v].
Expr subst(const Expr& e, const std::string& x, const Expr& v);
Type subst(const Type& t, const std::string& x, const Expr& v);

/// Simultaneous substitution of closed terms; binders shadow.
using ValueMap = std::vector<std::pair<std::string, Expr>>;
Expr close(const Expr& e, const ValueMap& m);
Type close(const Type& t, const ValueMap& m);

bool is_value(const Expr& e);

bool alpha_eq(const Expr& a, const Expr& b);
bool alpha_eq(const Type& a, const Type& b);

/// Node count of an expression (annotations not counted).
std::size_t size(const Expr& e);

/// {v:B | ((eq B) v) e}
Type selfify(BaseType b, const Expr& e);

/// The signature every constant is checked against.
Type tycon(const Const& c);

// True if the type contains no EqRT node.
bool is_equable(const Type& t);

std::string to_string(const Const& c);
std::string to_string(const Expr& e);
std::string to_string(const Type& t);

}  // namespace lre

#endif  // LRE_SYNTAX_HPP
