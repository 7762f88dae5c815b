#include "lre/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lre {

std::string_view to_string(BaseType b) { return b == BaseType::Bool ? "Bool" : "Unit"; }

namespace mk {
Expr cnst(Const c) { return std::make_shared<ExprNode>(ExprNode{c}); }
Expr tt() { return cnst(Const::tt()); }
Expr ff() { return cnst(Const::ff()); }
Expr unit() { return cnst(Const::unit()); }
Expr eq(BaseType b) { return cnst(Const::eq(b)); }
Expr var(std::string name) { return std::make_shared<ExprNode>(ExprNode{Var{std::move(name)}}); }
Expr app(Expr f, Expr a) { return std::make_shared<ExprNode>(ExprNode{App{std::move(f), std::move(a)}}); }
Expr app(Expr f, Expr a, Expr b) { return app(app(std::move(f), std::move(a)), std::move(b)); }
Expr lam(std::string x, Type annot, Expr body) {
  return std::make_shared<ExprNode>(ExprNode{Lam{std::move(x), std::move(annot), std::move(body)}});
}
Expr beq(BaseType b, Expr l, Expr r, Expr p) {
  return std::make_shared<ExprNode>(ExprNode{BEq{b, std::move(l), std::move(r), std::move(p)}});
}
Expr xeq(std::string x, Type dom, Type cod, Expr l, Expr r, Expr p) {
  return std::make_shared<ExprNode>(
      ExprNode{XEq{std::move(x), std::move(dom), std::move(cod), std::move(l), std::move(r), std::move(p)}});
}
Expr eq_app(BaseType b, Expr a, Expr c) { return app(eq(b), std::move(a), std::move(c)); }

Type refined(std::string v, BaseType b, Expr r) {
  return std::make_shared<TypeNode>(TypeNode{Refined{std::move(v), b, std::move(r)}});
}
Type base(BaseType b) { return refined("v", b, tt()); }
Type fun(std::string x, Type dom, Type cod) {
  return std::make_shared<TypeNode>(TypeNode{Fun{std::move(x), std::move(dom), std::move(cod)}});
}
Type eqrt(Type index, Expr l, Expr r) {
  return std::make_shared<TypeNode>(TypeNode{EqRT{std::move(index), std::move(l), std::move(r)}});
}
}  // namespace mk

std::optional<Type> Env::lookup(std::string_view name) const {
  for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
    if (it->first == name) return it->second;
  return std::nullopt;
}

Env Env::extended(std::string name, Type t) const {
  Env out = *this;
  out.bindings_.emplace_back(std::move(name), std::move(t));
  return out;
}

std::set<std::string> Env::names() const {
  std::set<std::string> out;
  for (const auto& [n, _] : bindings_) out.insert(n);
  return out;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_fv(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out);
void collect_fv(const Type& t, std::set<std::string>& bound, std::set<std::string>& out);

// Runs `f` with `x` added to `bound`, restoring the set afterwards.
template <class F>
void under(std::set<std::string>& bound, const std::string& x, F&& f) {
  bool inserted = bound.insert(x).second;
  f();
  if (inserted) bound.erase(x);
}

void collect_fv(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Var>) {
          if (!bound.count(n.name)) out.insert(n.name);
        } else if constexpr (std::is_same_v<N, App>) {
          collect_fv(n.fun, bound, out);
          collect_fv(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, Lam>) {
          collect_fv(n.annot, bound, out);
          under(bound, n.binder, [&] { collect_fv(n.body, bound, out); });
        } else if constexpr (std::is_same_v<N, BEq>) {
          collect_fv(n.left, bound, out);
          collect_fv(n.right, bound, out);
          collect_fv(n.proof, bound, out);
        } else if constexpr (std::is_same_v<N, XEq>) {
          collect_fv(n.dom, bound, out);
          under(bound, n.binder, [&] { collect_fv(n.cod, bound, out); });
          collect_fv(n.left, bound, out);
          collect_fv(n.right, bound, out);
          collect_fv(n.proof, bound, out);
        }
      },
      e->node);
}

void collect_fv(const Type& t, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Refined>) {
          under(bound, n.binder, [&] { collect_fv(n.refinement, bound, out); });
        } else if constexpr (std::is_same_v<N, Fun>) {
          collect_fv(n.dom, bound, out);
          under(bound, n.binder, [&] { collect_fv(n.cod, bound, out); });
        } else {
          collect_fv(n.index, bound, out);
          collect_fv(n.left, bound, out);
          collect_fv(n.right, bound, out);
        }
      },
      t->node);
}

}  // namespace

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> bound, out;
  collect_fv(e, bound, out);
  return out;
}

std::set<std::string> free_vars(const Type& t) {
  std::set<std::string> bound, out;
  collect_fv(t, bound, out);
  return out;
}

std::string fresh_name(std::string base, const std::set<std::string>& avoid) {
  while (avoid.count(base)) base += '\'';
  return base;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

class Substituter {
 public:
  Substituter(const std::string& x, const Expr& v) : x_(x), v_(v), fv_v_(free_vars(v)) {}

  Expr go(const Expr& e) {
    return std::visit(
        [&](const auto& n) -> Expr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Const>) {
            return e;
          } else if constexpr (std::is_same_v<N, Var>) {
            return n.name == x_ ? v_ : e;
          } else if constexpr (std::is_same_v<N, App>) {
            return mk::app(go(n.fun), go(n.arg));
          } else if constexpr (std::is_same_v<N, Lam>) {
            Type annot = go(n.annot);
            auto [y, body] = enter(n.binder, n.body);
            return mk::lam(y, annot, body);
          } else if constexpr (std::is_same_v<N, BEq>) {
            return mk::beq(n.base, go(n.left), go(n.right), go(n.proof));
          } else {
            Type dom = go(n.dom);
            auto [y, cod] = enter(n.binder, n.cod);
            return mk::xeq(y, dom, cod, go(n.left), go(n.right), go(n.proof));
          }
        },
        e->node);
  }

  Type go(const Type& t) {
    return std::visit(
        [&](const auto& n) -> Type {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Refined>) {
            auto [y, r] = enter(n.binder, n.refinement);
            return mk::refined(y, n.base, r);
          } else if constexpr (std::is_same_v<N, Fun>) {
            Type dom = go(n.dom);
            auto [y, cod] = enter(n.binder, n.cod);
            return mk::fun(y, dom, cod);
          } else {
            return mk::eqrt(go(n.index), go(n.left), go(n.right));
          }
        },
        t->node);
  }

 private:
  // Substitutes under binder `y`, renaming it when it would capture.
  template <class Body>
  std::pair<std::string, Body> enter(const std::string& y, const Body& body) {
    if (y == x_) return {y, body};
    auto fv_body = free_vars(body);
    if (!fv_body.count(x_)) return {y, body};
    if (!fv_v_.count(y)) return {y, go(body)};
    std::set<std::string> avoid = fv_v_;
    avoid.insert(fv_body.begin(), fv_body.end());
    avoid.insert(x_);
    std::string y2 = fresh_name(y, avoid);
    Body renamed = subst(body, y, mk::var(y2));
    return {y2, go(renamed)};
  }

  const std::string& x_;
  const Expr& v_;
  std::set<std::string> fv_v_;
};

}  // namespace

Expr subst(const Expr& e, const std::string& x, const Expr& v) {
  if (!free_vars(e).count(x)) return e;
  return Substituter(x, v).go(e);
}

Type subst(const Type& t, const std::string& x, const Expr& v) {
  if (!free_vars(t).count(x)) return t;
  return Substituter(x, v).go(t);
}

namespace {

class Closer {
 public:
  explicit Closer(ValueMap m) : m_(std::move(m)) {}

  Expr go(const Expr& e) {
    return std::visit(
        [&](const auto& n) -> Expr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Const>) {
            return e;
          } else if constexpr (std::is_same_v<N, Var>) {
            if (const Expr* v = find(n.name)) return *v;
            return e;
          } else if constexpr (std::is_same_v<N, App>) {
            return mk::app(go(n.fun), go(n.arg));
          } else if constexpr (std::is_same_v<N, Lam>) {
            Type annot = go(n.annot);
            return mk::lam(n.binder, annot, shadowed(n.binder, n.body));
          } else if constexpr (std::is_same_v<N, BEq>) {
            return mk::beq(n.base, go(n.left), go(n.right), go(n.proof));
          } else {
            Type dom = go(n.dom);
            Type cod = shadowed(n.binder, n.cod);
            return mk::xeq(n.binder, dom, cod, go(n.left), go(n.right), go(n.proof));
          }
        },
        e->node);
  }

  Type go(const Type& t) {
    return std::visit(
        [&](const auto& n) -> Type {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Refined>) {
            return mk::refined(n.binder, n.base, shadowed(n.binder, n.refinement));
          } else if constexpr (std::is_same_v<N, Fun>) {
            Type dom = go(n.dom);
            return mk::fun(n.binder, dom, shadowed(n.binder, n.cod));
          } else {
            return mk::eqrt(go(n.index), go(n.left), go(n.right));
          }
        },
        t->node);
  }

 private:
  const Expr* find(const std::string& name) const {
    for (auto it = m_.rbegin(); it != m_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  template <class Body>
  Body shadowed(const std::string& y, const Body& body) {
    if (!find(y)) return go(body);
    ValueMap inner;
    for (const auto& kv : m_)
      if (kv.first != y) inner.push_back(kv);
    return Closer(std::move(inner)).go(body);
  }

  ValueMap m_;
};

}  // namespace

Expr close(const Expr& e, const ValueMap& m) {
  if (m.empty()) return e;
  return Closer(m).go(e);
}

Type close(const Type& t, const ValueMap& m) {
  if (m.empty()) return t;
  return Closer(m).go(t);
}

bool is_value(const Expr& e) {
  if (as<Const>(e) || as<Lam>(e)) return true;
  if (const auto* b = as<BEq>(e)) return is_value(b->proof);
  if (const auto* x = as<XEq>(e)) return is_value(x->proof);
  return false;
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

class AlphaEq {
 public:
  bool go(const Expr& a, const Expr& b) {
    if (a == b && left_.empty() && right_.empty()) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& n) -> bool {
          using N = std::decay_t<decltype(n)>;
          const auto& m = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, Const>) {
            return n == m;
          } else if constexpr (std::is_same_v<N, Var>) {
            int i = depth_of(left_, n.name), j = depth_of(right_, m.name);
            if (i < 0 && j < 0) return n.name == m.name;
            return i == j;
          } else if constexpr (std::is_same_v<N, App>) {
            return go(n.fun, m.fun) && go(n.arg, m.arg);
          } else if constexpr (std::is_same_v<N, Lam>) {
            return go(n.annot, m.annot) && bind(n.binder, m.binder, [&] { return go(n.body, m.body); });
          } else if constexpr (std::is_same_v<N, BEq>) {
            return n.base == m.base && go(n.left, m.left) && go(n.right, m.right) && go(n.proof, m.proof);
          } else {
            return go(n.dom, m.dom) && bind(n.binder, m.binder, [&] { return go(n.cod, m.cod); }) &&
                   go(n.left, m.left) && go(n.right, m.right) && go(n.proof, m.proof);
          }
        },
        a->node);
  }

  bool go(const Type& a, const Type& b) {
    if (a == b && left_.empty() && right_.empty()) return true;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& n) -> bool {
          using N = std::decay_t<decltype(n)>;
          const auto& m = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, Refined>) {
            return n.base == m.base && bind(n.binder, m.binder, [&] { return go(n.refinement, m.refinement); });
          } else if constexpr (std::is_same_v<N, Fun>) {
            return go(n.dom, m.dom) && bind(n.binder, m.binder, [&] { return go(n.cod, m.cod); });
          } else {
            return go(n.index, m.index) && go(n.left, m.left) && go(n.right, m.right);
          }
        },
        a->node);
  }

 private:
  static int depth_of(const std::vector<std::string>& stack, const std::string& name) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i)
      if (stack[i] == name) return static_cast<int>(stack.size()) - 1 - i;
    return -1;
  }

  template <class F>
  bool bind(const std::string& x, const std::string& y, F&& f) {
    left_.push_back(x);
    right_.push_back(y);
    bool r = f();
    left_.pop_back();
    right_.pop_back();
    return r;
  }

  std::vector<std::string> left_, right_;
};

}  // namespace

bool alpha_eq(const Expr& a, const Expr& b) { return AlphaEq{}.go(a, b); }
bool alpha_eq(const Type& a, const Type& b) { return AlphaEq{}.go(a, b); }

std::size_t size(const Expr& e) {
  return std::visit(
      [&](const auto& n) -> std::size_t {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Const> || std::is_same_v<N, Var>) {
          return 1;
        } else if constexpr (std::is_same_v<N, App>) {
          return 1 + size(n.fun) + size(n.arg);
        } else if constexpr (std::is_same_v<N, Lam>) {
          return 1 + size(n.body);
        } else {
          return 1 + size(n.left) + size(n.right) + size(n.proof);
        }
      },
      e->node);
}

Type selfify(BaseType b, const Expr& e) {
  std::string v = fresh_name("v", free_vars(e));
  return mk::refined(v, b, mk::eq_app(b, mk::var(v), e));
}

Type tycon(const Const& c) {
  switch (c.tag) {
    case ConstTag::True:
    case ConstTag::False:
    case ConstTag::UnitVal: {
      BaseType b = c.base_of();
      return mk::refined("v", b, mk::eq_app(b, mk::var("v"), mk::cnst(c)));
    }
    case ConstTag::EqOp: {
      Expr inner = mk::eq_app(c.base, mk::var("x"), mk::var("y"));
      Type res = mk::refined("v", BaseType::Bool, mk::eq_app(BaseType::Bool, mk::var("v"), inner));
      return mk::fun("x", mk::base(c.base), mk::fun("y", mk::base(c.base), res));
    }
    case ConstTag::EqOpPartial: {
      Expr inner = mk::eq_app(c.base, mk::cnst(c.inner_const()), mk::var("y"));
      Type res = mk::refined("v", BaseType::Bool, mk::eq_app(BaseType::Bool, mk::var("v"), inner));
      return mk::fun("y", mk::base(c.base), res);
    }
  }
  return nullptr;
}

bool is_equable(const Type& t) {
  if (as<EqRT>(t)) return false;
  if (const auto* f = as<Fun>(t)) return is_equable(f->dom) && is_equable(f->cod);
  return true;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Const& c) {
  switch (c.tag) {
    case ConstTag::True: return "true";
    case ConstTag::False: return "false";
    case ConstTag::UnitVal: return "unit";
    case ConstTag::EqOp: return "(eq " + std::string(to_string(c.base)) + ")";
    case ConstTag::EqOpPartial:
      return "(eq " + std::string(to_string(c.base)) + " " + to_string(c.inner_const()) + ")";
  }
  return "?";
}

namespace {

void print(std::ostream& os, const Expr& e);
void print(std::ostream& os, const Type& t);

void print_binding(std::ostream& os, const std::string& x, const Type& t) {
  os << '(' << x << " : ";
  print(os, t);
  os << ')';
}

void print(std::ostream& os, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Const>) {
          os << to_string(n);
        } else if constexpr (std::is_same_v<N, Var>) {
          os << n.name;
        } else if constexpr (std::is_same_v<N, App>) {
          // Flatten the left spine: (f a b c).
          std::vector<const Expr*> args;
          const Expr* head = &e;
          while (const auto* a = as<App>(*head)) {
            args.push_back(&a->arg);
            head = &a->fun;
          }
          os << '(';
          print(os, *head);
          for (auto it = args.rbegin(); it != args.rend(); ++it) {
            os << ' ';
            print(os, **it);
          }
          os << ')';
        } else if constexpr (std::is_same_v<N, Lam>) {
          os << "(lam ";
          print_binding(os, n.binder, n.annot);
          os << ' ';
          print(os, n.body);
          os << ')';
        } else if constexpr (std::is_same_v<N, BEq>) {
          os << "(beq " << to_string(n.base) << ' ';
          print(os, n.left);
          os << ' ';
          print(os, n.right);
          os << ' ';
          print(os, n.proof);
          os << ')';
        } else {
          os << "(xeq ";
          print_binding(os, n.binder, n.dom);
          os << ' ';
          print(os, n.cod);
          os << ' ';
          print(os, n.left);
          os << ' ';
          print(os, n.right);
          os << ' ';
          print(os, n.proof);
          os << ')';
        }
      },
      e->node);
}

void print(std::ostream& os, const Type& t) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Refined>) {
          const auto* c = as<Const>(n.refinement);
          if (c && c->tag == ConstTag::True) {
            os << to_string(n.base);
            return;
          }
          os << "(refine (" << n.binder << " : " << to_string(n.base) << ") ";
          print(os, n.refinement);
          os << ')';
        } else if constexpr (std::is_same_v<N, Fun>) {
          os << "(fun ";
          print_binding(os, n.binder, n.dom);
          os << ' ';
          print(os, n.cod);
          os << ')';
        } else {
          os << "(eqrt ";
          print(os, n.index);
          os << ' ';
          print(os, n.left);
          os << ' ';
          print(os, n.right);
          os << ')';
        }
      },
      t->node);
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e);
  return os.str();
}

std::string to_string(const Type& t) {
  std::ostringstream os;
  print(os, t);
  return os.str();
}

}  // namespace lre
