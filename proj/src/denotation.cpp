#include "lre/denotation.hpp"

#include <map>
#include <sstream>

#include "lre/eval.hpp"

namespace lre {

namespace {

constexpr std::size_t kMaxProbes = 6;

std::string arg_name(std::size_t i) {
  static const char* names[] = {"x", "y", "z", "w"};
  return i < 4 ? names[i] : "x" + std::to_string(i);
}

// XOR of the selected probes, flipped when `negate`, as nested equality tests.
Expr affine(const std::vector<Expr>& probes, unsigned mask, bool negate) {
  Expr acc;
  bool flipped = false;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    if (!acc) {
      acc = probes[i];
    } else {
      acc = mk::eq_app(BaseType::Bool, acc, probes[i]);
      flipped = !flipped;
    }
  }
  if (!acc) return negate ? mk::tt() : mk::ff();
  if (flipped != negate) acc = mk::eq_app(BaseType::Bool, acc, mk::ff());
  return acc;
}

void add_probes(const Expr& term, const UType& fn, int depth, std::vector<Expr>& probes, bool& complete) {
  if (depth <= 0) {
    complete = false;
    return;
  }
  Enumeration args = enumerate_values(fn.first(), depth);
  complete = complete && args.complete;
  for (const Expr& w : args.values) {
    Expr applied = mk::app(term, w);
    const UType& res = fn.second();
    if (res.kind() == UType::Kind::Bool)
      probes.push_back(applied);
    else if (res.kind() == UType::Kind::Fun)
      add_probes(applied, res, depth, probes, complete);
  }
}

Enumeration enumerate_fun(const UType& u, int depth) {
  std::vector<const UType*> args;
  const UType* res = &u;
  while (res->kind() == UType::Kind::Fun) {
    args.push_back(&res->first());
    res = &res->second();
  }

  Enumeration out;
  std::vector<Expr> probes;
  if (depth <= 0) {
    out.complete = false;
  } else {
    for (std::size_t i = 0; i < args.size(); ++i) {
      const UType& a = *args[i];
      if (a.kind() == UType::Kind::Bool) {
        probes.push_back(mk::var(arg_name(i)));
      } else if (a.kind() == UType::Kind::Fun) {
        // Higher-order arguments admit non-affine observers; never complete.
        out.complete = false;
        add_probes(mk::var(arg_name(i)), a, depth - 1, probes, out.complete);
      }
    }
  }
  if (probes.size() > kMaxProbes) {
    probes.resize(kMaxProbes);
    out.complete = false;
  }

  std::vector<Expr> bodies;
  switch (res->kind()) {
    case UType::Kind::Bool:
      for (unsigned mask = 0; mask < (1u << probes.size()); ++mask) {
        bodies.push_back(affine(probes, mask, true));
        bodies.push_back(affine(probes, mask, false));
      }
      break;
    case UType::Kind::Unit: bodies.push_back(mk::unit()); break;
    default: {
      Enumeration e = enumerate_values(*res, depth);
      bodies = std::move(e.values);
      out.complete = false;
    }
  }

  for (Expr body : bodies) {
    for (std::size_t i = args.size(); i-- > 0;) body = mk::lam(arg_name(i), lift(*args[i]), body);
    out.values.push_back(std::move(body));
  }
  return out;
}

}  // namespace

Enumeration enumerate_values(const UType& u, int depth) {
  switch (u.kind()) {
    case UType::Kind::Bool: return {{mk::tt(), mk::ff()}, true};
    case UType::Kind::Unit: return {{mk::unit()}, true};
    case UType::Kind::Fun: return enumerate_fun(u, depth);
    case UType::Kind::Eq: {
      Enumeration out;
      out.complete = false;
      const UType& of = u.first();
      if (of.kind() == UType::Kind::Eq) return out;
      Enumeration ends = enumerate_values(of, depth);
      Type index = lift(of);
      for (const Expr& l : ends.values)
        for (const Expr& r : ends.values)
          if (auto p = canonical_proof(index, l, r)) out.values.push_back(*p);
      return out;
    }
  }
  return {};
}

std::optional<Expr> canonical_proof(const Type& index, const Expr& l, const Expr& r) {
  if (const auto* rb = as<Refined>(index)) return mk::beq(rb->base, l, r, mk::unit());
  if (const auto* f = as<Fun>(index)) {
    auto avoid = free_vars(l);
    auto fr = free_vars(r);
    avoid.insert(fr.begin(), fr.end());
    std::string x = fresh_name(f->binder, avoid);
    Type cod = x == f->binder ? f->cod : subst(f->cod, f->binder, mk::var(x));
    auto inner = canonical_proof(cod, mk::app(l, mk::var(x)), mk::app(r, mk::var(x)));
    if (!inner) return std::nullopt;
    return mk::xeq(x, f->dom, cod, l, r, mk::lam(x, f->dom, *inner));
  }
  return std::nullopt;
}

Enumeration candidates(const Type& t, int depth) {
  if (const auto* r = as<Refined>(t)) return enumerate_values(UType::of(r->base), depth);
  if (as<Fun>(t)) return enumerate_values(unrefine(t), depth);
  const auto& eq = *as<EqRT>(t);
  if (auto p = canonical_proof(eq.index, eq.left, eq.right)) return {{*p}, true};
  return {{}, true};
}

namespace {

class Denoter {
 public:
  explicit Denoter(const Bounds& b) : b_(b) {}

  TriBool member(const Expr& e, const Type& t) {
    if (const auto* r = as<Refined>(t)) return member_base(e, *r);
    if (const auto* f = as<Fun>(t)) return member_fun(e, *f);
    return member_eq(e, *as<EqRT>(t));
  }

  const Enumeration& domain(const Type& t) {
    std::string key = to_string(t);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    Enumeration cands = candidates(t, b_.fn_depth);
    Enumeration out;
    out.complete = cands.complete;
    for (const Expr& c : cands.values) {
      TriBool m = member(c, t);
      if (m == TriBool::Yes)
        out.values.push_back(c);
      else if (m == TriBool::Unknown)
        out.complete = false;
    }
    return cache_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  static bool has_btype(const Expr& e, const UType& u) {
    auto got = try_btype({}, e);
    return got && *got == u;
  }

  TriBool member_base(const Expr& e, const Refined& r) {
    if (!has_btype(e, UType::of(r.base))) return TriBool::No;
    auto out = eval(e, b_.fuel);
    if (out.kind == EvalOutcome::Kind::FuelExhausted) return TriBool::Unknown;
    if (out.kind == EvalOutcome::Kind::Stuck) return TriBool::No;
    return evaluates_to_const(subst(r.refinement, r.binder, out.expr), Const::tt(), b_.fuel);
  }

  // For every argument in ⟦dom⟧, `check(arg)`.
  template <class F>
  TriBool for_all_args(const Type& dom, F&& check) {
    // Copy: `domain` may rehash the cache while we iterate.
    Enumeration args = domain(dom);
    TriBool acc = TriBool::Yes;
    for (const Expr& a : args.values) {
      acc = acc && check(a);
      if (acc == TriBool::No) return acc;
    }
    if (!args.complete && acc == TriBool::Yes) return TriBool::Unknown;
    return acc;
  }

  TriBool member_fun(const Expr& e, const Fun& f) {
    return for_all_args(f.dom, [&](const Expr& a) { return member(mk::app(e, a), subst(f.cod, f.binder, a)); });
  }

  TriBool member_eq(const Expr& e, const EqRT& eq) {
    if (const auto* rb = as<Refined>(eq.index)) {
      if (!has_btype(e, UType::eq(UType::of(rb->base)))) return TriBool::No;
      auto out = eval(e, b_.fuel);
      if (out.kind == EvalOutcome::Kind::FuelExhausted) return TriBool::Unknown;
      const auto* v = as<BEq>(out.expr);
      if (out.kind != EvalOutcome::Kind::Value || !v || v->base != rb->base || !alpha_eq(v->left, eq.left) ||
          !alpha_eq(v->right, eq.right))
        return TriBool::No;
      return evaluates_to_const(mk::eq_app(rb->base, eq.left, eq.right), Const::tt(), b_.fuel);
    }
    const auto* f = as<Fun>(eq.index);
    if (!f) return TriBool::No;
    if (!has_btype(e, UType::eq(unrefine(eq.index)))) return TriBool::No;
    auto out = eval(e, b_.fuel);
    if (out.kind == EvalOutcome::Kind::FuelExhausted) return TriBool::Unknown;
    const auto* v = as<XEq>(out.expr);
    if (out.kind != EvalOutcome::Kind::Value || !v || !alpha_eq(v->left, eq.left) || !alpha_eq(v->right, eq.right))
      return TriBool::No;
    TriBool acc = member(eq.left, eq.index);
    if (acc == TriBool::No) return acc;
    acc = acc && member(eq.right, eq.index);
    if (acc == TriBool::No) return acc;
    Expr pf = v->proof;
    return acc && for_all_args(f->dom, [&](const Expr& a) {
             return member(mk::app(pf, a),
                           mk::eqrt(subst(f->cod, f->binder, a), mk::app(eq.left, a), mk::app(eq.right, a)));
           });
  }

  Bounds b_;
  std::map<std::string, Enumeration> cache_;
};

}  // namespace

TriBool denote_member(const Expr& e, const Type& t, const Bounds& b) { return Denoter(b).member(e, t); }

Enumeration members(const Type& t, const Bounds& b) { return Denoter(b).domain(t); }

ClosingSubsts closing_substs(const Env& env, const Bounds& b) {
  Denoter d(b);
  ClosingSubsts out;
  out.substs.emplace_back();
  for (const auto& [x, t] : env.bindings()) {
    std::vector<ValueMap> next;
    for (const ValueMap& theta : out.substs) {
      const Enumeration& dom = d.domain(close(t, theta));
      out.complete = out.complete && dom.complete;
      for (const Expr& v : dom.values) {
        ValueMap ext = theta;
        ext.emplace_back(x, v);
        next.push_back(std::move(ext));
      }
    }
    out.substs = std::move(next);
  }
  return out;
}

std::string to_string(const ValueMap& theta) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (i) os << ", ";
    os << theta[i].first << " := " << to_string(theta[i].second);
  }
  os << ']';
  return os.str();
}

std::vector<Const> all_constants() {
  return {Const::tt(),
          Const::ff(),
          Const::unit(),
          Const::eq(BaseType::Bool),
          Const::eq(BaseType::Unit),
          Const::eq_partial(Const::tt(), BaseType::Bool),
          Const::eq_partial(Const::ff(), BaseType::Bool),
          Const::eq_partial(Const::unit(), BaseType::Unit)};
}

bool ConstantsReport::all_yes() const {
  for (const auto& c : checks)
    if (c.result != TriBool::Yes) return false;
  return true;
}

ConstantsReport constants_sound(const Bounds& b) {
  ConstantsReport rep;
  for (const Const& c : all_constants()) {
    Type sig = tycon(c);
    rep.checks.push_back({c, sig, denote_member(mk::cnst(c), sig, b)});
  }
  return rep;
}

}  // namespace lre
