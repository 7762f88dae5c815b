#include "lre/typing.hpp"

#include <sstream>

#include "lre/base_typing.hpp"
#include "lre/eval.hpp"

namespace lre {

std::string to_string(const Counterexample& c) {
  std::string s = "value " + to_string(c.value);
  if (!c.theta.empty()) s += " under " + to_string(c.theta);
  return s;
}

std::string_view to_string(TypeError::Kind k) {
  switch (k) {
    case TypeError::Kind::Unbound: return "Unbound";
    case TypeError::Kind::NotWellFormed: return "NotWellFormed";
    case TypeError::Kind::SubtypeFailed: return "SubtypeFailed";
    case TypeError::Kind::EqIndexMismatch: return "EqIndexMismatch";
    case TypeError::Kind::BaseMismatch: return "BaseMismatch";
    case TypeError::Kind::BoundsExceeded: return "BoundsExceeded";
  }
  return "?";
}

std::string to_string(const TypeError& e) {
  std::string s = std::string(to_string(e.kind)) + ": " + e.message;
  if (e.witness) s += " (counterexample: " + to_string(*e.witness) + ")";
  return s;
}

TriBool verdict(const TypeError& e) {
  return e.kind == TypeError::Kind::BoundsExceeded ? TriBool::Unknown : TriBool::No;
}

namespace {
const char* not_sub(TriBool r) { return r == TriBool::Unknown ? " undecided against " : " is not a subtype of "; }
}  // namespace

std::optional<Type> proof_obligation(const Expr& l, const Expr& r, const Type& index) {
  if (const auto* rb = as<Refined>(index)) {
    std::set<std::string> avoid = free_vars(l);
    auto fr = free_vars(r);
    avoid.insert(fr.begin(), fr.end());
    std::string u = fresh_name("u", avoid);
    return mk::refined(u, BaseType::Unit, mk::eq_app(rb->base, l, r));
  }
  if (const auto* f = as<Fun>(index)) {
    std::set<std::string> avoid = free_vars(l);
    auto fr = free_vars(r);
    avoid.insert(fr.begin(), fr.end());
    std::string x = fresh_name(f->binder, avoid);
    Type cod = x == f->binder ? f->cod : subst(f->cod, f->binder, mk::var(x));
    return mk::fun(x, f->dom, mk::eqrt(cod, mk::app(l, mk::var(x)), mk::app(r, mk::var(x))));
  }
  return std::nullopt;
}

namespace {

// Picks a binder that is not bound in `env` and not free in `avoid_in`,
// preferring `x` itself.
template <class... Ts>
std::string binder_for(const Env& env, const std::string& x, const Ts&... avoid_in) {
  std::set<std::string> avoid = env.names();
  (
      [&] {
        auto fv = free_vars(avoid_in);
        avoid.insert(fv.begin(), fv.end());
      }(),
      ...);
  return fresh_name(x, avoid);
}

template <class Body>
Body rename(const Body& body, const std::string& from, const std::string& to) {
  return from == to ? body : subst(body, from, mk::var(to));
}

class Checker {
 public:
  explicit Checker(const Bounds& b) : b_(b) {}

  WfResult wf(const Env& env, const Type& t) {
    if (const auto* r = as<Refined>(t)) {
      UEnv uenv = unrefine(env);
      uenv.emplace_back(r->binder, UType::of(r->base));
      try {
        UType u = btype(uenv, r->refinement);
        if (u == UType::boolean()) return {};
        return {TriBool::No, "refinement " + to_string(r->refinement) + " has base type " + to_string(u)};
      } catch (const BaseTypeError& err) {
        return {TriBool::No, "refinement " + to_string(r->refinement) + ": " + err.what()};
      }
    }
    if (const auto* f = as<Fun>(t)) {
      WfResult d = wf(env, f->dom);
      if (d.result == TriBool::No) return d;
      std::string x = binder_for(env, f->binder);
      WfResult c = wf(env.extended(x, f->dom), rename(f->cod, f->binder, x));
      return {d.result && c.result, d.result == TriBool::Yes ? c.reason : d.reason};
    }
    const auto& eq = *as<EqRT>(t);
    WfResult i = wf(env, eq.index);
    if (i.result == TriBool::No) return i;
    CheckResult l = check(env, eq.left, eq.index);
    if (l.result == TriBool::No) return {TriBool::No, "left endpoint: " + describe(l)};
    CheckResult r = check(env, eq.right, eq.index);
    if (r.result == TriBool::No) return {TriBool::No, "right endpoint: " + describe(r)};
    TriBool all = i.result && l.result && r.result;
    return {all, all == TriBool::Unknown ? "bounds exceeded" : ""};
  }

  SubtypeResult subtype(const Env& env, const Type& sub, const Type& super) {
    const auto* r1 = as<Refined>(sub);
    const auto* r2 = as<Refined>(super);
    if (r1 && r2) return subtype_base(env, sub, *r1, super, *r2);
    const auto* f1 = as<Fun>(sub);
    const auto* f2 = as<Fun>(super);
    if (f1 && f2) {
      SubtypeResult dom = subtype(env, f2->dom, f1->dom);
      if (dom.result == TriBool::No) {
        dom.reason = "domain: " + dom.reason;
        return dom;
      }
      std::string x = binder_for(env, f2->binder, sub, super);
      SubtypeResult cod =
          subtype(env.extended(x, f2->dom), rename(f1->cod, f1->binder, x), rename(f2->cod, f2->binder, x));
      if (cod.result == TriBool::No) {
        cod.reason = "codomain: " + cod.reason;
        return cod;
      }
      return {dom.result && cod.result, std::nullopt, ""};
    }
    const auto* e1 = as<EqRT>(sub);
    const auto* e2 = as<EqRT>(super);
    if (e1 && e2) {
      if (!alpha_eq(e1->left, e2->left) || !alpha_eq(e1->right, e2->right))
        return {TriBool::No, std::nullopt, "equality endpoints differ"};
      SubtypeResult fwd = subtype(env, e1->index, e2->index);
      if (fwd.result == TriBool::No) {
        fwd.reason = "index (covariant): " + fwd.reason;
        return fwd;
      }
      SubtypeResult bwd = subtype(env, e2->index, e1->index);
      if (bwd.result == TriBool::No) {
        bwd.reason = "index (contravariant): " + bwd.reason;
        return bwd;
      }
      return {fwd.result && bwd.result, std::nullopt, ""};
    }
    return {TriBool::No, std::nullopt, "shape mismatch: " + to_string(sub) + " vs " + to_string(super)};
  }

  SynthResult synth(const Env& env, const Expr& e) {
    return std::visit([&](const auto& n) { return synth_node(env, e, n); }, e->node);
  }

  CheckResult check(const Env& env, const Expr& e, const Type& t) {
    SynthResult s = synth(env, e);
    if (!s.ok()) return {verdict(*s.error), nullptr, s.error};
    const auto* r1 = as<Refined>(s.type);
    const auto* r2 = as<Refined>(t);
    // At base types e also has its singleton type, so only e's own value
    // has to land in t.
    SubtypeResult sub = r1 && r2 ? subtype_base(env, s.type, *r1, t, *r2, &e) : subtype(env, s.type, t);
    if (sub.result == TriBool::Yes) return {TriBool::Yes, s.type, std::nullopt};
    TypeError err{sub.result == TriBool::Unknown ? TypeError::Kind::BoundsExceeded : TypeError::Kind::SubtypeFailed,
                  to_string(e) + " : " + to_string(s.type) + not_sub(sub.result) + to_string(t) +
                      (sub.reason.empty() ? "" : " (" + sub.reason + ")"),
                  s.type, t, sub.witness};
    return {sub.result, s.type, err};
  }

 private:
  static std::string describe(const CheckResult& c) { return c.error ? to_string(*c.error) : "ok"; }

  static SynthResult fail(TypeError::Kind k, std::string msg) {
    return {nullptr, TypeError{k, std::move(msg), nullptr, nullptr, std::nullopt}};
  }

  static SynthResult fail_from(const TypeError& inner, const std::string& ctx) {
    TypeError err = inner;
    err.message = ctx + ": " + err.message;
    return {nullptr, err};
  }

  SubtypeResult subtype_base(const Env& env, const Type& sub, const Refined& r1, const Type& super,
                             const Refined& r2, const Expr* self = nullptr) {
    if (r1.base != r2.base)
      return {TriBool::No, std::nullopt, "base mismatch: " + to_string(sub) + " vs " + to_string(super)};
    ClosingSubsts thetas = closing_substs(env, b_);
    bool unknown = !thetas.complete;
    Enumeration carrier = enumerate_values(UType::of(r1.base), 1);
    for (const ValueMap& theta : thetas.substs) {
      Type lhs = close(sub, theta);
      Type rhs = close(super, theta);
      std::optional<Expr> self_value;
      if (self) {
        auto out = eval(close(*self, theta), b_.fuel);
        if (out.kind == EvalOutcome::Kind::FuelExhausted) {
          unknown = true;
          continue;
        }
        if (out.kind == EvalOutcome::Kind::Value) self_value = out.expr;
      }
      for (const Expr& v : carrier.values) {
        if (self_value && !alpha_eq(v, *self_value)) continue;
        TriBool in1 = denote_member(v, lhs, b_);
        if (in1 == TriBool::No) continue;
        TriBool in2 = denote_member(v, rhs, b_);
        if (in1 == TriBool::Yes && in2 == TriBool::No)
          return {TriBool::No, Counterexample{theta, v},
                  to_string(v) + " inhabits " + to_string(sub) + " but not " + to_string(super) +
                      (theta.empty() ? "" : " under " + to_string(theta))};
        if (in1 == TriBool::Unknown || in2 == TriBool::Unknown) unknown = true;
      }
    }
    if (unknown) return {TriBool::Unknown, std::nullopt, "bounds exceeded"};
    return {};
  }

  SynthResult synth_node(const Env&, const Expr&, const Const& c) { return {tycon(c), std::nullopt}; }

  SynthResult synth_node(const Env& env, const Expr&, const Var& v) {
    auto t = env.lookup(v.name);
    if (!t) return fail(TypeError::Kind::Unbound, "unbound variable " + v.name);
    if (const auto* r = as<Refined>(*t)) return {selfify(r->base, mk::var(v.name)), std::nullopt};
    return {*t, std::nullopt};
  }

  SynthResult synth_node(const Env& env, const Expr& e, const Lam& l) {
    WfResult w = wf(env, l.annot);
    if (w.result != TriBool::Yes)
      return fail(w.result == TriBool::No ? TypeError::Kind::NotWellFormed : TypeError::Kind::BoundsExceeded,
                  "annotation " + to_string(l.annot) + " of " + to_string(e) + ": " + w.reason);
    std::string x = binder_for(env, l.binder);
    SynthResult body = synth(env.extended(x, l.annot), rename(l.body, l.binder, x));
    if (!body.ok()) return body;
    return {mk::fun(x, l.annot, body.type), std::nullopt};
  }

  SynthResult synth_node(const Env& env, const Expr& e, const App& a) {
    SynthResult f = synth(env, a.fun);
    if (!f.ok()) return f;
    const auto* ft = as<Fun>(f.type);
    if (!ft)
      return fail(TypeError::Kind::BaseMismatch,
                  "applying " + to_string(a.fun) + " of non-function type " + to_string(f.type));
    CheckResult arg = check(env, a.arg, ft->dom);
    if (arg.result != TriBool::Yes) return fail_from(*arg.error, "argument of " + to_string(e));
    return {subst(ft->cod, ft->binder, a.arg), std::nullopt};
  }

  // Synthesizes an endpoint's type and checks it against `bound`.
  SynthResult endpoint(const Env& env, const Expr& e, const Type& bound, const char* side) {
    SynthResult s = synth(env, e);
    if (!s.ok()) return fail_from(*s.error, std::string(side) + " endpoint");
    SubtypeResult sub = subtype(env, s.type, bound);
    if (sub.result != TriBool::Yes) {
      TypeError err{sub.result == TriBool::No ? TypeError::Kind::SubtypeFailed : TypeError::Kind::BoundsExceeded,
                    std::string(side) + " endpoint " + to_string(e) + " : " + to_string(s.type) +
                        not_sub(sub.result) + to_string(bound) + (sub.reason.empty() ? "" : " (" + sub.reason + ")"),
                    s.type, bound, sub.witness};
      return {nullptr, err};
    }
    return s;
  }

  SynthResult synth_node(const Env& env, const Expr& e, const BEq& q) {
    Type bound = mk::base(q.base);
    SynthResult l = endpoint(env, q.left, bound, "left");
    if (!l.ok()) return l;
    SynthResult r = endpoint(env, q.right, bound, "right");
    if (!r.ok()) return r;
    // Strongest guess for the endpoint types: their singletons.
    std::string ln = binder_for(env, "l", q.proof);
    std::string rn = fresh_name("r", [&] {
      auto s = env.names();
      auto fv = free_vars(q.proof);
      s.insert(fv.begin(), fv.end());
      s.insert(ln);
      return s;
    }());
    Env inner = env.extended(ln, selfify(q.base, q.left)).extended(rn, selfify(q.base, q.right));
    Type want = mk::refined("u", BaseType::Unit, mk::eq_app(q.base, mk::var(ln), mk::var(rn)));
    CheckResult p = check(inner, q.proof, want);
    if (p.result != TriBool::Yes) return fail_from(*p.error, "proof of " + to_string(e));
    return {mk::eqrt(bound, q.left, q.right), std::nullopt};
  }

  SynthResult synth_node(const Env& env, const Expr& e, const XEq& q) {
    Type index = mk::fun(q.binder, q.dom, q.cod);
    WfResult w = wf(env, index);
    if (w.result != TriBool::Yes)
      return fail(w.result == TriBool::No ? TypeError::Kind::NotWellFormed : TypeError::Kind::BoundsExceeded,
                  "index " + to_string(index) + " of " + to_string(e) + ": " + w.reason);
    SynthResult l = endpoint(env, q.left, index, "left");
    if (!l.ok()) return l;
    SynthResult r = endpoint(env, q.right, index, "right");
    if (!r.ok()) return r;
    auto want = proof_obligation(q.left, q.right, index);
    CheckResult p = check(env, q.proof, *want);
    if (p.result != TriBool::Yes) return fail_from(*p.error, "proof of " + to_string(e));
    return {mk::eqrt(index, q.left, q.right), std::nullopt};
  }

  Bounds b_;
};

}  // namespace

WfResult wf(const Env& env, const Type& t, const Bounds& b) { return Checker(b).wf(env, t); }

WfResult wf_env(const Env& env, const Bounds& b) {
  Checker c(b);
  Env prefix;
  for (const auto& [x, t] : env.bindings()) {
    if (prefix.contains(x)) return {TriBool::No, "duplicate binding " + x};
    WfResult w = c.wf(prefix, t);
    if (w.result != TriBool::Yes) {
      w.reason = x + ": " + w.reason;
      return w;
    }
    prefix = prefix.extended(x, t);
  }
  return {};
}

SubtypeResult subtype(const Env& env, const Type& sub, const Type& super, const Bounds& b) {
  return Checker(b).subtype(env, sub, super);
}

SynthResult synth(const Env& env, const Expr& e, const Bounds& b) { return Checker(b).synth(env, e); }

CheckResult check(const Env& env, const Expr& e, const Type& t, const Bounds& b) {
  return Checker(b).check(env, e, t);
}

}  // namespace lre
