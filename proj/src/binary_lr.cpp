#include "lre/binary_lr.hpp"

#include "lre/base_typing.hpp"
#include "lre/denotation.hpp"
#include "lre/eval.hpp"

namespace lre {

EquivEnv EquivEnv::extended(std::string x, Expr l, Expr r) const {
  EquivEnv out = *this;
  out.entries_.push_back({std::move(x), std::move(l), std::move(r)});
  return out;
}

ValueMap EquivEnv::left() const {
  ValueMap m;
  for (const auto& e : entries_) m.emplace_back(e.name, e.left);
  return m;
}

ValueMap EquivEnv::right() const {
  ValueMap m;
  for (const auto& e : entries_) m.emplace_back(e.name, e.right);
  return m;
}

std::string to_string(const EquivEnv& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.entries().size(); ++i) {
    const auto& e = d.entries()[i];
    if (i) s += ", ";
    s += e.name + " := (" + to_string(e.left) + ", " + to_string(e.right) + ")";
  }
  return s + "]";
}

namespace {

struct Pairs {
  std::vector<std::pair<Expr, Expr>> pairs;
  bool complete = true;
};

class Relator {
 public:
  explicit Relator(const Bounds& b) : b_(b) {}

  // Related argument pairs at `t` under d.
  Pairs arg_pairs(const EquivEnv& d, const Type& t) {
    Pairs out;
    if (const auto* eq = as<EqRT>(t)) {
      // Proofs are never inspected, so one representative stands for all.
      TriBool ends = expr(d, eq->left, eq->right, eq->index);
      if (ends == TriBool::No) return out;
      if (ends == TriBool::Unknown) out.complete = false;
      Enumeration vals = enumerate_values(unrefine(t), b_.fn_depth);
      if (vals.values.empty()) {
        out.complete = false;
        return out;
      }
      out.pairs.emplace_back(vals.values.front(), vals.values.front());
      return out;
    }
    Enumeration vals = enumerate_values(unrefine(t), b_.fn_depth);
    out.complete = vals.complete;
    bool diagonal_only = as<Refined>(t) != nullptr;
    for (const Expr& a1 : vals.values) {
      for (const Expr& a2 : vals.values) {
        if (diagonal_only && a1 != a2) continue;
        TriBool r = val(d, a1, a2, t);
        if (r == TriBool::Yes)
          out.pairs.emplace_back(a1, a2);
        else if (r == TriBool::Unknown)
          out.complete = false;
      }
    }
    return out;
  }

  TriBool val(const EquivEnv& d, const Expr& v1, const Expr& v2, const Type& t) {
    if (const auto* r = as<Refined>(t)) {
      const auto* c1 = as<Const>(v1);
      const auto* c2 = as<Const>(v2);
      if (!c1 || !c2 || !(*c1 == *c2) || !c1->is_base_value() || c1->base_of() != r->base) return TriBool::No;
      Expr inst = subst(r->refinement, r->binder, v1);
      TriBool lhs = evaluates_to_const(close(inst, d.left()), Const::tt(), b_.fuel);
      if (lhs == TriBool::No) return lhs;
      return lhs && evaluates_to_const(close(inst, d.right()), Const::tt(), b_.fuel);
    }
    if (const auto* f = as<Fun>(t)) {
      UType u = unrefine(t);
      auto u1 = try_btype({}, v1);
      auto u2 = try_btype({}, v2);
      if (!u1 || !u2 || !(*u1 == u) || !(*u2 == u)) return TriBool::No;
      Pairs args = arg_pairs(d, f->dom);
      TriBool acc = TriBool::Yes;
      for (const auto& [a1, a2] : args.pairs) {
        acc = acc && expr(d.extended(f->binder, a1, a2), mk::app(v1, a1), mk::app(v2, a2), f->cod);
        if (acc == TriBool::No) return acc;
      }
      if (!args.complete && acc == TriBool::Yes) return TriBool::Unknown;
      return acc;
    }
    const auto& eq = *as<EqRT>(t);
    return expr(d, eq.left, eq.right, eq.index);
  }

  TriBool expr(const EquivEnv& d, const Expr& e1, const Expr& e2, const Type& t) {
    auto o1 = eval(close(e1, d.left()), b_.fuel);
    if (o1.kind == EvalOutcome::Kind::Stuck) return TriBool::No;
    auto o2 = eval(close(e2, d.right()), b_.fuel);
    if (o2.kind == EvalOutcome::Kind::Stuck) return TriBool::No;
    if (o1.kind == EvalOutcome::Kind::FuelExhausted || o2.kind == EvalOutcome::Kind::FuelExhausted)
      return TriBool::Unknown;
    return val(d, o1.expr, o2.expr, t);
  }

 private:
  Bounds b_;
};

}  // namespace

EquivEnvs equiv_envs(const Env& env, const Bounds& b) {
  Relator rel(b);
  EquivEnvs out;
  out.envs.emplace_back();
  for (const auto& [x, t] : env.bindings()) {
    std::vector<EquivEnv> next;
    for (const EquivEnv& d : out.envs) {
      Pairs ps = rel.arg_pairs(d, t);
      out.complete = out.complete && ps.complete;
      for (const auto& [l, r] : ps.pairs) next.push_back(d.extended(x, l, r));
    }
    out.envs = std::move(next);
  }
  return out;
}

TriBool val_related(const EquivEnv& d, const Expr& v1, const Expr& v2, const Type& t, const Bounds& b) {
  return Relator(b).val(d, v1, v2, t);
}

TriBool expr_related(const EquivEnv& d, const Expr& e1, const Expr& e2, const Type& t, const Bounds& b) {
  return Relator(b).expr(d, e1, e2, t);
}

TriBool open_related(const Env& env, const Expr& e1, const Expr& e2, const Type& t, const Bounds& b) {
  EquivEnvs ds = equiv_envs(env, b);
  Relator rel(b);
  TriBool acc = TriBool::Yes;
  for (const EquivEnv& d : ds.envs) {
    acc = acc && rel.expr(d, e1, e2, t);
    if (acc == TriBool::No) return acc;
  }
  if (!ds.complete && acc == TriBool::Yes) return TriBool::Unknown;
  return acc;
}

// ---------------------------------------------------------------------------
// Contexts

namespace ctx {
Ctx hole() { return std::make_shared<const CtxNode>(CtxNode{Hole{}}); }
Ctx app_l(Ctx c, Expr arg) { return std::make_shared<const CtxNode>(CtxNode{AppL{std::move(c), std::move(arg)}}); }
Ctx app_r(Expr fun, Ctx c) { return std::make_shared<const CtxNode>(CtxNode{AppR{std::move(fun), std::move(c)}}); }
Ctx lam(std::string x, Type annot, Ctx body) {
  return std::make_shared<const CtxNode>(CtxNode{LamC{std::move(x), std::move(annot), std::move(body)}});
}
Ctx beq(BaseType b, Expr l, Expr r, Ctx proof) {
  return std::make_shared<const CtxNode>(CtxNode{BEqC{b, std::move(l), std::move(r), std::move(proof)}});
}
Ctx xeq(std::string x, Type dom, Type cod, Expr l, Expr r, Ctx proof) {
  return std::make_shared<const CtxNode>(
      CtxNode{XEqC{std::move(x), std::move(dom), std::move(cod), std::move(l), std::move(r), std::move(proof)}});
}
}  // namespace ctx

Expr ctx_apply(const Ctx& c, const Expr& e) {
  return std::visit(
      [&](const auto& n) -> Expr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Hole>)
          return e;
        else if constexpr (std::is_same_v<N, AppL>)
          return mk::app(ctx_apply(n.fun, e), n.arg);
        else if constexpr (std::is_same_v<N, AppR>)
          return mk::app(n.fun, ctx_apply(n.arg, e));
        else if constexpr (std::is_same_v<N, LamC>)
          return mk::lam(n.binder, n.annot, ctx_apply(n.body, e));
        else if constexpr (std::is_same_v<N, BEqC>)
          return mk::beq(n.base, n.left, n.right, ctx_apply(n.proof, e));
        else
          return mk::xeq(n.binder, n.dom, n.cod, n.left, n.right, ctx_apply(n.proof, e));
      },
      c->node);
}

std::string to_string(const Ctx& c) { return to_string(ctx_apply(c, mk::var("[]"))); }

namespace {

class CtxChecker {
 public:
  CtxChecker(const std::string& hole, const Type& hole_type, const Bounds& b)
      : hole_(hole), hole_type_(hole_type), b_(b) {}

  // Returns the type of C[hole] under env, hole : hole_type.
  CtxTypeResult go(const Env& env, const Ctx& c) {
    return std::visit([&](const auto& n) { return node(env, c, n); }, c->node);
  }

 private:
  static CtxTypeResult fail(TypeError::Kind k, std::string msg) {
    return {nullptr, TypeError{k, std::move(msg), nullptr, nullptr, std::nullopt}};
  }
  static CtxTypeResult fail(const TypeError& e, const std::string& where) {
    TypeError err = e;
    err.message = where + ": " + err.message;
    return {nullptr, err};
  }

  // Checks `got <: want` with the hole bound after env.
  std::optional<TypeError> fits(const Env& env, const Type& got, const Type& want, const std::string& what) {
    SubtypeResult s = subtype(env.extended(hole_, hole_type_), got, want, b_);
    if (s.result == TriBool::Yes) return std::nullopt;
    return TypeError{s.result == TriBool::No ? TypeError::Kind::SubtypeFailed : TypeError::Kind::BoundsExceeded,
                     what + ": " + to_string(got) + " is not a subtype of " + to_string(want) +
                         (s.reason.empty() ? "" : " (" + s.reason + ")"),
                     got, want, s.witness};
  }

  CtxTypeResult node(const Env& env, const Ctx&, const Hole&) {
    WfResult w = wf(env, hole_type_, b_);
    if (w.result != TriBool::Yes)
      return fail(w.result == TriBool::No ? TypeError::Kind::NotWellFormed : TypeError::Kind::BoundsExceeded,
                  "hole type " + to_string(hole_type_) + ": " + w.reason);
    return {hole_type_, std::nullopt};
  }

  CtxTypeResult node(const Env& env, const Ctx&, const LamC& n) {
    WfResult w = wf(env, n.annot, b_);
    if (w.result != TriBool::Yes)
      return fail(w.result == TriBool::No ? TypeError::Kind::NotWellFormed : TypeError::Kind::BoundsExceeded,
                  "annotation " + to_string(n.annot) + ": " + w.reason);
    CtxTypeResult body = go(env.extended(n.binder, n.annot), n.body);
    if (!body.ok()) return body;
    return {mk::fun(n.binder, n.annot, body.type), std::nullopt};
  }

  CtxTypeResult node(const Env& env, const Ctx& c, const AppL& n) {
    CtxTypeResult f = go(env, n.fun);
    if (!f.ok()) return f;
    const auto* ft = as<Fun>(f.type);
    if (!ft) return fail(TypeError::Kind::BaseMismatch, "applying " + to_string(c) + " of type " + to_string(f.type));
    CheckResult arg = lre::check(env.extended(hole_, hole_type_), n.arg, ft->dom, b_);
    if (arg.result != TriBool::Yes) return fail(*arg.error, "argument " + to_string(n.arg));
    return {subst(ft->cod, ft->binder, n.arg), std::nullopt};
  }

  CtxTypeResult node(const Env& env, const Ctx&, const AppR& n) {
    SynthResult f = synth(env, n.fun, b_);
    if (!f.ok()) return fail(*f.error, "function " + to_string(n.fun));
    const auto* ft = as<Fun>(f.type);
    if (!ft)
      return fail(TypeError::Kind::BaseMismatch, "applying " + to_string(n.fun) + " of type " + to_string(f.type));
    CtxTypeResult a = go(env, n.arg);
    if (!a.ok()) return a;
    if (auto err = fits(env, a.type, ft->dom, "argument context")) return {nullptr, err};
    return {subst(ft->cod, ft->binder, ctx_apply(n.arg, mk::var(hole_))), std::nullopt};
  }

  std::optional<TypeError> endpoint(const Env& env, const Expr& e, const Type& bound, const char* side) {
    CheckResult c = lre::check(env, e, bound, b_);
    if (c.result == TriBool::Yes) return std::nullopt;
    TypeError err = *c.error;
    err.message = std::string(side) + " endpoint: " + err.message;
    return err;
  }

  CtxTypeResult node(const Env& env, const Ctx&, const BEqC& n) {
    Type bound = mk::base(n.base);
    if (auto e = endpoint(env, n.left, bound, "left")) return {nullptr, e};
    if (auto e = endpoint(env, n.right, bound, "right")) return {nullptr, e};
    std::set<std::string> avoid = env.names();
    avoid.insert(hole_);
    std::string l = fresh_name("l", avoid);
    avoid.insert(l);
    std::string r = fresh_name("r", avoid);
    Env inner = env.extended(l, selfify(n.base, n.left)).extended(r, selfify(n.base, n.right));
    CtxTypeResult p = go(inner, n.proof);
    if (!p.ok()) return p;
    Type want = mk::refined("u", BaseType::Unit, mk::eq_app(n.base, mk::var(l), mk::var(r)));
    if (auto err = fits(inner, p.type, want, "proof context")) return {nullptr, err};
    return {mk::eqrt(bound, n.left, n.right), std::nullopt};
  }

  CtxTypeResult node(const Env& env, const Ctx&, const XEqC& n) {
    Type index = mk::fun(n.binder, n.dom, n.cod);
    WfResult w = wf(env, index, b_);
    if (w.result != TriBool::Yes)
      return fail(w.result == TriBool::No ? TypeError::Kind::NotWellFormed : TypeError::Kind::BoundsExceeded,
                  "index " + to_string(index) + ": " + w.reason);
    if (auto e = endpoint(env, n.left, index, "left")) return {nullptr, e};
    if (auto e = endpoint(env, n.right, index, "right")) return {nullptr, e};
    CtxTypeResult p = go(env, n.proof);
    if (!p.ok()) return p;
    if (auto err = fits(env, p.type, *proof_obligation(n.left, n.right, index), "proof context"))
      return {nullptr, err};
    return {mk::eqrt(index, n.left, n.right), std::nullopt};
  }

  std::string hole_;
  Type hole_type_;
  Bounds b_;
};

}  // namespace

CtxTypeResult ctx_typecheck(const Env& env, const Ctx& c, const std::string& hole, const Type& hole_type,
                            const Bounds& b) {
  CtxTypeResult r = CtxChecker(hole, hole_type, b).go(env, c);
  if (!r.ok()) return r;
  return {mk::fun(hole, hole_type, r.type), std::nullopt};
}

}  // namespace lre
