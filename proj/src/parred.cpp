#include "lre/parred.hpp"

#include <unordered_set>

#include "lre/eval.hpp"

namespace lre {

namespace {

// eq1 / eq2 at the root.
std::optional<Expr> contract_eq(const App& a) {
  const auto* f = as<Const>(a.fun);
  const auto* c = as<Const>(a.arg);
  if (!f || !c || !c->is_base_value() || c->base_of() != f->base) return std::nullopt;
  if (f->tag == ConstTag::EqOp) return mk::cnst(Const::eq_partial(*c, f->base));
  if (f->tag == ConstTag::EqOpPartial) return f->inner_const() == *c ? mk::tt() : mk::ff();
  return std::nullopt;
}

bool is_beta(const App& a) { return as<Lam>(a.fun) && is_value(a.arg); }

// Renames the binders of two scopes to one name fresh for both.
template <class A, class B>
std::pair<A, B> unify_binders(const std::string& x, const A& a, const std::string& y, const B& b) {
  if (x == y) return {a, b};
  std::set<std::string> avoid = free_vars(a);
  auto fb = free_vars(b);
  avoid.insert(fb.begin(), fb.end());
  std::string z = fresh_name(x, avoid);
  return {z == x ? a : subst(a, x, mk::var(z)), subst(b, y, mk::var(z))};
}

bool structural(const Expr& a, const Expr& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* x = as<Var>(a)) return x->name == as<Var>(b)->name;
  if (const auto* c = as<Const>(a)) return *c == *as<Const>(b);
  if (const auto* l = as<Lam>(a)) {
    const auto& m = *as<Lam>(b);
    if (!parred(l->annot, m.annot)) return false;
    auto [p, q] = unify_binders(l->binder, l->body, m.binder, m.body);
    return parred(p, q);
  }
  if (const auto* ap = as<App>(a)) {
    const auto& bq = *as<App>(b);
    return parred(ap->fun, bq.fun) && parred(ap->arg, bq.arg);
  }
  if (const auto* q = as<BEq>(a)) {
    const auto& r = *as<BEq>(b);
    return q->base == r.base && parred(q->left, r.left) && parred(q->right, r.right) && parred(q->proof, r.proof);
  }
  const auto& q = *as<XEq>(a);
  const auto& r = *as<XEq>(b);
  if (!parred(q.dom, r.dom)) return false;
  auto [c1, c2] = unify_binders(q.binder, q.cod, r.binder, r.cod);
  return parred(c1, c2) && parred(q.left, r.left) && parred(q.right, r.right) && parred(q.proof, r.proof);
}

template <class T>
void dedupe(std::vector<T>& xs) {
  std::unordered_set<std::string> seen;
  std::vector<T> out;
  for (auto& x : xs)
    if (seen.insert(to_string(x)).second) out.push_back(std::move(x));
  xs = std::move(out);
}

std::vector<Type> type_successors(const Type& t) {
  std::vector<Type> out;
  if (const auto* r = as<Refined>(t)) {
    for (const Expr& e : parred_successors(r->refinement)) out.push_back(mk::refined(r->binder, r->base, e));
  } else if (const auto* f = as<Fun>(t)) {
    auto cods = type_successors(f->cod);
    for (const Type& d : type_successors(f->dom))
      for (const Type& c : cods) out.push_back(mk::fun(f->binder, d, c));
  } else {
    const auto& q = *as<EqRT>(t);
    auto ls = parred_successors(q.left);
    auto rs = parred_successors(q.right);
    for (const Type& i : type_successors(q.index))
      for (const Expr& l : ls)
        for (const Expr& r : rs) out.push_back(mk::eqrt(i, l, r));
  }
  dedupe(out);
  return out;
}

}  // namespace

bool parred(const Type& a, const Type& b) {
  if (a->node.index() != b->node.index()) return false;
  if (const auto* r = as<Refined>(a)) {
    const auto& s = *as<Refined>(b);
    if (r->base != s.base) return false;
    auto [p, q] = unify_binders(r->binder, r->refinement, s.binder, s.refinement);
    return parred(p, q);
  }
  if (const auto* f = as<Fun>(a)) {
    const auto& g = *as<Fun>(b);
    if (!parred(f->dom, g.dom)) return false;
    auto [p, q] = unify_binders(f->binder, f->cod, g.binder, g.cod);
    return parred(p, q);
  }
  const auto& q = *as<EqRT>(a);
  const auto& r = *as<EqRT>(b);
  return parred(q.index, r.index) && parred(q.left, r.left) && parred(q.right, r.right);
}

bool congruent(const Expr& a, const Expr& b) { return structural(a, b); }

bool parred(const Expr& a, const Expr& b) {
  if (structural(a, b)) return true;
  const auto* ap = as<App>(a);
  if (!ap) return false;
  if (auto c = contract_eq(*ap)) return alpha_eq(*c, b);
  if (!is_beta(*ap)) return false;
  const auto& lam = *as<Lam>(ap->fun);
  auto args = parred_successors(ap->arg);
  for (const Expr& body : parred_successors(lam.body))
    for (const Expr& v : args)
      if (alpha_eq(subst(body, lam.binder, v), b)) return true;
  return false;
}

std::vector<Expr> parred_successors(const Expr& a) {
  std::vector<Expr> out;
  if (as<Var>(a) || as<Const>(a)) return {a};
  if (const auto* l = as<Lam>(a)) {
    auto bodies = parred_successors(l->body);
    for (const Type& t : type_successors(l->annot))
      for (const Expr& e : bodies) out.push_back(mk::lam(l->binder, t, e));
  } else if (const auto* ap = as<App>(a)) {
    auto fs = parred_successors(ap->fun);
    auto xs = parred_successors(ap->arg);
    for (const Expr& f : fs)
      for (const Expr& x : xs) out.push_back(mk::app(f, x));
    if (auto c = contract_eq(*ap)) out.push_back(*c);
    if (is_beta(*ap)) {
      const auto& lam = *as<Lam>(ap->fun);
      for (const Expr& body : parred_successors(lam.body))
        for (const Expr& x : xs) out.push_back(subst(body, lam.binder, x));
    }
  } else if (const auto* q = as<BEq>(a)) {
    auto ls = parred_successors(q->left);
    auto rs = parred_successors(q->right);
    auto ps = parred_successors(q->proof);
    for (const Expr& l : ls)
      for (const Expr& r : rs)
        for (const Expr& p : ps) out.push_back(mk::beq(q->base, l, r, p));
  } else {
    const auto& x = *as<XEq>(a);
    auto doms = type_successors(x.dom);
    auto cods = type_successors(x.cod);
    auto ls = parred_successors(x.left);
    auto rs = parred_successors(x.right);
    auto ps = parred_successors(x.proof);
    for (const Type& d : doms)
      for (const Type& c : cods)
        for (const Expr& l : ls)
          for (const Expr& r : rs)
            for (const Expr& p : ps) out.push_back(mk::xeq(x.binder, d, c, l, r, p));
  }
  dedupe(out);
  return out;
}

namespace {

class Sampler {
 public:
  explicit Sampler(std::mt19937_64& rng) : rng_(rng) {}

  Expr go(const Expr& e) {
    if (as<Var>(e) || as<Const>(e)) return e;
    if (const auto* l = as<Lam>(e)) return mk::lam(l->binder, go(l->annot), go(l->body));
    if (const auto* ap = as<App>(e)) {
      Expr f = go(ap->fun);
      Expr x = go(ap->arg);
      if (auto c = contract_eq(*ap); c && coin()) return *c;
      if (is_beta(*ap) && coin()) {
        const auto& lam = *as<Lam>(f);
        return subst(lam.body, lam.binder, x);
      }
      return mk::app(f, x);
    }
    if (const auto* q = as<BEq>(e)) return mk::beq(q->base, go(q->left), go(q->right), go(q->proof));
    const auto& q = *as<XEq>(e);
    return mk::xeq(q.binder, go(q.dom), go(q.cod), go(q.left), go(q.right), go(q.proof));
  }

  Type go(const Type& t) {
    if (const auto* r = as<Refined>(t)) return mk::refined(r->binder, r->base, go(r->refinement));
    if (const auto* f = as<Fun>(t)) return mk::fun(f->binder, go(f->dom), go(f->cod));
    const auto& q = *as<EqRT>(t);
    return mk::eqrt(go(q.index), go(q.left), go(q.right));
  }

 private:
  bool coin() { return (rng_() & 1) != 0; }
  std::mt19937_64& rng_;
};

}  // namespace

Expr sample_parred(const Expr& e, std::mt19937_64& rng) { return Sampler(rng).go(e); }

bool ParredTrace::valid() const {
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    if (!parred(steps[i], steps[i + 1])) return false;
  return true;
}

ParredTrace sample_parred_trace(const Expr& e, int n, std::mt19937_64& rng) {
  ParredTrace t{{e}};
  for (int i = 0; i < n; ++i) t.steps.push_back(sample_parred(t.steps.back(), rng));
  return t;
}

namespace {

// Walks the reduction sequence of `from` looking for a term related to
// `target` by `rel(found, target)`.
template <class Rel>
SimReport search(const Expr& from, const Expr& target, const Bounds& b, Rel rel) {
  Expr cur = from;
  for (std::uint64_t n = 0;; ++n) {
    if (rel(cur)) return {TriBool::Yes, n, cur, ""};
    if (n >= b.fuel) return {TriBool::Unknown, n, nullptr, "fuel exhausted"};
    auto next = step(cur);
    if (!next)
      return {TriBool::No, n, nullptr,
              "no term on the reduction path of " + to_string(from) + " matches " + to_string(target)};
    cur = std::move(*next);
  }
}

}  // namespace

SimReport check_forward_simulation(const Expr& e1, const Expr& e2, const Bounds& b) {
  auto s = step(e1);
  if (!s) return {TriBool::Yes, 0, e2, "left side does not step"};
  return search(e2, *s, b, [&](const Expr& e2p) { return parred(*s, e2p); });
}

SimReport check_backward_simulation(const Expr& e1, const Expr& e2, const Bounds& b) {
  auto s = step(e2);
  if (!s) return {TriBool::Yes, 0, e1, "right side does not step"};
  return search(e1, *s, b, [&](const Expr& e1p) { return parred(e1p, *s); });
}

TriBool check_cotermination(const Expr& e1, const Expr& e2, const Bounds& b) {
  auto o1 = eval(e1, b.fuel);
  auto o2 = eval(e2, b.fuel);
  if (o1.kind == EvalOutcome::Kind::FuelExhausted || o2.kind == EvalOutcome::Kind::FuelExhausted)
    return TriBool::Unknown;
  const Const* c1 = o1.is_value() ? as<Const>(o1.expr) : nullptr;
  const Const* c2 = o2.is_value() ? as<Const>(o2.expr) : nullptr;
  if (!c1 && !c2) return TriBool::Yes;
  return tri(c1 && c2 && *c1 == *c2);
}

}  // namespace lre
