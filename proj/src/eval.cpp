#include "lre/eval.hpp"

namespace lre {

namespace {

// Axioms at the root of an application of two values.
std::optional<Expr> contract(const App& a) {
  if (const auto* lam = as<Lam>(a.fun)) return subst(lam->body, lam->binder, a.arg);
  const auto* f = as<Const>(a.fun);
  const auto* c = as<Const>(a.arg);
  if (!f || !c || !c->is_base_value()) return std::nullopt;
  if (f->tag == ConstTag::EqOp && c->base_of() == f->base) return mk::cnst(Const::eq_partial(*c, f->base));
  if (f->tag == ConstTag::EqOpPartial && c->base_of() == f->base)
    return f->inner_const() == *c ? mk::tt() : mk::ff();
  return std::nullopt;
}

}  // namespace

std::optional<Expr> step(const Expr& e) {
  if (const auto* a = as<App>(e)) {
    if (!is_value(a->fun)) {
      if (auto f = step(a->fun)) return mk::app(*f, a->arg);
      return std::nullopt;
    }
    if (!is_value(a->arg)) {
      if (auto x = step(a->arg)) return mk::app(a->fun, *x);
      return std::nullopt;
    }
    return contract(*a);
  }
  if (const auto* b = as<BEq>(e)) {
    if (auto p = step(b->proof)) return mk::beq(b->base, b->left, b->right, *p);
    return std::nullopt;
  }
  if (const auto* x = as<XEq>(e)) {
    if (auto p = step(x->proof)) return mk::xeq(x->binder, x->dom, x->cod, x->left, x->right, *p);
    return std::nullopt;
  }
  return std::nullopt;
}

int applicable_rules(const Expr& e) {
  int n = 0;
  if (const auto* a = as<App>(e)) {
    if (step(a->fun)) ++n;                              // E e
    if (is_value(a->fun) && step(a->arg)) ++n;          // v E
    if (is_value(a->fun) && is_value(a->arg) && contract(*a)) ++n;  // beta, eq-stage, eq-compare
    if (is_value(e)) n += 100;                          // values must not be applications
  } else if (const auto* b = as<BEq>(e)) {
    if (step(b->proof)) ++n;
  } else if (const auto* x = as<XEq>(e)) {
    if (step(x->proof)) ++n;
  }
  return n;
}

EvalOutcome eval(const Expr& e, std::uint64_t fuel) {
  Expr cur = e;
  std::uint64_t steps = 0;
  for (;;) {
    if (is_value(cur)) return {EvalOutcome::Kind::Value, cur, steps};
    if (steps >= fuel) return {EvalOutcome::Kind::FuelExhausted, cur, steps};
    auto next = step(cur);
    if (!next) return {EvalOutcome::Kind::Stuck, cur, steps};
    cur = std::move(*next);
    ++steps;
  }
}

std::vector<Expr> trace(const Expr& e, std::uint64_t fuel) {
  std::vector<Expr> out{e};
  for (std::uint64_t i = 0; i < fuel; ++i) {
    auto next = step(out.back());
    if (!next) break;
    out.push_back(std::move(*next));
  }
  return out;
}

TriBool evaluates_to_const(const Expr& e, const Const& c, std::uint64_t fuel) {
  auto r = eval(e, fuel);
  if (r.kind == EvalOutcome::Kind::FuelExhausted) return TriBool::Unknown;
  if (r.kind == EvalOutcome::Kind::Stuck) return TriBool::No;
  const auto* got = as<Const>(r.expr);
  return tri(got && *got == c);
}

}  // namespace lre
