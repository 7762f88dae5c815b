#include "lre/proofs.hpp"

#include "lre/typing.hpp"

namespace lre {

std::string_view to_string(ProofError::Kind k) {
  switch (k) {
    case ProofError::Kind::NotEquable: return "NotEquable";
    case ProofError::Kind::NotAValue: return "NotAValue";
    case ProofError::Kind::HeadMismatch: return "HeadMismatch";
    case ProofError::Kind::MiddleMismatch: return "MiddleMismatch";
    case ProofError::Kind::Precondition: return "Precondition";
  }
  return "?";
}

namespace {

void require_equable(const Type& t) {
  if (!is_equable(t)) throw ProofError(ProofError::Kind::NotEquable, to_string(t) + " is not equable");
}

void require_value(const Expr& p) {
  if (!is_value(p)) throw ProofError(ProofError::Kind::NotAValue, to_string(p) + " is not a value");
}

template <class... Ts>
std::string fresh_for(const Env& env, const std::string& x, const Ts&... in) {
  std::set<std::string> avoid = env.names();
  (
      [&] {
        auto fv = free_vars(in);
        avoid.insert(fv.begin(), fv.end());
      }(),
      ...);
  return fresh_name(x, avoid);
}

// The proof body of a function-indexed proof value, opened at variable `z`.
Expr open_body(const XEq& q, const std::string& z) {
  const auto* lam = as<Lam>(q.proof);
  if (!lam)
    throw ProofError(ProofError::Kind::NotAValue, "proof argument " + to_string(q.proof) + " is not a lambda");
  Expr body = lam->binder == z ? lam->body : subst(lam->body, lam->binder, mk::var(z));
  require_value(body);
  return body;
}

void check_ends(const Expr& l, const Expr& r, const Expr& e1, const Expr& e2, const Expr& p) {
  if (!alpha_eq(l, e1) || !alpha_eq(r, e2))
    throw ProofError(ProofError::Kind::HeadMismatch,
                     "endpoints of " + to_string(p) + " are not " + to_string(e1) + " and " + to_string(e2));
}

}  // namespace

Type pfty(const Expr& l, const Expr& r, const Type& t) {
  require_equable(t);
  return *proof_obligation(l, r, t);
}

Expr prove_refl(const Env& env, const Expr& e, const Type& t) {
  require_equable(t);
  if (const auto* r = as<Refined>(t)) return mk::beq(r->base, e, e, mk::unit());
  const auto& f = *as<Fun>(t);
  std::string x = fresh_for(env, f.binder, e, t);
  Type cod = x == f.binder ? f.cod : subst(f.cod, f.binder, mk::var(x));
  Expr ex = mk::app(e, mk::var(x));
  Expr inner = prove_refl(env.extended(x, f.dom), ex, cod);
  return mk::xeq(x, f.dom, cod, e, e, mk::lam(x, f.dom, inner));
}

Expr prove_sym(const Env& env, const Expr& p, const Type& t, const Expr& e1, const Expr& e2) {
  require_equable(t);
  require_value(p);
  if (const auto* r = as<Refined>(t)) {
    const auto* q = as<BEq>(p);
    if (!q || q->base != r->base)
      throw ProofError(ProofError::Kind::HeadMismatch, to_string(p) + " is not a " +
                                                           std::string(to_string(r->base)) + " equality proof");
    check_ends(q->left, q->right, e1, e2, p);
    return mk::beq(q->base, q->right, q->left, q->proof);
  }
  const auto* q = as<XEq>(p);
  if (!q) throw ProofError(ProofError::Kind::HeadMismatch, to_string(p) + " is not a function equality proof");
  check_ends(q->left, q->right, e1, e2, p);
  const auto& lam = *as<Lam>(q->proof);
  std::string z = lam.binder;
  Expr body = open_body(*q, z);
  Type cod = z == q->binder ? q->cod : subst(q->cod, q->binder, mk::var(z));
  Expr flipped = prove_sym(env.extended(z, lam.annot), body, cod, mk::app(q->left, mk::var(z)),
                           mk::app(q->right, mk::var(z)));
  return mk::xeq(q->binder, q->dom, q->cod, q->right, q->left, mk::lam(z, lam.annot, flipped));
}

Expr prove_trans(const Env& env, const Expr& p12, const Expr& p23, const Type& t, const Expr& e1, const Expr& e2,
                 const Expr& e3) {
  require_equable(t);
  require_value(p12);
  require_value(p23);
  if (const auto* r = as<Refined>(t)) {
    const auto* a = as<BEq>(p12);
    const auto* b = as<BEq>(p23);
    if (!a || !b || a->base != r->base || b->base != r->base)
      throw ProofError(ProofError::Kind::HeadMismatch, "expected two " + std::string(to_string(r->base)) +
                                                           " equality proofs");
    if (!alpha_eq(a->right, b->left))
      throw ProofError(ProofError::Kind::MiddleMismatch,
                       "middle endpoints differ: " + to_string(a->right) + " vs " + to_string(b->left));
    check_ends(a->left, a->right, e1, e2, p12);
    check_ends(b->left, b->right, e2, e3, p23);
    return mk::beq(r->base, e1, e3, mk::unit());
  }
  const auto* a = as<XEq>(p12);
  const auto* b = as<XEq>(p23);
  if (!a || !b) throw ProofError(ProofError::Kind::HeadMismatch, "expected two function equality proofs");
  if (!alpha_eq(a->right, b->left))
    throw ProofError(ProofError::Kind::MiddleMismatch,
                     "middle endpoints differ: " + to_string(a->right) + " vs " + to_string(b->left));
  check_ends(a->left, a->right, e1, e2, p12);
  check_ends(b->left, b->right, e2, e3, p23);
  const auto& f = *as<Fun>(t);
  std::string z = fresh_for(env, f.binder, t, e1, e2, e3, a->proof, b->proof);
  Type cod = z == f.binder ? f.cod : subst(f.cod, f.binder, mk::var(z));
  Expr zv = mk::var(z);
  Expr inner = prove_trans(env.extended(z, f.dom), open_body(*a, z), open_body(*b, z), cod, mk::app(e1, zv),
                           mk::app(e2, zv), mk::app(e3, zv));
  return mk::xeq(z, f.dom, cod, e1, e3, mk::lam(z, f.dom, inner));
}

}  // namespace lre
