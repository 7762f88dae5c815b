#include "lre/base_typing.hpp"

namespace lre {

UType UType::eq(UType of) {
  UType u(Kind::Eq);
  u.first_ = std::make_shared<const UType>(std::move(of));
  return u;
}

UType UType::fun(UType dom, UType cod) {
  UType u(Kind::Fun);
  u.first_ = std::make_shared<const UType>(std::move(dom));
  u.second_ = std::make_shared<const UType>(std::move(cod));
  return u;
}

bool operator==(const UType& a, const UType& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case UType::Kind::Bool:
    case UType::Kind::Unit: return true;
    case UType::Kind::Eq: return *a.first_ == *b.first_;
    case UType::Kind::Fun: return *a.first_ == *b.first_ && *a.second_ == *b.second_;
  }
  return false;
}

std::string to_string(const UType& u) {
  switch (u.kind()) {
    case UType::Kind::Bool: return "Bool";
    case UType::Kind::Unit: return "Unit";
    case UType::Kind::Eq: return "(EqT " + to_string(u.first()) + ")";
    case UType::Kind::Fun: return "(" + to_string(u.first()) + " -> " + to_string(u.second()) + ")";
  }
  return "?";
}

int depth(const UType& u) {
  switch (u.kind()) {
    case UType::Kind::Bool:
    case UType::Kind::Unit: return 0;
    case UType::Kind::Eq: return 1 + depth(u.first());
    case UType::Kind::Fun: return 1 + std::max(depth(u.first()), depth(u.second()));
  }
  return 0;
}

UType unrefine(const Type& t) {
  if (const auto* r = as<Refined>(t)) return UType::of(r->base);
  if (const auto* f = as<Fun>(t)) return UType::fun(unrefine(f->dom), unrefine(f->cod));
  return UType::eq(unrefine(as<EqRT>(t)->index));
}

UEnv unrefine(const Env& env) {
  UEnv out;
  out.reserve(env.size());
  for (const auto& [x, t] : env.bindings()) out.emplace_back(x, unrefine(t));
  return out;
}

namespace {

Expr canonical_inhabitant(const UType& u) {
  switch (u.kind()) {
    case UType::Kind::Bool: return mk::tt();
    case UType::Kind::Unit: return mk::unit();
    case UType::Kind::Fun: return mk::lam("x", lift(u.first()), canonical_inhabitant(u.second()));
    case UType::Kind::Eq: {
      const UType& of = u.first();
      Expr e = canonical_inhabitant(of);
      if (of.is_base()) return mk::beq(of.base(), e, e, mk::unit());
      // Equality proofs over richer indices are never inspected by lift's callers.
      return e;
    }
  }
  return mk::unit();
}

}  // namespace

Type lift(const UType& u) {
  switch (u.kind()) {
    case UType::Kind::Bool: return mk::base(BaseType::Bool);
    case UType::Kind::Unit: return mk::base(BaseType::Unit);
    case UType::Kind::Fun: return mk::fun("x", lift(u.first()), lift(u.second()));
    case UType::Kind::Eq: {
      Expr e = canonical_inhabitant(u.first());
      return mk::eqrt(lift(u.first()), e, e);
    }
  }
  return nullptr;
}

namespace {

[[noreturn]] void mismatch(const std::string& what) { throw BaseTypeError(BaseTypeError::Kind::AppMismatch, what); }

void expect(const UType& got, const UType& want, const Expr& e, const char* role) {
  if (!(got == want))
    throw BaseTypeError(BaseTypeError::Kind::EqArity, std::string(role) + " " + to_string(e) + " has base type " +
                                                          to_string(got) + ", expected " + to_string(want));
}

}  // namespace

UType btype(const UEnv& env, const Expr& e) {
  return std::visit(
      [&](const auto& n) -> UType {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, Const>) {
          return unrefine(tycon(n));
        } else if constexpr (std::is_same_v<N, Var>) {
          for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == n.name) return it->second;
          throw BaseTypeError(BaseTypeError::Kind::Unbound, "unbound variable " + n.name);
        } else if constexpr (std::is_same_v<N, App>) {
          UType f = btype(env, n.fun);
          if (f.kind() != UType::Kind::Fun)
            mismatch("applying " + to_string(n.fun) + " of non-function base type " + to_string(f));
          UType a = btype(env, n.arg);
          if (!(a == f.first()))
            mismatch("argument " + to_string(n.arg) + " has base type " + to_string(a) + ", expected " +
                     to_string(f.first()));
          return f.second();
        } else if constexpr (std::is_same_v<N, Lam>) {
          UType dom = unrefine(n.annot);
          UEnv inner = env;
          inner.emplace_back(n.binder, dom);
          return UType::fun(dom, btype(inner, n.body));
        } else if constexpr (std::is_same_v<N, BEq>) {
          UType b = UType::of(n.base);
          expect(btype(env, n.left), b, n.left, "left endpoint");
          expect(btype(env, n.right), b, n.right, "right endpoint");
          expect(btype(env, n.proof), UType::unit(), n.proof, "proof");
          return UType::eq(b);
        } else {
          UType index = UType::fun(unrefine(n.dom), unrefine(n.cod));
          expect(btype(env, n.left), index, n.left, "left endpoint");
          expect(btype(env, n.right), index, n.right, "right endpoint");
          // The proof maps each argument to a pointwise equality proof.
          expect(btype(env, n.proof), UType::fun(unrefine(n.dom), UType::eq(unrefine(n.cod))), n.proof, "proof");
          return UType::eq(index);
        }
      },
      e->node);
}

std::optional<UType> try_btype(const UEnv& env, const Expr& e) {
  try {
    return btype(env, e);
  } catch (const BaseTypeError&) {
    return std::nullopt;
  }
}

}  // namespace lre
