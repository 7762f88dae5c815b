#include "lre/testgen.hpp"

#include "lre/denotation.hpp"

namespace lre {

Generator::Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

int Generator::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

bool Generator::chance(double p) { return std::bernoulli_distribution(p)(rng_); }

std::string Generator::binder() {
  static const char* names[] = {"a", "b", "c", "d", "x", "y"};
  return names[uniform(0, 5)];
}

UType Generator::utype() { return utype(cfg_.max_type_depth); }

UType Generator::utype(int depth) {
  int roll = uniform(0, 9);
  if (depth <= 0 || roll < 4) return chance(0.75) ? UType::boolean() : UType::unit();
  if (roll < 8 || !cfg_.allow_eqrt) return UType::fun(utype(depth - 1), utype(depth - 1));
  UType of = utype(depth - 1);
  while (of.kind() == UType::Kind::Eq) of = utype(depth - 1);
  return UType::eq(of);
}

UType Generator::first_order_utype() {
  switch (uniform(0, 5)) {
    case 0:
    case 1: return UType::boolean();
    case 2: return UType::unit();
    case 3: return UType::fun(UType::boolean(), UType::boolean());
    case 4: return UType::fun(chance(0.5) ? UType::unit() : UType::boolean(), UType::boolean());
    default: return UType::fun(UType::boolean(), UType::fun(UType::boolean(), UType::boolean()));
  }
}

Expr Generator::pred(const Env& env, const std::string& v, BaseType b) {
  switch (uniform(0, 5)) {
    case 0:
    case 1: return mk::tt();
    case 2: {
      Expr c = b == BaseType::Bool ? (chance(0.5) ? mk::tt() : mk::ff()) : mk::unit();
      return mk::eq_app(b, mk::var(v), c);
    }
    case 3: {
      std::vector<std::string> same;
      for (const auto& [x, t] : env.bindings())
        if (const auto* r = as<Refined>(t); r && r->base == b && x != v) same.push_back(x);
      if (same.empty()) return mk::eq_app(b, mk::var(v), mk::var(v));
      return mk::eq_app(b, mk::var(v), mk::var(same[uniform(0, int(same.size()) - 1)]));
    }
    case 4: return chance(0.3) ? mk::ff() : mk::tt();
    default: return gen(env.extended(v, mk::base(b)), UType::boolean(), uniform(1, 5));
  }
}

Type Generator::type_of(const Env& env, const UType& u) {
  switch (u.kind()) {
    case UType::Kind::Bool:
    case UType::Kind::Unit: {
      BaseType b = u.base();
      return mk::refined("v", b, pred(env, "v", b));
    }
    case UType::Kind::Fun: {
      std::string x = binder();
      Type dom = type_of(env, u.first());
      return mk::fun(x, dom, type_of(env.extended(x, dom), u.second()));
    }
    case UType::Kind::Eq: {
      Type index = type_of(env, u.first());
      return mk::eqrt(index, gen(env, u.first(), uniform(1, 4)), gen(env, u.first(), uniform(1, 4)));
    }
  }
  return nullptr;
}

Type Generator::type(const Env& env) { return type_of(env, utype()); }

Env Generator::base_env(int n) {
  Env env;
  for (int i = 0; i < n; ++i) {
    BaseType b = chance(0.8) ? BaseType::Bool : BaseType::Unit;
    std::string x = "x" + std::to_string(i);
    env = env.extended(x, mk::refined("v", b, pred(env, "v", b)));
  }
  return env;
}

std::optional<Expr> Generator::from_env(const Env& env, const UType& u, int size) {
  // Variables whose type, after some applications, erases to u.
  std::vector<std::pair<std::string, std::vector<UType>>> hits;
  std::set<std::string> seen;
  const auto& bs = env.bindings();
  for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
    if (!seen.insert(it->first).second) continue;
    UType t = unrefine(it->second);
    std::vector<UType> args;
    for (;;) {
      if (t == u) {
        hits.emplace_back(it->first, args);
        break;
      }
      if (t.kind() != UType::Kind::Fun) break;
      args.push_back(t.first());
      UType next = t.second();
      t = next;
    }
  }
  if (hits.empty()) return std::nullopt;
  const auto& [x, args] = hits[uniform(0, int(hits.size()) - 1)];
  Expr e = mk::var(x);
  int each = args.empty() ? 0 : std::max(1, (size - 1) / int(args.size()));
  for (const UType& a : args) e = mk::app(e, gen(env, a, each));
  return e;
}

Expr Generator::leaf(const Env& env, const UType& u) {
  if (chance(0.4))
    if (auto v = from_env(env, u, 1)) return *v;
  switch (u.kind()) {
    case UType::Kind::Bool: return chance(0.5) ? mk::tt() : mk::ff();
    case UType::Kind::Unit: return mk::unit();
    case UType::Kind::Fun: {
      const UType& d = u.first();
      const UType& c = u.second();
      if (d.is_base() && c == UType::fun(d, UType::boolean()) && chance(0.5)) return mk::eq(d.base());
      if (d.is_base() && c.kind() == UType::Kind::Bool && chance(0.4)) {
        Expr first = d.base() == BaseType::Bool ? (chance(0.5) ? mk::tt() : mk::ff()) : mk::unit();
        return mk::cnst(Const::eq_partial(*as<Const>(first), d.base()));
      }
      std::string x = binder();
      return mk::lam(x, lift(d), leaf(env.extended(x, lift(d)), c));
    }
    case UType::Kind::Eq: {
      if (auto v = from_env(env, u, 1)) return *v;
      const UType& of = u.first();
      if (of.kind() == UType::Kind::Eq) throw GiveUp("no closed term of type " + to_string(u));
      Expr l = leaf(env, of);
      Expr r = chance(0.5) ? l : leaf(env, of);
      if (of.is_base()) return mk::beq(of.base(), l, r, mk::unit());
      return *canonical_proof(lift(of), l, r);
    }
  }
  return mk::unit();
}

Expr Generator::redex(const Env& env, const UType& u, int size, std::optional<UType> arg_type) {
  std::string x = binder();
  UType a = arg_type ? *arg_type : chance(0.8) ? (chance(0.75) ? UType::boolean() : UType::unit()) : utype(1);
  Type annot = chance(0.5) ? lift(a) : type_of(env, a);
  int body = std::max(1, (size - 2) * 2 / 3);
  Expr arg = gen(env, a, std::max(1, size - 2 - body));
  return mk::app(mk::lam(x, annot, gen(env.extended(x, annot), u, body)), arg);
}

Expr Generator::gen_fun(const Env& env, const UType& u, int size) {
  if (chance(0.15))
    if (auto v = from_env(env, u, size)) return *v;
  std::string x = binder();
  Type annot = chance(0.5) ? lift(u.first()) : type_of(env, u.first());
  return mk::lam(x, annot, gen(env.extended(x, annot), u.second(), size - 1));
}

Expr Generator::gen_eq(const Env& env, const UType& u, int size) {
  const UType& of = u.first();
  if (of.kind() == UType::Kind::Eq) {
    if (auto v = from_env(env, u, size)) return *v;
    throw GiveUp("no term of type " + to_string(u));
  }
  int part = std::max(1, (size - 1) / 3);
  Expr l = gen(env, of, part);
  Expr r = chance(0.3) ? l : gen(env, of, part);
  if (of.is_base()) {
    Expr p = chance(0.5) ? mk::unit() : gen(env, UType::unit(), part);
    return mk::beq(of.base(), l, r, p);
  }
  std::string x = binder();
  Type dom = chance(0.5) ? lift(of.first()) : type_of(env, of.first());
  Type cod = chance(0.5) ? lift(of.second()) : type_of(env.extended(x, dom), of.second());
  Expr p;
  if (chance(0.5)) {
    // Pointwise proof in canonical shape.
    auto avoid = free_vars(l);
    auto fr = free_vars(r);
    avoid.insert(fr.begin(), fr.end());
    std::string y = fresh_name(x, avoid);
    Type cy = y == x ? cod : subst(cod, x, mk::var(y));
    auto inner = canonical_proof(cy, mk::app(l, mk::var(y)), mk::app(r, mk::var(y)));
    if (inner) p = mk::lam(y, dom, *inner);
  }
  if (!p) p = gen(env, UType::fun(of.first(), UType::eq(of.second())), part);
  return mk::xeq(x, dom, cod, l, r, p);
}

Expr Generator::gen(const Env& env, const UType& u, int size) {
  if (size <= 1) return leaf(env, u);
  int roll = uniform(0, 99);
  if (roll < 12) return redex(env, u, size);
  if (roll < 24)
    if (auto v = from_env(env, u, size)) return *v;
  switch (u.kind()) {
    case UType::Kind::Bool: {
      if (roll < 70) {
        BaseType b = chance(0.7) ? BaseType::Bool : BaseType::Unit;
        int part = std::max(1, (size - 1) / 2);
        return mk::eq_app(b, gen(env, UType::of(b), part), gen(env, UType::of(b), part));
      }
      if (roll < 85 && cfg_.allow_eqrt) {
        // Apply a function that consumes an equality proof.
        UType of = chance(0.5) ? UType::boolean() : UType::fun(UType::boolean(), UType::boolean());
        return redex(env, u, size, UType::eq(of));
      }
      return leaf(env, u);
    }
    case UType::Kind::Unit: return roll < 60 ? redex(env, u, size) : leaf(env, u);
    case UType::Kind::Fun: return gen_fun(env, u, size);
    case UType::Kind::Eq: return gen_eq(env, u, size);
  }
  return leaf(env, u);
}

UType gen_utype(const GenConfig& cfg) { return Generator(cfg).utype(); }

Type gen_type(const GenConfig& cfg, const Env& env) { return Generator(cfg).type(env); }

Expr gen_expr(const GenConfig& cfg, const Env& env, const UType& target) {
  return Generator(cfg).expr(env, target);
}

Expr Generator::expr(const Env& env, const UType& target) { return expr(env, target, uniform(1, cfg_.max_size)); }

Expr Generator::expr(const Env& env, const UType& target, int size) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Expr e = gen(env, target, std::min(size, cfg_.max_size));
    if (lre::size(e) <= std::size_t(cfg_.max_size)) return e;
  }
  return leaf(env, target);
}

namespace {

class TermEnumerator {
 public:
  std::vector<Expr> exactly(const UEnv& env, const UType& u, int n) {
    std::vector<Expr> out;
    if (n == 1) {
      for (const Const& c : all_constants())
        if (unrefine(tycon(c)) == u) out.push_back(mk::cnst(c));
      std::set<std::string> seen;
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (seen.insert(it->first).second && it->second == u) out.push_back(mk::var(it->first));
      return out;
    }
    if (u.kind() == UType::Kind::Fun) {
      std::string x = binder(env.size());
      UEnv inner = env;
      inner.emplace_back(x, u.first());
      auto bodies = exactly(inner, u.second(), n - 1);
      for (const Type& annot : annotations(u.first()))
        for (const Expr& body : bodies) out.push_back(mk::lam(x, annot, body));
    }
    for (const UType& a : arg_types()) {
      for (int i = 1; i + 1 < n; ++i) {
        auto fs = exactly(env, UType::fun(a, u), i);
        if (fs.empty()) continue;
        auto xs = exactly(env, a, n - 1 - i);
        for (const Expr& f : fs)
          for (const Expr& x : xs) out.push_back(mk::app(f, x));
      }
    }
    return out;
  }

 private:
  static std::string binder(std::size_t depth) {
    static const char* names[] = {"x", "y", "z", "w"};
    return depth < 4 ? names[depth] : "x" + std::to_string(depth);
  }

  static std::vector<Type> annotations(const UType& d) {
    if (d.kind() == UType::Kind::Bool)
      return {mk::base(BaseType::Bool), mk::refined("v", BaseType::Bool, mk::eq_app(BaseType::Bool, mk::var("v"), mk::tt())),
              mk::refined("v", BaseType::Bool, mk::eq_app(BaseType::Bool, mk::var("v"), mk::ff()))};
    return {lift(d)};
  }

  static const std::vector<UType>& arg_types() {
    static const std::vector<UType> ts = [] {
      std::vector<UType> v{UType::boolean(), UType::unit()};
      for (const UType& a : {UType::boolean(), UType::unit()})
        for (const UType& b : {UType::boolean(), UType::unit()}) v.push_back(UType::fun(a, b));
      return v;
    }();
    return ts;
  }
};

}  // namespace

std::vector<Expr> enumerate_terms(const UType& u, int max_size) {
  TermEnumerator en;
  std::vector<Expr> out;
  for (int n = 1; n <= max_size; ++n) {
    auto xs = en.exactly({}, u, n);
    out.insert(out.end(), xs.begin(), xs.end());
  }
  return out;
}

std::vector<UType> equable_utypes(int depth) {
  std::vector<UType> out{UType::boolean(), UType::unit()};
  if (depth <= 0) return out;
  auto smaller = equable_utypes(depth - 1);
  for (const UType& a : smaller)
    for (const UType& b : smaller) out.push_back(UType::fun(a, b));
  return out;
}

std::vector<GenConfig> shrink(const GenConfig& cfg) {
  std::vector<GenConfig> out;
  for (int s = cfg.max_size / 2; s >= 1; s /= 2) {
    GenConfig c = cfg;
    c.max_size = s;
    out.push_back(c);
  }
  if (cfg.max_type_depth > 0) {
    GenConfig c = cfg;
    c.max_type_depth = cfg.max_type_depth - 1;
    out.push_back(c);
  }
  return out;
}

}  // namespace lre
