#include "lre/meta.hpp"

#include <sstream>

#include "lre/base_typing.hpp"
#include "lre/binary_lr.hpp"
#include "lre/denotation.hpp"
#include "lre/eval.hpp"
#include "lre/parred.hpp"
#include "lre/proofs.hpp"
#include "lre/query.hpp"
#include "lre/testgen.hpp"
#include "lre/typing.hpp"

namespace lre {

std::size_t SuiteReport::count(TriBool r) const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.result == r;
  return n;
}

std::size_t SuiteReport::exercised() const {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.exercised;
  return n;
}

TriBool SuiteReport::overall() const {
  if (count(TriBool::No)) return TriBool::No;
  if (count(TriBool::Unknown)) return TriBool::Unknown;
  return TriBool::Yes;
}

std::size_t SuiteReport::first_failure() const {
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (cases[i].result != TriBool::Yes) return i;
  return cases.size();
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t i) {
  // splitmix64
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

CaseResult fail(TriBool r, std::string detail) { return {r, true, std::move(detail)}; }
CaseResult vacuous() { return {TriBool::Yes, false, ""}; }

Generator generator(std::uint64_t seed, std::size_t i, int max_size = 20) {
  GenConfig cfg;
  cfg.seed = case_seed(seed, i);
  cfg.max_size = max_size;
  return Generator(cfg);
}

Type trivial(const Type& t) { return lift(unrefine(t)); }

}  // namespace

Type weaken_results(const Type& t) {
  if (const auto* r = as<Refined>(t)) return mk::base(r->base);
  if (const auto* f = as<Fun>(t)) return mk::fun(f->binder, f->dom, weaken_results(f->cod));
  return t;
}

SuiteReport constants_suite(const Bounds& b) {
  SuiteReport rep{"constants", 0, {}};
  for (const ConstantCheck& c : constants_sound(b).checks) {
    CaseResult r{c.result, true, ""};
    if (c.result != TriBool::Yes) r.detail = to_string(c.constant) + " against " + to_string(c.signature);
    rep.cases.push_back(r);
  }
  return rep;
}

SuiteReport determinism_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 20);
    UType u = g.utype();
    Expr e = g.expr({}, u);
    auto bt = try_btype({}, e);
    if (!bt || !(*bt == u)) return fail(TriBool::No, "generated term does not base-check: " + to_string(e));
    Expr cur = e;
    for (std::uint64_t n = 0;; ++n) {
      if (applicable_rules(cur) > 1) return fail(TriBool::No, "two rules apply to " + to_string(cur));
      if (is_value(cur)) return {};
      if (n >= b.fuel) return fail(TriBool::Unknown, "fuel exhausted on " + to_string(e));
      auto next = step(cur);
      if (!next) return fail(TriBool::No, "stuck at " + to_string(cur) + " from " + to_string(e));
      cur = *next;
    }
  };
  return {"determinism", seed, run_cases(count, run, exec)};
}

SuiteReport fundamental_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 12);
    Env env = g.base_env(g.uniform(0, 2));
    UType u = g.first_order_utype();
    Expr e = g.expr(env, u);
    Type t;
    int roll = g.uniform(0, 3);
    if (roll <= 1) {
      SynthResult s = synth(env, e, b);
      t = s.ok() ? s.type : lift(u);
    } else {
      t = roll == 2 ? g.type_of(env, u) : lift(u);
    }
    CheckResult c = check(env, e, t, b);
    if (c.result != TriBool::Yes) return vacuous();
    ClosingSubsts thetas = closing_substs(env, b);
    std::string judgment = to_string(env) + " |- " + to_string(e) + " : " + to_string(t);
    if (!thetas.complete) return fail(TriBool::Unknown, "closing substitutions incomplete for " + judgment);
    for (const ValueMap& theta : thetas.substs) {
      TriBool m = denote_member(close(e, theta), close(t, theta), b);
      if (m != TriBool::Yes) return fail(m, judgment + " but not in the interpretation under " + to_string(theta));
    }
    TriBool rel = open_related(env, e, e, t, b);
    if (rel != TriBool::Yes) return fail(rel, judgment + " but not related to itself");
    return {};
  };
  return {"fundamental", seed, run_cases(count, run, exec)};
}

SuiteReport simulation_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 20);
    Expr e = g.expr({}, g.utype());
    Expr e2 = sample_parred(e, g.rng());
    std::string pair = to_string(e) + " => " + to_string(e2);
    if (!parred(e, e2)) return fail(TriBool::No, "sampled successor is not a parallel step: " + pair);
    SimReport f = check_forward_simulation(e, e2, b);
    if (f.result != TriBool::Yes) return fail(f.result, "forward: " + pair + ": " + f.message);
    SimReport k = check_backward_simulation(e, e2, b);
    if (k.result != TriBool::Yes) return fail(k.result, "backward: " + pair + ": " + k.message);
    return {};
  };
  return {"simulation", seed, run_cases(count, run, exec)};
}

SuiteReport cotermination_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 20);
    Expr e = g.expr({}, g.utype());
    ParredTrace t = sample_parred_trace(e, 3, g.rng());
    if (!t.valid()) return fail(TriBool::No, "invalid parallel trace from " + to_string(e));
    for (std::size_t k = 1; k < t.steps.size(); ++k) {
      TriBool r = check_cotermination(t.steps[0], t.steps[k], b);
      if (r != TriBool::Yes)
        return fail(r, to_string(t.steps[0]) + " and " + to_string(t.steps[k]) + " do not coterminate");
    }
    return {};
  };
  return {"cotermination", seed, run_cases(count, run, exec)};
}

namespace {

struct GenCtx {
  Ctx ctx;
  UType result;
};

GenCtx gen_ctx(Generator& g, const Env& env, const UType& hole) {
  Ctx c = ctx::hole();
  UType cur = hole;
  int depth = g.uniform(1, 3);
  for (int k = 0; k < depth; ++k) {
    int roll = g.uniform(0, 9);
    if (cur.kind() == UType::Kind::Unit && roll < 3) {
      Expr l = g.expr(env, UType::boolean(), g.uniform(1, 3));
      Expr r = g.chance(0.5) ? l : g.expr(env, UType::boolean(), g.uniform(1, 3));
      c = ctx::beq(BaseType::Bool, l, r, c);
      cur = UType::eq(UType::boolean());
    } else if (cur.kind() == UType::Kind::Fun && roll < 5) {
      c = ctx::app_l(c, g.expr(env, cur.first(), g.uniform(1, 3)));
      cur = cur.second();
    } else if (roll < 7) {
      BaseType bt = g.chance(0.75) ? BaseType::Bool : BaseType::Unit;
      Type annot = g.chance(0.5) ? mk::base(bt) : g.type_of(env, UType::of(bt));
      c = ctx::lam("cy" + std::to_string(k), annot, c);
      cur = UType::fun(UType::of(bt), cur);
    } else {
      UType r = g.chance(0.7) ? UType::boolean() : UType::unit();
      c = ctx::app_r(g.expr(env, UType::fun(cur, r), g.uniform(2, 6)), c);
      cur = r;
    }
  }
  return {c, cur};
}

}  // namespace

SuiteReport congruence_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 8);
    Env env = g.base_env(g.uniform(0, 1));
    UType ux = g.chance(0.7) ? (g.chance(0.8) ? UType::boolean() : UType::unit())
                             : UType::fun(UType::boolean(), UType::boolean());
    Type tx = g.chance(0.5) ? lift(ux) : g.type_of(env, ux);
    Expr el = g.expr(env, ux, g.uniform(1, 6));
    Expr er;
    int roll = g.uniform(0, 3);
    if (roll == 0)
      er = el;
    else if (roll == 1)
      er = g.expr(env, ux, g.uniform(1, 6));
    else
      er = sample_parred_trace(el, roll, g.rng()).steps.back();
    GenCtx gc = gen_ctx(g, env, ux);
    const std::string hole = "hole";
    CtxTypeResult ct = ctx_typecheck(env, gc.ctx, hole, tx, b);
    if (!ct.ok()) return vacuous();
    Type t = as<Fun>(ct.type)->cod;
    Expr cl = ctx_apply(gc.ctx, el);
    Expr cr = ctx_apply(gc.ctx, er);
    std::string inst = to_string(env) + " C = " + to_string(gc.ctx) + ", el = " + to_string(el) +
                       ", er = " + to_string(er) + ", hole : " + to_string(tx);
    bool exercised = false;
    TriBool acc = TriBool::Yes;
    std::string detail;

    if (open_related(env, el, er, tx, b) == TriBool::Yes) {
      exercised = true;
      TriBool r = open_related(env, cl, cr, subst(t, hole, el), b);
      if (r != TriBool::Yes && detail.empty()) detail = "plugged terms not related (" + std::string(to_string(r)) + "): " + inst;
      acc = acc && r;
    }

    Type index = weaken_results(subst(t, hole, el));
    if (is_equable(tx) && is_equable(index)) {
      auto premise = canonical_proof(tx, el, er);
      if (premise && check(env, *premise, mk::eqrt(tx, el, er), b).result == TriBool::Yes) {
        exercised = true;
        Expr proof = *canonical_proof(index, cl, cr);
        TriBool r = check(env, proof, mk::eqrt(index, cl, cr), b).result;
        if (r != TriBool::Yes && detail.empty())
          detail = "no equality proof for plugged terms (" + std::string(to_string(r)) + "): " + inst;
        acc = acc && r;
      }
    }
    if (!exercised) return vacuous();
    return {acc, true, detail};
  };
  return {"congruence", seed, run_cases(count, run, exec)};
}

SuiteReport selfify_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 10);
    Env env = g.base_env(g.uniform(0, 2));
    BaseType bt = g.chance(0.75) ? BaseType::Bool : BaseType::Unit;
    Expr e = g.expr(env, UType::of(bt));
    Type t;
    if (g.chance(0.5)) {
      t = g.type_of(env, UType::of(bt));
    } else {
      SynthResult s = synth(env, e, b);
      t = s.ok() ? s.type : mk::base(bt);
    }
    if (check(env, e, t, b).result != TriBool::Yes) return vacuous();
    CheckResult c = check(env, e, selfify(bt, e), b);
    if (c.result != TriBool::Yes)
      return fail(c.result, to_string(e) + " checks at " + to_string(t) + " but not at its singleton: " +
                                (c.error ? to_string(*c.error) : ""));
    return {};
  };
  return {"selfify", seed, run_cases(count, run, exec)};
}

SuiteReport subeq_rigidity_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec) {
  auto run = [&](std::size_t i) -> CaseResult {
    Generator g = generator(seed, i, 6);
    Env env = g.base_env(g.uniform(0, 1));
    UType u = g.first_order_utype();
    Type t = g.chance(0.5) ? lift(u) : g.type_of(env, u);
    Expr l1 = g.expr(env, u), r1 = g.expr(env, u);
    Expr l2 = g.chance(0.5) ? l1 : g.expr(env, u);
    Expr r2 = g.expr(env, u);
    for (int k = 0; k < 8 && alpha_eq(l1, l2) && alpha_eq(r1, r2); ++k) r2 = g.expr(env, u);
    if (alpha_eq(l1, l2) && alpha_eq(r1, r2)) return vacuous();
    Type s1 = mk::eqrt(t, l1, r1), s2 = mk::eqrt(g.chance(0.5) ? t : trivial(t), l2, r2);
    SubtypeResult s = subtype(env, s1, s2, b);
    if (s.result != TriBool::No) return fail(TriBool::No, to_string(s1) + " <: " + to_string(s2) + " was not rejected");
    return {};
  };
  return {"subeq-rigidity", seed, run_cases(count, run, exec)};
}

SuiteReport peq_suite(const Bounds& b, Exec exec, int max_size, int type_depth) {
  struct Group {
    Type type;
    std::vector<Expr> terms;
  };
  std::vector<Group> groups;
  for (const UType& u : equable_utypes(type_depth)) {
    Group grp{lift(u), {}};
    for (const Expr& e : enumerate_terms(u, max_size))
      if (check({}, e, grp.type, b).result == TriBool::Yes) grp.terms.push_back(e);
    groups.push_back(std::move(grp));
  }
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t gi = 0; gi < groups.size(); ++gi)
    for (std::size_t k = 0; k < groups[gi].terms.size(); ++k) index.emplace_back(gi, k);

  // provable[row] holds the proofs e_row = e_j that check, by j.
  std::vector<std::vector<std::optional<Expr>>> provable(index.size());
  run_cases(
      index.size(),
      [&](std::size_t n) {
        const auto& [gi, k] = index[n];
        const Group& grp = groups[gi];
        auto& row = provable[n];
        row.resize(grp.terms.size());
        for (std::size_t j = 0; j < grp.terms.size(); ++j) {
          auto p = canonical_proof(grp.type, grp.terms[k], grp.terms[j]);
          if (p && check({}, *p, mk::eqrt(grp.type, grp.terms[k], grp.terms[j]), b).result == TriBool::Yes)
            row[j] = p;
        }
        return CaseResult{};
      },
      exec);
  std::vector<std::size_t> row_start(groups.size(), 0);
  for (std::size_t n = index.size(); n-- > 0;) row_start[index[n].first] = n;

  auto run = [&](std::size_t n) -> CaseResult {
    const auto& [gi, k] = index[n];
    const Group& grp = groups[gi];
    const Type& t = grp.type;
    const Expr& e1 = grp.terms[k];
    auto proof_of = [&](std::size_t a, std::size_t c) -> const std::optional<Expr>& {
      return provable[row_start[gi] + a][c];
    };
    auto recheck = [&](const Expr& p, const Expr& l, const Expr& r, const char* what) -> std::optional<CaseResult> {
      TriBool c = check({}, p, mk::eqrt(t, l, r), b).result;
      if (c != TriBool::Yes) return fail(c, std::string(what) + " proof " + to_string(p) + " does not recheck");
      TriBool rel = open_related({}, l, r, t, b);
      if (rel != TriBool::Yes)
        return fail(rel, std::string(what) + ": " + to_string(l) + " and " + to_string(r) + " not related at " +
                             to_string(t));
      return std::nullopt;
    };
    try {
      if (auto bad = recheck(prove_refl({}, e1, t), e1, e1, "refl")) return *bad;
      for (std::size_t j = 0; j < grp.terms.size(); ++j) {
        const auto& p12 = proof_of(k, j);
        if (!p12) continue;
        const Expr& e2 = grp.terms[j];
        Expr s = prove_sym({}, *p12, t, e1, e2);
        if (auto bad = recheck(s, e2, e1, "sym")) return *bad;
        if (!alpha_eq(prove_sym({}, s, t, e2, e1), *p12))
          return fail(TriBool::No, "sym twice changed " + to_string(*p12));
        for (std::size_t m = 0; m < grp.terms.size(); ++m) {
          const auto& p23 = proof_of(j, m);
          if (!p23) continue;
          const Expr& e3 = grp.terms[m];
          if (auto bad = recheck(prove_trans({}, *p12, *p23, t, e1, e2, e3), e1, e3, "trans")) return *bad;
        }
      }
    } catch (const ProofError& err) {
      return fail(TriBool::No, std::string(to_string(err.kind())) + ": " + err.what());
    }
    return {};
  };
  return {"peq", 0, run_cases(index.size(), run, exec)};
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream os;
  os << "suite " << r.name << " seed " << r.seed << ": " << r.cases.size() << " cases, " << r.exercised()
     << " exercised, yes " << r.count(TriBool::Yes) << ", no " << r.count(TriBool::No) << ", unknown "
     << r.count(TriBool::Unknown) << " => " << to_string(r.overall()) << "\n";
  int shown = 0;
  for (std::size_t i = 0; i < r.cases.size() && shown < 5; ++i) {
    if (r.cases[i].result == TriBool::Yes) continue;
    os << "  case " << i << ": " << r.cases[i].detail << "\n";
    ++shown;
  }
  return os.str();
}

}  // namespace lre
