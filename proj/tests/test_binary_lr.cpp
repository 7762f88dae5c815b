#include <gtest/gtest.h>

#include "lre/binary_lr.hpp"
#include "lre/eval.hpp"
#include "lre/parser.hpp"
#include "lre/testgen.hpp"

#include "support.hpp"

using namespace lre;
using lre::test::at;

namespace {

Expr E(const char* s) { return parse_expr(s); }
Type T(const char* s) { return parse_type(s); }
const Bounds kB;

}  // namespace

TEST(EquivEnvs, Examples) {
  EquivEnvs a = equiv_envs(test::env({{"x", "Bool"}}), kB);
  ASSERT_EQ(a.envs.size(), 2u);
  for (const EquivEnv& d : a.envs) {
    ASSERT_EQ(d.entries().size(), 1u);
    EXPECT_TRUE(alpha_eq(d.entries()[0].left, d.entries()[0].right));
  }
  EXPECT_EQ(equiv_envs({}, kB).envs.size(), 1u);
  EquivEnvs c = equiv_envs(test::env({{"x", "(refine (v : Bool) ((eq Bool) v true))"}}), kB);
  ASSERT_EQ(c.envs.size(), 1u);
  EXPECT_TRUE(alpha_eq(c.envs[0].entries()[0].left, mk::tt()));
}

TEST(EquivEnvs, FunctionBindingsPairDistinctTerms) {
  EquivEnvs d = equiv_envs(test::env({{"f", "(fun (x : (refine (v : Bool) ((eq Bool) v true))) Bool)"}}), kB);
  // Functions agreeing on true are related even when syntactically different.
  bool distinct = false;
  for (const EquivEnv& e : d.envs) distinct |= !alpha_eq(e.entries()[0].left, e.entries()[0].right);
  EXPECT_TRUE(distinct);
}

TEST(ValRelated, Examples) {
  EquivEnv empty;
  EXPECT_EQ(val_related(empty, mk::tt(), mk::tt(), T("Bool"), kB), TriBool::Yes);
  EXPECT_EQ(val_related(empty, mk::tt(), mk::ff(), T("Bool"), kB), TriBool::No);
  EXPECT_EQ(val_related(empty, E("(lam (x : Bool) x)"), E("(lam (x : Bool) ((eq Bool) x false))"),
                        T("(fun (x : Bool) Bool)"), kB),
            TriBool::No);
  // Proof values are never inspected.
  for (const char* p : {"(beq Bool true true unit)", "(beq Bool false false unit)", "(beq Bool true false unit)"})
    for (const char* q : {"(beq Bool true true unit)", "(beq Bool false true unit)"})
      EXPECT_EQ(val_related(empty, E(p), E(q), T("(eqrt Bool true true)"), kB), TriBool::Yes);
  EXPECT_EQ(val_related(empty, E("(beq Bool true true unit)"), E("(beq Bool true true unit)"),
                        T("(eqrt Bool true false)"), kB),
            TriBool::No);
}

TEST(OpenRelated, Examples) {
  EXPECT_EQ(open_related({}, E("((lam (x : Bool) x) true)"), mk::tt(), T("Bool"), kB), TriBool::Yes);
  EXPECT_EQ(open_related(test::env({{"x", "Bool"}}), mk::var("x"), E("((eq Bool) x true)"), T("Bool"), kB), TriBool::Yes);
  EXPECT_EQ(open_related({}, mk::tt(), mk::ff(), T("Bool"), kB), TriBool::No);
  EXPECT_EQ(open_related({}, E("(lam (x : Bool) x)"), E("(lam (x : Bool) true)"),
                         T("(fun (x : (refine (v : Bool) ((eq Bool) v true))) Bool)"), kB),
            TriBool::Yes);
  // Refinements on results are part of the relation.
  EXPECT_EQ(open_related({}, mk::ff(), mk::ff(), T("(refine (v : Bool) v)"), kB), TriBool::No);
}

TEST(Contexts, ApplyAndPrint) {
  Expr id = E("(lam (x : Bool) x)");
  EXPECT_TRUE(alpha_eq(ctx_apply(ctx::app_l(ctx::hole(), mk::tt()), id), mk::app(id, mk::tt())));
  EXPECT_TRUE(alpha_eq(ctx_apply(ctx::hole(), id), id));
  // Context binders capture.
  Expr captured = ctx_apply(ctx::lam("y", T("Bool"), ctx::hole()), mk::var("y"));
  EXPECT_TRUE(alpha_eq(captured, E("(lam (y : Bool) y)")));
  EXPECT_EQ(to_string(ctx::app_r(id, ctx::hole())), "((lam (x : Bool) x) [])");
}

TEST(Contexts, Typing) {
  Type bb = T("Bool");
  CtxTypeResult h = ctx_typecheck({}, ctx::hole(), "h", bb, kB);
  ASSERT_TRUE(h.ok());
  EXPECT_TRUE(alpha_eq(h.type, T("(fun (h : Bool) Bool)")));

  CtxTypeResult arg = ctx_typecheck({}, ctx::app_r(E("(lam (x : Bool) x)"), ctx::hole()), "h", bb, kB);
  ASSERT_TRUE(arg.ok());
  // The result mentions the hole.
  EXPECT_TRUE(free_vars(as<Fun>(arg.type)->cod).count("h"));

  CtxTypeResult lam = ctx_typecheck({}, ctx::lam("y", T("Unit"), ctx::hole()), "h", bb, kB);
  ASSERT_TRUE(lam.ok());
  EXPECT_NE(as<Fun>(as<Fun>(lam.type)->cod), nullptr);

  CtxTypeResult bad = ctx_typecheck({}, ctx::app_l(ctx::hole(), mk::tt()), "h", bb, kB);
  EXPECT_FALSE(bad.ok());

  CtxTypeResult proof = ctx_typecheck({}, ctx::beq(BaseType::Bool, mk::tt(), mk::tt(), ctx::hole()), "h",
                                      T("(refine (u : Unit) ((eq Bool) true true))"), kB);
  ASSERT_TRUE(proof.ok());
  EXPECT_TRUE(alpha_eq(as<Fun>(proof.type)->cod, T("(eqrt Bool true true)")));
}

class LrProperty : public ::testing::TestWithParam<int> {};

TEST_P(LrProperty, ClosedUnderEvaluation) {
  Generator g({static_cast<std::uint64_t>(GetParam()), 12, 2, true});
  for (int i = 0; i < 60; ++i) {
    UType u = g.first_order_utype();
    Type t = g.chance(0.5) ? lift(u) : g.type_of({}, u);
    Expr a = g.expr({}, u), b = g.expr({}, u);
    TriBool r = expr_related({}, a, b, t, kB);
    auto sa = step(a), sb = step(b);
    if (sa) { EXPECT_EQ(expr_related({}, *sa, b, t, kB), r); }
    if (sb) { EXPECT_EQ(expr_related({}, a, *sb, t, kB), r); }
  }
}

TEST_P(LrProperty, SymmetricAndTransitive) {
  Generator g({static_cast<std::uint64_t>(GetParam()) + 10, 8, 2, true});
  for (int i = 0; i < 40; ++i) {
    Env env = g.base_env(g.uniform(0, 1));
    UType u = g.first_order_utype();
    Type t = g.chance(0.5) ? lift(u) : g.type_of(env, u);
    Expr a = g.expr(env, u), b = g.expr(env, u), c = g.expr(env, u);
    TriBool ab = open_related(env, a, b, t, kB), bc = open_related(env, b, c, t, kB);
    EXPECT_EQ(open_related(env, b, a, t, kB), ab) << to_string(a) << " ~ " << to_string(b);
    if (ab == TriBool::Yes && bc == TriBool::Yes) { EXPECT_EQ(open_related(env, a, c, t, kB), TriBool::Yes); }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, LrProperty, ::testing::Range(1, 4));
