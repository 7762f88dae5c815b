#include <gtest/gtest.h>

#include "lre/eval.hpp"
#include "lre/parred.hpp"
#include "lre/parser.hpp"
#include "lre/testgen.hpp"

#include "support.hpp"

using namespace lre;
using lre::test::at;

namespace {

Expr E(const char* s) { return parse_expr(s); }

}  // namespace

TEST(Parred, Examples) {
  Expr id_app = E("((lam (x : Bool) x) true)");
  EXPECT_TRUE(parred(id_app, id_app));
  EXPECT_TRUE(parred(id_app, mk::tt()));
  EXPECT_TRUE(parred(E("(lam (x : Bool) ((lam (y : Bool) y) true))"), E("(lam (x : Bool) true)")));
  // Variables are not values, so this is not a beta redex.
  EXPECT_FALSE(parred(E("(lam (x : Bool) ((lam (y : Bool) y) x))"), E("(lam (x : Bool) x)")));
  EXPECT_FALSE(parred(mk::tt(), mk::ff()));
  // Two nested redexes are not one parallel step.
  EXPECT_FALSE(parred(E("((lam (x : Bool) x) ((lam (x : Bool) x) true))"), mk::tt()));
  EXPECT_TRUE(parred(E("((eq Bool) true)"), mk::cnst(Const::eq_partial(Const::tt(), BaseType::Bool))));
  // Redexes inside types are reduced too.
  EXPECT_TRUE(parred(parse_type("(refine (v : Bool) ((lam (x : Bool) v) true))"), parse_type("(refine (v : Bool) v)")));
}

TEST(Congruent, Examples) {
  EXPECT_FALSE(congruent(E("((lam (x : Bool) x) true)"), mk::tt()));
  EXPECT_TRUE(congruent(E("(lam (x : Bool) ((lam (y : Bool) y) true))"), E("(lam (x : Bool) true)")));
  EXPECT_TRUE(congruent(mk::tt(), mk::tt()));
}

TEST(Successors, AllSubsets) {
  // Two independent redexes: four successors.
  Expr e = E("(((lam (x : Bool) (lam (y : Bool) y)) true) ((lam (z : Bool) z) false))");
  auto s = parred_successors(e);
  for (const Expr& t : s) EXPECT_TRUE(parred(e, t));
  EXPECT_GE(s.size(), 4u);
}

TEST(Sample, Examples) {
  std::mt19937_64 rng(1);
  EXPECT_TRUE(alpha_eq(sample_parred(mk::tt(), rng), mk::tt()));
  Expr pair = E("(((lam (x : Bool) (lam (w : Bool) x)) ((lam (x : Bool) x) true)) ((lam (y : Bool) y) false))");
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(parred(pair, sample_parred(pair, rng)));
}

TEST(Simulation, Examples) {
  Expr e1 = E("((lam (x : Bool) x) true)");
  SimReport f = check_forward_simulation(e1, mk::tt());
  EXPECT_EQ(f.result, TriBool::Yes);
  EXPECT_EQ(f.steps, 0u);
  SimReport g = check_forward_simulation(e1, e1);
  EXPECT_EQ(g.result, TriBool::Yes);
  EXPECT_EQ(g.steps, 1u);
  EXPECT_EQ(check_backward_simulation(e1, e1).result, TriBool::Yes);
}

TEST(Cotermination, Examples) {
  EXPECT_EQ(check_cotermination(E("((eq Bool) true true)"), mk::tt()), TriBool::Yes);
  EXPECT_EQ(check_cotermination(E("(lam (x : Bool) x)"), E("(lam (x : Bool) x)")), TriBool::Yes);
  EXPECT_EQ(check_cotermination(E("((lam (x : Bool) x) ((lam (x : Bool) x) true))"), mk::tt(), {1, 2}),
            TriBool::Unknown);
  EXPECT_EQ(check_cotermination(mk::tt(), mk::ff()), TriBool::No);
}

class ParredProperty : public ::testing::TestWithParam<int> {};

TEST_P(ParredProperty, ReflexiveAndSubsumesStep) {
  Generator g({static_cast<std::uint64_t>(GetParam()), 16, 2, true});
  for (int i = 0; i < 100; ++i) {
    Expr e = g.expr({}, g.utype());
    EXPECT_TRUE(parred(e, e));
    if (auto s = step(e)) {
      EXPECT_TRUE(parred(e, *s)) << to_string(e);
    }
  }
}

TEST_P(ParredProperty, Substitutive) {
  Generator g({static_cast<std::uint64_t>(GetParam()) + 10, 12, 2, true});
  for (int i = 0; i < 100; ++i) {
    Env env = test::env({{"x", "Bool"}});
    Expr a = g.expr(env, g.utype());
    Expr b = g.expr({}, UType::boolean());
    Expr a2 = sample_parred(a, g.rng()), b2 = sample_parred(b, g.rng());
    EXPECT_TRUE(parred(subst(a, "x", b), subst(a2, "x", b2))) << to_string(a) << " / " << to_string(b);
  }
}

TEST_P(ParredProperty, CongruentImpliesParredAndValueReduction) {
  Generator g({static_cast<std::uint64_t>(GetParam()) + 20, 12, 2, true});
  int values = 0;
  for (int i = 0; i < 100; ++i) {
    Expr e = g.expr({}, g.utype());
    for (const Expr& s : parred_successors(e)) {
      if (!congruent(e, s)) continue;
      EXPECT_TRUE(parred(e, s));
      if (!is_value(s)) continue;
      ++values;
      EvalOutcome o = eval(e, 100000);
      ASSERT_TRUE(o.is_value());
      EXPECT_TRUE(congruent(o.expr, s)) << to_string(e) << " vs " << to_string(s);
    }
  }
  EXPECT_GT(values, 0);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ParredProperty, ::testing::Range(1, 4));
