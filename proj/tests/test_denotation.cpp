#include <gtest/gtest.h>

#include <set>

#include "lre/denotation.hpp"
#include "lre/eval.hpp"
#include "lre/parser.hpp"
#include "lre/testgen.hpp"
#include "lre/typing.hpp"

#include "support.hpp"

using namespace lre;
using lre::test::at;

namespace {

Expr E(const char* s) { return parse_expr(s); }
Type T(const char* s) { return parse_type(s); }
const UType B = UType::boolean();
const UType U = UType::unit();

Const run(const Expr& e) {
  EvalOutcome o = eval(e, 100000);
  EXPECT_TRUE(o.is_value());
  const auto* c = as<Const>(o.expr);
  EXPECT_NE(c, nullptr) << to_string(o.expr);
  return c ? *c : Const::unit();
}

// Truth table of a closed first-order function over Bool/Unit arguments.
std::string table(const Expr& f, const std::vector<std::vector<Expr>>& args) {
  std::string s;
  std::vector<std::size_t> idx(args.size(), 0);
  while (true) {
    Expr app = f;
    for (std::size_t i = 0; i < args.size(); ++i) app = mk::app(app, args[i][idx[i]]);
    s += to_string(run(app)) + ",";
    std::size_t k = args.size();
    while (k > 0 && ++idx[k - 1] == args[k - 1].size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return s;
}

}  // namespace

TEST(Enumerate, Base) {
  Enumeration b = enumerate_values(B, 1);
  ASSERT_EQ(b.values.size(), 2u);
  EXPECT_TRUE(alpha_eq(b.values[0], mk::tt()));
  EXPECT_TRUE(alpha_eq(b.values[1], mk::ff()));
  EXPECT_TRUE(b.complete);
  Enumeration u = enumerate_values(U, 1);
  ASSERT_EQ(u.values.size(), 1u);
  EXPECT_TRUE(alpha_eq(u.values[0], mk::unit()));
}

// Oracle: the only boolean primitive is the equality test (xnor), so closed
// first-order functions denote exactly the affine tables c0 ^ c1 x1 ^ ... over
// their Bool arguments.  Each must appear once.
std::set<std::string> affine_tables(const std::vector<std::vector<Expr>>& args) {
  std::vector<std::size_t> bool_pos;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (args[i].size() == 2) bool_pos.push_back(i);
  std::set<std::string> out;
  for (unsigned coef = 0; coef < (2u << bool_pos.size()); ++coef) {
    std::string s;
    std::vector<std::size_t> idx(args.size(), 0);
    while (true) {
      unsigned bit = coef & 1;
      for (std::size_t k = 0; k < bool_pos.size(); ++k)
        // index 0 is true
        bit ^= ((coef >> (k + 1)) & 1) & (idx[bool_pos[k]] == 0 ? 1u : 0u);
      s += std::string(bit ? "true" : "false") + ",";
      std::size_t k = args.size();
      while (k > 0 && ++idx[k - 1] == args[k - 1].size()) idx[--k] = 0;
      if (k == 0) break;
    }
    out.insert(s);
  }
  return out;
}

TEST(Enumerate, FirstOrderFunctionsCoverAllTables) {
  std::vector<Expr> bools{mk::tt(), mk::ff()}, units{mk::unit()};
  struct Shape {
    UType u;
    std::vector<std::vector<Expr>> args;
    std::size_t tables;
  };
  std::vector<Shape> shapes{
      {UType::fun(B, B), {bools}, 4},
      {UType::fun(U, B), {units}, 2},
      {UType::fun(B, UType::fun(B, B)), {bools, bools}, 8},
      {UType::fun(U, UType::fun(B, B)), {units, bools}, 4},
      {UType::fun(B, UType::fun(U, B)), {bools, units}, 4},
  };
  for (const Shape& s : shapes) {
    Enumeration en = enumerate_values(s.u, 1);
    EXPECT_TRUE(en.complete);
    std::set<std::string> seen;
    for (const Expr& f : en.values) {
      EXPECT_TRUE(is_value(f));
      seen.insert(table(f, s.args));
    }
    EXPECT_EQ(seen.size(), en.values.size()) << to_string(s.u);
    EXPECT_EQ(seen.size(), s.tables) << to_string(s.u);
    EXPECT_EQ(seen, affine_tables(s.args)) << to_string(s.u);
  }
}

TEST(Enumerate, HigherOrderIsIncomplete) {
  Enumeration en = enumerate_values(UType::fun(UType::fun(B, B), B), 2);
  EXPECT_FALSE(en.complete);
  EXPECT_GE(en.values.size(), 2u);
}

TEST(Member, Examples) {
  Bounds b;
  EXPECT_EQ(denote_member(mk::tt(), T("(refine (v : Bool) ((eq Bool) v true))"), b), TriBool::Yes);
  EXPECT_EQ(denote_member(mk::ff(), T("(refine (v : Bool) ((eq Bool) v true))"), b), TriBool::No);
  EXPECT_EQ(denote_member(E("(beq Bool true true unit)"), T("(eqrt Bool true true)"), b), TriBool::Yes);
  EXPECT_EQ(denote_member(E("(beq Bool true false unit)"), T("(eqrt Bool true false)"), b), TriBool::No);
  EXPECT_EQ(denote_member(E("(lam (x : Bool) x)"),
                          T("(fun (x : (refine (v : Bool) ((eq Bool) v true))) (refine (v : Bool) ((eq Bool) v x)))"), b),
            TriBool::Yes);
  EXPECT_EQ(denote_member(E("(lam (x : Bool) true)"), T("(fun (x : Bool) (refine (v : Bool) ((eq Bool) v x)))"), b),
            TriBool::No);
  // Non-terminating cases do not exist, but running out of fuel is Unknown.
  EXPECT_EQ(denote_member(E("((lam (x : Bool) x) ((lam (x : Bool) x) true))"), T("Bool"), {1, 2}), TriBool::Unknown);
  EXPECT_EQ(denote_member(E("((lam (x : Bool) x) ((lam (x : Bool) x) true))"), T("Bool"), {2, 2}), TriBool::Yes);
}

TEST(ClosingSubsts, Examples) {
  Bounds b;
  Env env1 = test::env({{"x", "Bool"}});
  ClosingSubsts c1 = closing_substs(env1, b);
  ASSERT_EQ(c1.substs.size(), 2u);
  EXPECT_TRUE(c1.complete);

  ClosingSubsts c2 = closing_substs(test::env({{"x", "(refine (v : Bool) ((eq Bool) v true))"}}), b);
  ASSERT_EQ(c2.substs.size(), 1u);
  EXPECT_TRUE(alpha_eq(at(c2.substs[0], "x"), mk::tt()));

  ClosingSubsts c3 = closing_substs(test::env({{"x", "Bool"}, {"y", "(refine (v : Bool) ((eq Bool) v x))"}}), b);
  ASSERT_EQ(c3.substs.size(), 2u);
  for (const auto& th : c3.substs) EXPECT_TRUE(alpha_eq(at(th, "x"), at(th, "y")));

  ClosingSubsts c4 = closing_substs({}, b);
  EXPECT_EQ(c4.substs.size(), 1u);
}

TEST(Constants, AllSound) {
  ConstantsReport r = constants_sound({});
  EXPECT_TRUE(r.all_yes());
  EXPECT_EQ(r.checks.size(), all_constants().size());
  // true, false, unit, two equalities, three staged equalities.
  EXPECT_EQ(r.checks.size(), 8u);
  Type partial = tycon(Const::eq_partial(Const::tt(), BaseType::Bool));
  EXPECT_EQ(denote_member(mk::cnst(Const::eq_partial(Const::tt(), BaseType::Bool)), partial, {}), TriBool::Yes);
  // A wrong signature is refuted.
  EXPECT_EQ(denote_member(mk::tt(), tycon(Const::ff()), {}), TriBool::No);
}

TEST(CanonicalProof, Shapes) {
  auto p = canonical_proof(T("Bool"), mk::tt(), mk::tt());
  ASSERT_TRUE(p);
  EXPECT_TRUE(alpha_eq(*p, E("(beq Bool true true unit)")));
  auto q = canonical_proof(T("(fun (x : Bool) Bool)"), E("(lam (x : Bool) x)"), E("(lam (x : Bool) x)"));
  ASSERT_TRUE(q);
  EXPECT_NE(as<XEq>(*q), nullptr);
  EXPECT_FALSE(canonical_proof(T("(eqrt Bool true true)"), mk::tt(), mk::tt()));
}

class DenotationProperty : public ::testing::TestWithParam<int> {};

TEST_P(DenotationProperty, BoundsMonotone) {
  Generator g({static_cast<std::uint64_t>(GetParam()), 12, 2, false});
  for (int i = 0; i < 60; ++i) {
    UType u = g.first_order_utype();
    Type t = g.type_of({}, u);
    Expr e = g.expr({}, u);
    TriBool full = denote_member(e, t, {100000, 2});
    for (Bounds lo : {Bounds{1, 2}, Bounds{3, 1}, Bounds{10, 2}, Bounds{100000, 1}}) {
      TriBool r = denote_member(e, t, lo);
      if (r != TriBool::Unknown) {
        EXPECT_EQ(r, full) << to_string(e) << " : " << to_string(t);
      }
    }
  }
}

TEST_P(DenotationProperty, MembershipSurvivesEvaluation) {
  Generator g({static_cast<std::uint64_t>(GetParam()) + 7, 12, 2, false});
  int hits = 0;
  for (int i = 0; i < 60; ++i) {
    UType u = g.first_order_utype();
    Type t = g.type_of({}, u);
    Expr e = g.expr({}, u);
    if (denote_member(e, t, {}) != TriBool::Yes) continue;
    ++hits;
    EvalOutcome o = eval(e, 100000);
    ASSERT_TRUE(o.is_value());
    EXPECT_EQ(denote_member(o.expr, t, {}), TriBool::Yes);
  }
  EXPECT_GT(hits, 0);
}

TEST_P(DenotationProperty, ExactOnFirstOrderFragment) {
  Generator g({static_cast<std::uint64_t>(GetParam()) + 11, 12, 2, false});
  for (int i = 0; i < 60; ++i) {
    Env env = g.base_env(2);
    UType u = g.first_order_utype();
    Type t = g.type_of(env, u);
    ClosingSubsts cs = closing_substs(env, {});
    EXPECT_TRUE(cs.complete);
    for (const auto& th : cs.substs)
      EXPECT_NE(denote_member(close(g.expr(env, u), th), close(t, th), {}), TriBool::Unknown);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, DenotationProperty, ::testing::Range(1, 4));
