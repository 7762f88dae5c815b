#include <gtest/gtest.h>

#include "lre/query.hpp"

using namespace lre;

TEST(Query, Forms) {
  EXPECT_TRUE(std::holds_alternative<Expr>(parse_query("(lam (x : Bool) x)")));
  EXPECT_TRUE(std::holds_alternative<Type>(parse_query("(fun (x : Bool) Bool)")));
  auto a = std::get<Ascribe>(parse_query("(ascribe (env (x : Bool)) x Bool)"));
  ASSERT_EQ(a.env.size(), 1u);
  EXPECT_EQ(a.env.bindings()[0].first, "x");
  auto s = std::get<SubtypeQuery>(parse_query("(subtype-query Bool Bool)"));
  EXPECT_TRUE(s.env.empty());
  EXPECT_TRUE(std::holds_alternative<LrQuery>(parse_query("(lr-query true true Bool)")));
  EXPECT_TRUE(std::holds_alternative<SymQuery>(parse_query("(sym-query (beq Bool true true unit) Bool true true)")));
  EXPECT_TRUE(std::holds_alternative<TransQuery>(
      parse_query("(trans-query (beq Bool true true unit) (beq Bool true true unit) Bool true true true)")));
}

TEST(Query, Errors) {
  EXPECT_THROW(parse_query("(ascribe true)"), ParseError);
  EXPECT_THROW(parse_query("(lr-query true Bool)"), ParseError);
  EXPECT_THROW(parse_query("true false"), ParseError);
  EXPECT_THROW(parse_query("(ascribe (env (x Bool)) x Bool)"), ParseError);
  EXPECT_THROW(parse_query("env"), ParseError);
}

TEST(Query, ManyAndEnvPrinting) {
  auto qs = parse_queries("(ascribe true Bool) ; c\n(ascribe unit Unit)\nBool");
  EXPECT_EQ(qs.size(), 3u);
  Env env = std::get<Ascribe>(parse_query("(ascribe (env (x : Bool) (y : (refine (v : Bool) v))) x Bool)")).env;
  std::string printed = to_string(env);
  EXPECT_EQ(printed, "(env (x : Bool) (y : (refine (v : Bool) v)))");
  auto again = std::get<Ascribe>(parse_query("(ascribe " + printed + " x Bool)"));
  EXPECT_EQ(to_string(again.env), printed);
}
