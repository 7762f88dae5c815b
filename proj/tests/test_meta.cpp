#include <gtest/gtest.h>

#include <set>

#include "lre/meta.hpp"
#include "lre/parser.hpp"

using namespace lre;

namespace {
const Bounds kB;
}

TEST(Meta, CaseSeedsDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::size_t i = 0; i < 1000; ++i) seen.insert(case_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(case_seed(42, 7), case_seed(42, 7));
  EXPECT_NE(case_seed(42, 7), case_seed(43, 7));
}

TEST(Meta, RunCasesKeepsOrder) {
  auto f = [](std::size_t i) { return CaseResult{i % 3 ? TriBool::Yes : TriBool::No, true, std::to_string(i)}; };
  auto a = run_cases(100, f, Exec::Serial), b = run_cases(100, f, Exec::Parallel);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[3].detail, "3");
}

TEST(Meta, ReportSummary) {
  SuiteReport r{"x", 1, {{TriBool::Yes, true, ""}, {TriBool::Unknown, false, "u"}, {TriBool::Yes, true, ""}}};
  EXPECT_EQ(r.overall(), TriBool::Unknown);
  EXPECT_EQ(r.first_failure(), 1u);
  EXPECT_EQ(r.exercised(), 2u);
  r.cases.push_back({TriBool::No, true, "n"});
  EXPECT_EQ(r.overall(), TriBool::No);
  EXPECT_NE(to_text(r).find("case 3: n"), std::string::npos);
}

TEST(Meta, WeakenResults) {
  Type t = parse_type("(fun (x : (refine (v : Bool) v)) (fun (y : Bool) (refine (v : Bool) ((eq Bool) v x))))");
  EXPECT_TRUE(alpha_eq(weaken_results(t), parse_type("(fun (x : (refine (v : Bool) v)) (fun (y : Bool) Bool))")));
}

TEST(Meta, SerialEqualsParallel) {
  using Suite = SuiteReport (*)(std::uint64_t, std::size_t, const Bounds&, Exec);
  for (Suite s : {Suite(determinism_suite), Suite(fundamental_suite), Suite(simulation_suite),
                  Suite(cotermination_suite), Suite(congruence_suite), Suite(selfify_suite),
                  Suite(subeq_rigidity_suite)}) {
    SuiteReport a = s(5, 60, kB, Exec::Serial), b = s(5, 60, kB, Exec::Parallel);
    EXPECT_EQ(a.name, b.name);
    EXPECT_EQ(a.cases, b.cases) << a.name;
    EXPECT_EQ(a.overall(), TriBool::Yes) << to_text(a);
  }
}

TEST(Meta, SmallPeqSweep) {
  SuiteReport a = peq_suite(kB, Exec::Serial, 3, 1), b = peq_suite(kB, Exec::Parallel, 3, 1);
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.overall(), TriBool::Yes) << to_text(a);
  EXPECT_GT(a.cases.size(), 10u);
}
