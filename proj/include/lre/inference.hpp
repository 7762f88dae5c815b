#ifndef LRE_INFERENCE_HPP
#define LRE_INFERENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lre/syntax.hpp"
#include "lre/tribool.hpp"
#include "lre/typing.hpp"

namespace lre {

/// The single refinement variable, over binder `binder`.
struct PredVar {
  std::string name = "kappa";
  std::string binder = "v";
};

/// Either the refinement variable or a concrete predicate.
struct Atom {
  std::optional<Expr> pred;  // nullopt for the refinement variable

  static Atom kappa() { return {}; }
  static Atom of(Expr e) { return {std::move(e)}; }
  bool is_kappa() const { return !pred; }
};

struct Constraint {
  std::string label;
  Env env;
  std::vector<Atom> hyps;
  Atom head;
};

std::string to_string(const Atom& a, const PredVar& k = {});
std::string to_string(const Constraint& c, const PredVar& k = {});

/// Implications i-vi for checking `XEq h k lemma` at an equality whose
/// domain is refined by `eq_dom`.  All predicates are over `v : Bool`.
std::vector<Constraint> gen_xeq_constraints(const Expr& h_dom, const Expr& k_dom, const Expr& lemma_dom,
                                            const Expr& eq_dom, const Expr& h, const Expr& k);

/// The naive variant: i'-iv', with the refinement variable only ever
/// assumed.
std::vector<Constraint> gen_funext_constraints(const Expr& h_dom, const Expr& k_dom, const Expr& lemma_dom,
                                               const Expr& h, const Expr& k);

struct ImplicationResult {
  TriBool result = TriBool::Yes;
  std::optional<ValueMap> witness;  // a valuation refuting it
};

/// Every enumerated valuation of env satisfying all hyps satisfies head.
ImplicationResult check_implication(const Env& env, const std::vector<Expr>& hyps, const Expr& head, const Bounds& b);

struct Solution {
  std::vector<Expr> conjuncts;  // the empty conjunction is true
  int rounds = 0;
  std::optional<std::string> unsat;

  bool contains_false() const;
};

std::string to_string(const Solution& s);

/// {true, false, v == true, v == false} plus v == x for every Bool name x
/// in env other than v.
std::vector<Expr> demo_candidates(const Env& env, const PredVar& k = {});

/// Greatest-fixpoint weakening: drop candidates refuted by a constraint
/// with the refinement variable at its head, until nothing changes.
Solution houdini_solve(const std::vector<Constraint>& cs, const std::vector<Expr>& candidates, const Bounds& b,
                       const PredVar& k = {});

struct DemoReport {
  Expr f, g, domain_pred;
  Type domain;
  std::vector<Expr> candidates;
  std::vector<Constraint> xeq_constraints, funext_constraints;
  Solution xeq_solution, funext_solution;
  TriBool xeq_equiv_domain = TriBool::No;  // solution <=> domain_pred

  Expr proof;
  Type narrow, wide;  // EqRT over the refined and the full domain
  TriBool check_narrow = TriBool::No, check_wide = TriBool::No;
  SubtypeResult coercion;  // narrow <: wide

  // What the naive solution would let one conclude: f false == g false.
  Expr f_false, g_false;
};

DemoReport run_demo(const Bounds& b);

std::string to_text(const DemoReport& r);

}  // namespace lre

#endif  // LRE_INFERENCE_HPP
