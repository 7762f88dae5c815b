#include "lre/inference.hpp"

#include <sstream>

#include "lre/denotation.hpp"
#include "lre/eval.hpp"

namespace lre {

std::string to_string(const Atom& a, const PredVar& k) {
  return a.is_kappa() ? k.name + "(" + k.binder + ")" : to_string(*a.pred);
}

std::string to_string(const Constraint& c, const PredVar& k) {
  std::string s = c.label + ". ";
  for (const Atom& h : c.hyps) s += to_string(h, k) + " => ";
  return s + to_string(c.head, k);
}

namespace {

Env demo_env(const PredVar& k = {}) { return Env({{k.binder, mk::base(BaseType::Bool)}}); }

Expr atom_eq(const Expr& a, const Expr& b) { return mk::eq_app(BaseType::Bool, a, b); }

}  // namespace

std::vector<Constraint> gen_xeq_constraints(const Expr& h_dom, const Expr& k_dom, const Expr& lemma_dom,
                                            const Expr& eq_dom, const Expr& h, const Expr& k) {
  Env env = demo_env();
  Expr v = mk::var("v");
  Expr pointwise = atom_eq(mk::app(h, v), mk::app(k, v));
  return {
      {"i", env, {Atom::kappa()}, Atom::of(h_dom)},
      {"ii", env, {Atom::kappa()}, Atom::of(k_dom)},
      {"iii", env, {Atom::kappa()}, Atom::of(lemma_dom)},
      // The lemma proves exactly the pointwise equality.
      {"iv", env, {Atom::kappa(), Atom::of(pointwise)}, Atom::of(pointwise)},
      {"v", env, {Atom::kappa()}, Atom::of(eq_dom)},
      {"vi", env, {Atom::of(eq_dom)}, Atom::kappa()},
  };
}

std::vector<Constraint> gen_funext_constraints(const Expr& h_dom, const Expr& k_dom, const Expr& lemma_dom,
                                               const Expr& h, const Expr& k) {
  Env env = demo_env();
  Expr v = mk::var("v");
  Expr pointwise = atom_eq(mk::app(h, v), mk::app(k, v));
  return {
      {"i'", env, {Atom::kappa()}, Atom::of(h_dom)},
      {"ii'", env, {Atom::kappa()}, Atom::of(k_dom)},
      {"iii'", env, {Atom::kappa()}, Atom::of(lemma_dom)},
      {"iv'", env, {Atom::kappa(), Atom::of(pointwise)}, Atom::of(pointwise)},
  };
}

ImplicationResult check_implication(const Env& env, const std::vector<Expr>& hyps, const Expr& head,
                                    const Bounds& b) {
  ClosingSubsts thetas = closing_substs(env, b);
  bool unknown = !thetas.complete;
  for (const ValueMap& theta : thetas.substs) {
    TriBool all = TriBool::Yes;
    for (const Expr& h : hyps) {
      all = all && evaluates_to_const(close(h, theta), Const::tt(), b.fuel);
      if (all == TriBool::No) break;
    }
    if (all == TriBool::No) continue;
    TriBool hd = evaluates_to_const(close(head, theta), Const::tt(), b.fuel);
    if (all == TriBool::Yes && hd == TriBool::No) return {TriBool::No, theta};
    if (all == TriBool::Unknown || hd == TriBool::Unknown) unknown = true;
  }
  return {unknown ? TriBool::Unknown : TriBool::Yes, std::nullopt};
}

bool Solution::contains_false() const {
  for (const Expr& c : conjuncts)
    if (const auto* k = as<Const>(c); k && *k == Const::ff()) return true;
  return false;
}

std::string to_string(const Solution& s) {
  if (s.contains_false()) return "false";
  if (s.conjuncts.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < s.conjuncts.size(); ++i) out += (i ? " /\\ " : "") + to_string(s.conjuncts[i]);
  return out;
}

std::vector<Expr> demo_candidates(const Env& env, const PredVar& k) {
  Expr v = mk::var(k.binder);
  std::vector<Expr> out{mk::tt(), mk::ff(), atom_eq(v, mk::tt()), atom_eq(v, mk::ff())};
  std::set<std::string> seen;
  for (const auto& [x, t] : env.bindings()) {
    const auto* r = as<Refined>(t);
    if (x == k.binder || !r || r->base != BaseType::Bool || !seen.insert(x).second) continue;
    out.push_back(atom_eq(v, mk::var(x)));
  }
  return out;
}

namespace {

std::vector<Expr> instantiate(const std::vector<Atom>& atoms, const std::vector<Expr>& kappa) {
  std::vector<Expr> out;
  for (const Atom& a : atoms) {
    if (a.is_kappa())
      out.insert(out.end(), kappa.begin(), kappa.end());
    else
      out.push_back(*a.pred);
  }
  return out;
}

}  // namespace

Solution houdini_solve(const std::vector<Constraint>& cs, const std::vector<Expr>& candidates, const Bounds& b,
                       const PredVar&) {
  Solution s;
  s.conjuncts = candidates;
  for (bool changed = true; changed;) {
    changed = false;
    ++s.rounds;
    for (const Constraint& c : cs) {
      if (!c.head.is_kappa()) continue;
      std::vector<Expr> hyps = instantiate(c.hyps, s.conjuncts);
      std::vector<Expr> keep;
      for (const Expr& q : s.conjuncts) {
        if (check_implication(c.env, hyps, q, b).result == TriBool::Yes)
          keep.push_back(q);
        else
          changed = true;
      }
      s.conjuncts = std::move(keep);
    }
  }
  for (const Constraint& c : cs) {
    if (c.head.is_kappa()) continue;
    if (check_implication(c.env, instantiate(c.hyps, s.conjuncts), *c.head.pred, b).result != TriBool::Yes) {
      s.unsat = "constraint " + to_string(c) + " fails under the inferred solution";
      break;
    }
  }
  return s;
}

DemoReport run_demo(const Bounds& b) {
  DemoReport r;
  Expr v = mk::var("v");
  r.f = mk::lam("x", mk::base(BaseType::Bool), mk::var("x"));
  r.g = mk::lam("x", mk::base(BaseType::Bool), mk::tt());
  r.domain_pred = atom_eq(v, mk::tt());
  r.domain = mk::refined("v", BaseType::Bool, r.domain_pred);
  Env env = demo_env();
  r.candidates = demo_candidates(env);

  r.xeq_constraints = gen_xeq_constraints(r.domain_pred, r.domain_pred, r.domain_pred, r.domain_pred, r.f, r.g);
  r.funext_constraints = gen_funext_constraints(r.domain_pred, r.domain_pred, r.domain_pred, r.f, r.g);
  r.xeq_solution = houdini_solve(r.xeq_constraints, r.candidates, b);
  r.funext_solution = houdini_solve(r.funext_constraints, r.candidates, b);

  TriBool fwd = check_implication(env, r.xeq_solution.conjuncts, r.domain_pred, b).result;
  TriBool bwd = TriBool::Yes;
  for (const Expr& q : r.xeq_solution.conjuncts) bwd = bwd && check_implication(env, {r.domain_pred}, q, b).result;
  r.xeq_equiv_domain = fwd && bwd;

  Expr x = mk::var("x");
  r.proof = mk::xeq("x", r.domain, mk::base(BaseType::Bool), r.f, r.g,
                    mk::lam("x", r.domain, mk::beq(BaseType::Bool, mk::app(r.f, x), mk::app(r.g, x), mk::unit())));
  r.narrow = mk::eqrt(mk::fun("x", r.domain, mk::base(BaseType::Bool)), r.f, r.g);
  r.wide = mk::eqrt(mk::fun("x", mk::base(BaseType::Bool), mk::base(BaseType::Bool)), r.f, r.g);
  r.check_narrow = check({}, r.proof, r.narrow, b).result;
  r.check_wide = check({}, r.proof, r.wide, b).result;
  r.coercion = subtype({}, r.narrow, r.wide, b);

  r.f_false = eval(mk::app(r.f, mk::ff()), b.fuel).expr;
  r.g_false = eval(mk::app(r.g, mk::ff()), b.fuel).expr;
  return r;
}

std::string to_text(const DemoReport& r) {
  std::ostringstream os;
  os << "funext demo over Bool (no integers in the calculus)\n";
  os << "  f = " << to_string(r.f) << "\n";
  os << "  g = " << to_string(r.g) << "\n";
  os << "  f and g agree exactly on T = " << to_string(r.domain) << "\n\n";
  os << "candidates:";
  for (const Expr& c : r.candidates) os << " " << to_string(c) << ";";
  os << "\n\n";
  os << "xeq constraints:\n";
  for (const Constraint& c : r.xeq_constraints) os << "  " << to_string(c) << "\n";
  os << "  solution: kappa = " << to_string(r.xeq_solution) << " (rounds " << r.xeq_solution.rounds << ")\n";
  os << "  equivalent to " << to_string(r.domain_pred) << ": " << to_string(r.xeq_equiv_domain) << "\n";
  if (r.xeq_solution.unsat) os << "  unsat: " << *r.xeq_solution.unsat << "\n";
  os << "\nfunext constraints:\n";
  for (const Constraint& c : r.funext_constraints) os << "  " << to_string(c) << "\n";
  os << "  solution: kappa = " << to_string(r.funext_solution) << " (rounds " << r.funext_solution.rounds << ")\n";
  if (r.funext_solution.unsat) os << "  unsat: " << *r.funext_solution.unsat << "\n";
  os << "\nproof: " << to_string(r.proof) << "\n";
  os << "  at " << to_string(r.narrow) << ": " << to_string(r.check_narrow) << "\n";
  os << "  at " << to_string(r.wide) << ": " << to_string(r.check_wide) << "\n";
  os << "  subtype narrow <: wide: " << to_string(r.coercion.result);
  if (r.coercion.witness) os << " (counterexample: " << to_string(*r.coercion.witness) << ")";
  os << "\n";
  os << "\nwith kappa = false the naive rule also proves f = g on all of Bool, but\n";
  os << "  (f false) evaluates to " << to_string(r.f_false) << "\n";
  os << "  (g false) evaluates to " << to_string(r.g_false) << "\n";
  return os.str();
}

}  // namespace lre
