#ifndef LRE_PARRED_HPP
#define LRE_PARRED_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lre/syntax.hpp"
#include "lre/tribool.hpp"

namespace lre {

/// One parallel step: any subset of the redexes present in `a`, under
/// binders too, contracted at once.
bool parred(const Expr& a, const Expr& b);
bool parred(const Type& a, const Type& b);

/// Like parred, but the outermost constructor is kept (no contraction at
/// the root).
bool congruent(const Expr& a, const Expr& b);

/// Every b with parred(a, b), up to syntactic identity.  Exponential in the
/// number of redexes; meant for small terms.
std::vector<Expr> parred_successors(const Expr& a);

/// A random parallel successor: each redex of `e` is contracted with
/// probability 1/2, bottom-up in one pass.
Expr sample_parred(const Expr& e, std::mt19937_64& rng);

struct ParredTrace {
  std::vector<Expr> steps;
  bool valid() const;
};

/// `n` sampled parallel steps from e.
ParredTrace sample_parred_trace(const Expr& e, int n, std::mt19937_64& rng);

struct SimReport {
  TriBool result = TriBool::Yes;
  // Steps taken on the other side to re-establish the relation.
  std::uint64_t steps = 0;
  Expr matched;  // the term found, or null
  std::string message;
};

/// If e1 -> e1', find e2 ->* e2' with e1' => e2'.  Pre: parred(e1, e2).
SimReport check_forward_simulation(const Expr& e1, const Expr& e2, const Bounds& b = {});

/// If e2 -> e2', find e1 ->* e1' with e1' => e2'.  Pre: parred(e1, e2).
SimReport check_backward_simulation(const Expr& e1, const Expr& e2, const Bounds& b = {});

/// Yes iff e1 and e2 evaluate to the same constant or neither evaluates to
/// a constant; Unknown if either side runs out of fuel.
TriBool check_cotermination(const Expr& e1, const Expr& e2, const Bounds& b = {});

}  // namespace lre

#endif  // LRE_PARRED_HPP
