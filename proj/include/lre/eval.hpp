#ifndef LRE_EVAL_HPP
#define LRE_EVAL_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "lre/syntax.hpp"
#include "lre/tribool.hpp"

namespace lre {

/// One small step of call-by-value reduction, or nullopt for values and
/// stuck terms.
std::optional<Expr> step(const Expr& e);

/// Number of reduction rules (axioms plus congruence positions) that apply
/// at the root.  Used to test determinism; never more than one.
int applicable_rules(const Expr& e);

struct EvalOutcome {
  enum class Kind { Value, FuelExhausted, Stuck };
  Kind kind;
  // The value, the term reached when fuel ran out, or the stuck term.
  Expr expr;
  std::uint64_t steps = 0;

  bool is_value() const { return kind == Kind::Value; }
};

/// Iterates `step` at most `fuel` times (fuel >= 1).
EvalOutcome eval(const Expr& e, std::uint64_t fuel);

/// The full reduction sequence e = e0 -> e1 -> ... (at most fuel+1 terms).
std::vector<Expr> trace(const Expr& e, std::uint64_t fuel);

/// Yes iff e evaluates to exactly c; Unknown when fuel runs out.
TriBool evaluates_to_const(const Expr& e, const Const& c, std::uint64_t fuel);

}  // namespace lre

#endif  // LRE_EVAL_HPP
