#ifndef LRE_DENOTATION_HPP
#define LRE_DENOTATION_HPP

#include <string>
#include <vector>

#include "lre/base_typing.hpp"
#include "lre/syntax.hpp"
#include "lre/tribool.hpp"

namespace lre {

/// A finite list of closed values plus whether it exhausts the set it
/// stands for (up to extensional equivalence).
struct Enumeration {
  std::vector<Expr> values;
  bool complete = true;
};

/// Canonical closed values of an unrefined type.
///
/// Bool and Unit are enumerated exactly.  A function type is enumerated as
/// one lambda per affine boolean table over the observations its arguments
/// allow (its Bool arguments, and for function arguments their results on
/// enumerated inputs), written with nested `(eq Bool)` tests.  Because the
/// only boolean primitive is the equality test, every closed function whose
/// arguments are all Bool/Unit is extensionally one of these, so such
/// enumerations are complete.  Function-typed arguments consume one unit of
/// `depth` and make the result incomplete; at depth 0 a function position
/// yields only the constant functions.
Enumeration enumerate_values(const UType& u, int depth);

/// The canonical proof of `EqRT index l r`: `beq B l r unit` at base
/// indices, and at function indices an `xeq` whose proof argument applies
/// the construction pointwise.  nullopt when the index is itself an EqRT.
std::optional<Expr> canonical_proof(const Type& index, const Expr& l, const Expr& r);

/// Type-directed candidates for membership in ⟦t⟧: all values of the
/// erasure, except that equality types contribute their single canonical
/// proof.
Enumeration candidates(const Type& t, int depth);

/// Bounded three-valued check of e ∈ ⟦t⟧ for closed t.
TriBool denote_member(const Expr& e, const Type& t, const Bounds& b);

/// The members of ⟦t⟧ among its candidates; `complete` is false when the
/// candidates were truncated or some membership check was Unknown.
Enumeration members(const Type& t, const Bounds& b);

struct ClosingSubsts {
  std::vector<ValueMap> substs;
  bool complete = true;
};

/// All θ ∈ ⟦Γ⟧ over enumerated values, built left to right.
ClosingSubsts closing_substs(const Env& env, const Bounds& b);

std::string to_string(const ValueMap& theta);

struct ConstantCheck {
  Const constant;
  Type signature;
  TriBool result;
};

struct ConstantsReport {
  std::vector<ConstantCheck> checks;
  bool all_yes() const;
};

/// c ∈ ⟦tycon(c)⟧ for every constant, including each staged equality.
ConstantsReport constants_sound(const Bounds& b);

std::vector<Const> all_constants();

}  // namespace lre

#endif  // LRE_DENOTATION_HPP
