#ifndef LRE_TYPING_HPP
#define LRE_TYPING_HPP

#include <optional>
#include <string>

#include "lre/denotation.hpp"
#include "lre/syntax.hpp"
#include "lre/tribool.hpp"

namespace lre {

/// A closing substitution and a base value separating two refinements.
struct Counterexample {
  ValueMap theta;
  Expr value;
};

std::string to_string(const Counterexample& c);

struct TypeError {
  enum class Kind { Unbound, NotWellFormed, SubtypeFailed, EqIndexMismatch, BaseMismatch, BoundsExceeded };
  Kind kind;
  std::string message;
  // Set for SubtypeFailed.
  Type sub;
  Type super;
  std::optional<Counterexample> witness;
};

std::string_view to_string(TypeError::Kind k);
std::string to_string(const TypeError& e);

/// Unknown for BoundsExceeded, No otherwise.
TriBool verdict(const TypeError& e);

struct WfResult {
  TriBool result = TriBool::Yes;
  std::string reason;
};

WfResult wf(const Env& env, const Type& t, const Bounds& b);
WfResult wf_env(const Env& env, const Bounds& b);

struct SubtypeResult {
  TriBool result = TriBool::Yes;
  std::optional<Counterexample> witness;
  std::string reason;
};

/// Semantic inclusion on refinements, the usual rule on functions, and
/// mutual index subtyping with alpha-equal endpoints on equality types.
SubtypeResult subtype(const Env& env, const Type& sub, const Type& super, const Bounds& b);

struct SynthResult {
  Type type;  // null on error
  std::optional<TypeError> error;

  bool ok() const { return type != nullptr; }
  TriBool status() const { return ok() ? TriBool::Yes : verdict(*error); }
};

/// Syntax-directed type synthesis.  Variables of base type are selfified;
/// the endpoints of equality proofs get their selfified synthesized types.
SynthResult synth(const Env& env, const Expr& e, const Bounds& b);

struct CheckResult {
  TriBool result = TriBool::Yes;
  Type synthesized;  // null if synthesis failed
  std::optional<TypeError> error;
};

/// Synthesis followed by subsumption against `t`.
CheckResult check(const Env& env, const Expr& e, const Type& t, const Bounds& b);

/// The type a proof argument must have for `l = r` at an equable index:
/// {_:Unit | l == r} at base indices, x:τx -> EqRT τ (l x) (r x) at
/// function indices.  nullopt at EqRT indices.
std::optional<Type> proof_obligation(const Expr& l, const Expr& r, const Type& index);

}  // namespace lre

#endif  // LRE_TYPING_HPP
