#ifndef LRE_PROOFS_HPP
#define LRE_PROOFS_HPP

#include <stdexcept>
#include <string>

#include "lre/syntax.hpp"
#include "lre/tribool.hpp"

namespace lre {

class ProofError : public std::runtime_error {
 public:
  enum class Kind { NotEquable, NotAValue, HeadMismatch, MiddleMismatch, Precondition };
  ProofError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(ProofError::Kind k);

/// {u:Unit | l == r} at base types, x:τx -> EqRT τ (l x) (r x) at function
/// types.  Throws NotEquable if `t` mentions an equality type.
Type pfty(const Expr& l, const Expr& r, const Type& t);

/// A proof of EqRT t e e.  Pure construction; no check of `e : t` is done.
Expr prove_refl(const Env& env, const Expr& e, const Type& t);

/// Flips a value proof of EqRT t e1 e2.  The proof slots of the heads are
/// kept, so flipping twice gives back the input.
Expr prove_sym(const Env& env, const Expr& p, const Type& t, const Expr& e1, const Expr& e2);

/// Chains value proofs of EqRT t e1 e2 and EqRT t e2 e3.
Expr prove_trans(const Env& env, const Expr& p12, const Expr& p23, const Type& t, const Expr& e1, const Expr& e2,
                 const Expr& e3);

}  // namespace lre

#endif  // LRE_PROOFS_HPP
