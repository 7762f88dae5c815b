#ifndef LRE_TESTGEN_HPP
#define LRE_TESTGEN_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "lre/base_typing.hpp"
#include "lre/syntax.hpp"

namespace lre {

struct GenConfig {
  std::uint64_t seed = 0;
  int max_size = 20;       // node budget for expressions
  int max_type_depth = 2;  // nesting of Fun/EqT
  bool allow_eqrt = true;
};

/// Thrown when no term of the target erasure can be built (for instance
/// EqT (EqT _) with nothing suitable in scope).
class GiveUp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Generator {
 public:
  explicit Generator(const GenConfig& cfg);

  const GenConfig& config() const { return cfg_; }
  std::mt19937_64& rng() { return rng_; }

  /// Erasures built from Bool/Unit; never EqT (EqT _).
  UType utype();
  UType utype(int depth);
  UType first_order_utype();

  /// A refined type erasing to u whose refinements mention env names.
  Type type_of(const Env& env, const UType& u);
  Type type(const Env& env);

  /// A term e with btype(unrefine(env), e) == target.
  Expr expr(const Env& env, const UType& target);
  Expr expr(const Env& env, const UType& target, int size);

  /// n Bool/Unit bindings named x0, x1, ... with random refinements.
  Env base_env(int n);

  int uniform(int lo, int hi);
  bool chance(double p);

 private:
  Expr leaf(const Env& env, const UType& u);
  Expr gen(const Env& env, const UType& u, int size);
  Expr gen_fun(const Env& env, const UType& u, int size);
  Expr gen_eq(const Env& env, const UType& u, int size);
  Expr redex(const Env& env, const UType& u, int size, std::optional<UType> arg_type = std::nullopt);
  std::optional<Expr> from_env(const Env& env, const UType& u, int size);
  Expr pred(const Env& env, const std::string& v, BaseType b);
  std::string binder();

  GenConfig cfg_;
  std::mt19937_64 rng_;
};

UType gen_utype(const GenConfig& cfg);
Type gen_type(const GenConfig& cfg, const Env& env);
Expr gen_expr(const GenConfig& cfg, const Env& env, const UType& target);

/// Every closed term of size <= max_size erasing to u, built from
/// constants, variables, lambdas and applications.  Lambda annotations on
/// Bool range over {Bool, v == true, v == false}; other domains use the
/// trivially refined type.  Application arguments erase to Bool, Unit or a
/// first-order function between them.
std::vector<Expr> enumerate_terms(const UType& u, int max_size);

/// All equality-free erasures of nesting depth <= depth.
std::vector<UType> equable_utypes(int depth);

/// Smaller budgets with the same seed, largest first.
std::vector<GenConfig> shrink(const GenConfig& cfg);

}  // namespace lre

#endif  // LRE_TESTGEN_HPP
