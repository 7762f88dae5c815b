#ifndef LRE_BINARY_LR_HPP
#define LRE_BINARY_LR_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lre/syntax.hpp"
#include "lre/tribool.hpp"
#include "lre/typing.hpp"

namespace lre {

/// Pending substitution: each variable maps to a pair of related values.
class EquivEnv {
 public:
  struct Entry {
    std::string name;
    Expr left;
    Expr right;
  };

  const std::vector<Entry>& entries() const { return entries_; }
  EquivEnv extended(std::string x, Expr l, Expr r) const;
  ValueMap left() const;
  ValueMap right() const;

 private:
  std::vector<Entry> entries_;
};

std::string to_string(const EquivEnv& d);

struct EquivEnvs {
  std::vector<EquivEnv> envs;
  bool complete = true;
};

EquivEnvs equiv_envs(const Env& env, const Bounds& b);

/// v1 ~ v2 : t under d.  Both must be values.
TriBool val_related(const EquivEnv& d, const Expr& v1, const Expr& v2, const Type& t, const Bounds& b);

/// Closes e1 with the left and e2 with the right components of d,
/// evaluates both, and relates the results.
TriBool expr_related(const EquivEnv& d, const Expr& e1, const Expr& e2, const Type& t, const Bounds& b);

/// expr_related under every enumerated d for env.
TriBool open_related(const Env& env, const Expr& e1, const Expr& e2, const Type& t, const Bounds& b);

// One-hole contexts.
struct CtxNode;
using Ctx = std::shared_ptr<const CtxNode>;

struct Hole {};
struct AppL {
  Ctx fun;
  Expr arg;
};
struct AppR {
  Expr fun;
  Ctx arg;
};
struct LamC {
  std::string binder;
  Type annot;
  Ctx body;
};
struct BEqC {
  BaseType base;
  Expr left;
  Expr right;
  Ctx proof;
};
struct XEqC {
  std::string binder;
  Type dom;
  Type cod;
  Expr left;
  Expr right;
  Ctx proof;
};

struct CtxNode {
  std::variant<Hole, AppL, AppR, LamC, BEqC, XEqC> node;
};

namespace ctx {
Ctx hole();
Ctx app_l(Ctx c, Expr arg);
Ctx app_r(Expr fun, Ctx c);
Ctx lam(std::string x, Type annot, Ctx body);
Ctx beq(BaseType b, Expr l, Expr r, Ctx proof);
Ctx xeq(std::string x, Type dom, Type cod, Expr l, Expr r, Ctx proof);
}  // namespace ctx

/// Plugs the hole.  Binders of the context capture free variables of `e`.
Expr ctx_apply(const Ctx& c, const Expr& e);

std::string to_string(const Ctx& c);

struct CtxTypeResult {
  Type type;  // x:hole_type -> t, null on error
  std::optional<TypeError> error;
  bool ok() const { return type != nullptr; }
  TriBool status() const { return ok() ? TriBool::Yes : verdict(*error); }
};

/// Types a context whose hole expects `hole_type`; the result is
/// `hole : hole_type -> t`, where t may mention `hole` when the hole sits
/// in argument position.  `hole` must not occur in env or in the context.
CtxTypeResult ctx_typecheck(const Env& env, const Ctx& c, const std::string& hole, const Type& hole_type,
                            const Bounds& b);

}  // namespace lre

#endif  // LRE_BINARY_LR_HPP
