#ifndef LRE_BASE_TYPING_HPP
#define LRE_BASE_TYPING_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lre/syntax.hpp"

namespace lre {

/// Types of the unrefined system: refinements and equality indices erased.
class UType {
 public:
  enum class Kind { Bool, Unit, Eq, Fun };

  static UType boolean() { return UType(Kind::Bool); }
  static UType unit() { return UType(Kind::Unit); }
  static UType of(BaseType b) { return b == BaseType::Bool ? boolean() : unit(); }
  static UType eq(UType of);
  static UType fun(UType dom, UType cod);

  Kind kind() const { return kind_; }
  bool is_base() const { return kind_ == Kind::Bool || kind_ == Kind::Unit; }
  BaseType base() const { return kind_ == Kind::Bool ? BaseType::Bool : BaseType::Unit; }
  // Valid for Eq (the wrapped type) and Fun (the domain).
  const UType& first() const { return *first_; }
  // Valid for Fun only.
  const UType& second() const { return *second_; }

  friend bool operator==(const UType& a, const UType& b);

 private:
  explicit UType(Kind k) : kind_(k) {}

  Kind kind_;
  std::shared_ptr<const UType> first_;
  std::shared_ptr<const UType> second_;
};

std::string to_string(const UType& u);

using UEnv = std::vector<std::pair<std::string, UType>>;

UType unrefine(const Type& t);
UEnv unrefine(const Env& env);

/// Canonical trivially refined type with the given erasure.  Equality
/// types need endpoints; the first canonical constant of the base is used.
Type lift(const UType& u);

class BaseTypeError : public std::runtime_error {
 public:
  enum class Kind { Unbound, AppMismatch, EqArity };
  BaseTypeError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Synthesizes the unique unrefined type of `e`, or throws BaseTypeError.
UType btype(const UEnv& env, const Expr& e);

/// Non-throwing variant.
std::optional<UType> try_btype(const UEnv& env, const Expr& e);

// Size of a type, counting each constructor once.
int depth(const UType& u);

}  // namespace lre

#endif  // LRE_BASE_TYPING_HPP
