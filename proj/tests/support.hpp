#ifndef LRE_TESTS_SUPPORT_HPP
#define LRE_TESTS_SUPPORT_HPP

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>

#include "lre/parser.hpp"
#include "lre/syntax.hpp"

namespace lre::test {

// env({{"x", "Bool"}, {"y", "(refine (v : Bool) v)"}})
inline Env env(std::initializer_list<std::pair<const char*, const char*>> bs) {
  std::vector<std::pair<std::string, Type>> v;
  for (const auto& [x, t] : bs) v.emplace_back(x, parse_type(t));
  return Env(std::move(v));
}

inline Expr at(const ValueMap& m, const std::string& x) {
  for (const auto& [k, v] : m)
    if (k == x) return v;
  throw std::out_of_range(x);
}

}  // namespace lre::test

#endif
