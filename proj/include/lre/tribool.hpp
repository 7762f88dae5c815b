#ifndef LRE_TRIBOOL_HPP
#define LRE_TRIBOOL_HPP

#include <cstdint>
#include <string_view>

namespace lre {

// Unknown only arises from exhausting a bound (fuel or enumeration depth).
enum class TriBool : std::uint8_t { Yes, No, Unknown };

constexpr TriBool tri(bool b) { return b ? TriBool::Yes : TriBool::No; }

// Kleene conjunction: a definite No wins over Unknown.
constexpr TriBool operator&&(TriBool a, TriBool b) {
  if (a == TriBool::No || b == TriBool::No) return TriBool::No;
  if (a == TriBool::Unknown || b == TriBool::Unknown) return TriBool::Unknown;
  return TriBool::Yes;
}

constexpr std::string_view to_string(TriBool t) {
  switch (t) {
    case TriBool::Yes: return "Yes";
    case TriBool::No: return "No";
    case TriBool::Unknown: return "Unknown";
  }
  return "?";
}

/// Step budget per evaluation and nesting depth for enumerating values of
/// function type.
struct Bounds {
  std::uint64_t fuel = 100000;
  int fn_depth = 2;
};

}  // namespace lre

#endif  // LRE_TRIBOOL_HPP
