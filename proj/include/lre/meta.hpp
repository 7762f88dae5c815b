#ifndef LRE_META_HPP
#define LRE_META_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lre/syntax.hpp"
#include "lre/tribool.hpp"

namespace lre {

enum class Exec { Serial, Parallel };

struct CaseResult {
  TriBool result = TriBool::Yes;
  // False when the premise of the property did not hold (vacuous case).
  bool exercised = true;
  std::string detail;  // set for failures

  friend bool operator==(const CaseResult&, const CaseResult&) = default;
};

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  std::size_t count(TriBool r) const;
  std::size_t exercised() const;
  /// No if any case is No, else Unknown if any is Unknown, else Yes.
  TriBool overall() const;
  /// Index of the first non-Yes case, or cases.size().
  std::size_t first_failure() const;
};

/// Per-case seed, independent of evaluation order.
std::uint64_t case_seed(std::uint64_t seed, std::size_t i);

/// Runs f(i) for i in [0, n); results are stored by index, so the two
/// modes give identical vectors.
template <class F>
std::vector<CaseResult> run_cases(std::size_t n, F&& f, Exec exec) {
  std::vector<CaseResult> out(n);
  if (exec == Exec::Serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
  } else {
    const long long m = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
  }
  return out;
}

/// Every constant against its signature.
SuiteReport constants_suite(const Bounds& b);

/// Closed generated terms (size <= 20): at most one rule applies at every
/// point of the trace, and evaluation reaches a value.
SuiteReport determinism_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// Generated first-order judgments over Bool/Unit environments: a Yes from
/// the checker implies membership of every closed instance, and the term is
/// related to itself.
SuiteReport fundamental_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// (e, sample_parred(e)) pairs: forward and backward simulation.
SuiteReport simulation_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// Three sampled parallel steps; every term on the trace coterminates with
/// the first.
SuiteReport cotermination_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// Random contexts around related terms: the plugged terms stay related,
/// and an equality proof for the plugged terms exists at the context's
/// result type with refinements in result positions dropped.
SuiteReport congruence_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// A term checking at {v:B | r} also checks at {v:B | v == e}.
SuiteReport selfify_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// Equality types whose endpoints differ are never subtypes.
SuiteReport subeq_rigidity_suite(std::uint64_t seed, std::size_t count, const Bounds& b, Exec exec);

/// Exhaustive over equality-free types of depth <= 2 and closed endpoint
/// terms of size <= 4: refl, sym and trans proofs recheck and their
/// endpoints are related.
SuiteReport peq_suite(const Bounds& b, Exec exec, int max_size = 4, int type_depth = 2);

/// `t` with the refinements in result positions replaced by true.  Domains
/// are kept.
Type weaken_results(const Type& t);

std::string to_text(const SuiteReport& r);

}  // namespace lre

#endif  // LRE_META_HPP
