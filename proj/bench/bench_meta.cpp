// Serial vs OpenMP runs of the property suites.

#include <benchmark/benchmark.h>

#include "lre/meta.hpp"

using namespace lre;

namespace {

const Bounds kB;

using SeededSuite = SuiteReport (*)(std::uint64_t, std::size_t, const Bounds&, Exec);

template <SeededSuite F>
void seeded(benchmark::State& st) {
  const Exec exec = st.range(0) ? Exec::Parallel : Exec::Serial;
  const auto n = static_cast<std::size_t>(st.range(1));
  for (auto _ : st) {
    SuiteReport r = F(7, n, kB, exec);
    benchmark::DoNotOptimize(r.cases.data());
  }
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * n));
  st.SetLabel(exec == Exec::Parallel ? "parallel" : "serial");
}

void peq(benchmark::State& st) {
  const Exec exec = st.range(0) ? Exec::Parallel : Exec::Serial;
  for (auto _ : st) {
    SuiteReport r = peq_suite(kB, exec, static_cast<int>(st.range(1)), 1);
    benchmark::DoNotOptimize(r.cases.data());
  }
  st.SetLabel(exec == Exec::Parallel ? "parallel" : "serial");
}

#define SUITE(f) BENCHMARK_TEMPLATE(seeded, f)->ArgsProduct({{0, 1}, {200}})->Unit(benchmark::kMillisecond)

SUITE(determinism_suite);
SUITE(fundamental_suite);
SUITE(simulation_suite);
SUITE(cotermination_suite);
SUITE(congruence_suite);
SUITE(selfify_suite);
BENCHMARK(peq)->ArgsProduct({{0, 1}, {3}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
