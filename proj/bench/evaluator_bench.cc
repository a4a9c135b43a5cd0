#include "ratasp/evaluator.hh"
#include "ratasp/grounder.hh"
#include "ratasp/parser.hh"

#include <benchmark/benchmark.h>

#include <string>

using namespace ratasp;

namespace {

// A chain of disjunctive choices with a cardinality constraint, giving a
// program with 2 * n non-fact atoms and many candidate interpretations.
GroundProgram choices(std::int64_t n) {
    std::string text;
    for (std::int64_t k = 0; k < n; ++k) {
        auto i = std::to_string(k);
        text += "a(" + i + ") | b(" + i + ").\n";
    }
    text += ":- #sum{1/2,X: a(X)} > " + std::to_string(n) + "/4.\n";
    return ground(parse_program(text));
}

void parallel(benchmark::State &state) {
    auto g = choices(state.range(0));
    for (auto _ : state) { benchmark::DoNotOptimize(answer_sets(g)); }
}

void serial(benchmark::State &state) {
    auto g = choices(state.range(0));
    for (auto _ : state) { benchmark::DoNotOptimize(answer_sets_serial(g)); }
}

} // namespace

BENCHMARK(parallel)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(serial)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
