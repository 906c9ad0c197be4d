#include <benchmark/benchmark.h>

#include "isd/denotational.hpp"
#include "isd/dsl.hpp"
#include "isd/harness.hpp"
#include "isd/operational.hpp"

namespace {

using namespace isd;

const Interaction& choice_loop() {
    static const Interaction i =
        parse_interaction("loopS(alt(strict(l1!m1,l2?m1),l2!m2))").interaction;
    return i;
}

const Interaction& mixed() {
    static const Interaction i =
        parse_interaction("par(loopH(seq(l1!m1,l2?m1)),alt(loopP(l3!m2),strict(l2!m3,l3?m3)))")
            .interaction;
    return i;
}

void BM_SigmaD(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::size_t traces = 0;
    for (auto _ : state) {
        traces = sigma_d(mixed(), n).size();
        benchmark::DoNotOptimize(traces);
    }
    state.counters["traces"] = static_cast<double>(traces);
}
BENCHMARK(BM_SigmaD)->DenseRange(4, 8, 2);

void BM_SigmaO(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::size_t traces = 0;
    for (auto _ : state) {
        traces = sigma_o_up_to(mixed(), n).size();
        benchmark::DoNotOptimize(traces);
    }
    state.counters["traces"] = static_cast<double>(traces);
}
BENCHMARK(BM_SigmaO)->DenseRange(4, 8, 2);

void BM_WeakClosure(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const bool restricted = state.range(1) != 0;
    const TraceSet base = sigma_d(parse_interaction("alt(strict(l1!m1,l2?m1),l2!m2)").interaction, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(closure_up_to(SchedulingOp::WeakSeq, base, Bound{n}, restricted));
    }
}
BENCHMARK(BM_WeakClosure)->ArgsProduct({{6, 9, 12}, {0, 1}});

void BM_Accepts(benchmark::State& state) {
    Trace t;
    for (std::int64_t k = 0; k < state.range(0); ++k) {
        t.push_back(Action::emission("l1", "m1"));
    }
    for (std::int64_t k = 0; k < state.range(0); ++k) {
        t.push_back(Action::reception("l2", "m1"));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(accepts(choice_loop(), t).accepted);
    }
}
BENCHMARK(BM_Accepts)->RangeMultiplier(2)->Range(2, 16);

void BM_NextSteps(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(next_steps(mixed()));
    }
}
BENCHMARK(BM_NextSteps);

void BM_Differential(benchmark::State& state) {
    harness::EquivConfig cfg;
    cfg.cases = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(harness::run_differential(cfg).ok());
    }
}
BENCHMARK(BM_Differential)->Arg(100)->UseRealTime()->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
