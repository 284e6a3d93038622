#include <benchmark/benchmark.h>

#include "evdiv/pell.hpp"

namespace {

void PellFundamental(benchmark::State& state) {
    long d = state.range(0);
    for (auto _ : state) {
        auto s = evdiv::fundamental_unit_solution(d, +1);
        benchmark::DoNotOptimize(s);
    }
}
// D = 61 and 109 have famously long periods for their size.
BENCHMARK(PellFundamental)->Arg(2)->Arg(61)->Arg(109)->Arg(9949);

void PellSweep(benchmark::State& state) {
    for (auto _ : state) {
        for (long d = 2; d <= state.range(0); ++d) {
            bool sf = true;
            for (long f = 2; f * f <= d; ++f) {
                if (d % (f * f) == 0) sf = false;
            }
            if (!sf) continue;
            auto s = evdiv::fundamental_unit_solution(d, +1);
            benchmark::DoNotOptimize(s);
        }
    }
}
BENCHMARK(PellSweep)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
