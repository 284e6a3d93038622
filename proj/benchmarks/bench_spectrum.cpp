#include <benchmark/benchmark.h>

#include "evdiv/spectrum.hpp"

namespace {

evdiv::QuadElem sqrt2() {
    return evdiv::QuadElem(evdiv::FieldDesc{mpz_class(2)}, 0, 1);
}

void SpectrumEnumerate(benchmark::State& state) {
    evdiv::QuadElem alpha = sqrt2();
    evdiv::SpectrumOptions opts;
    for (auto _ : state) {
        auto levels = evdiv::enumerate_levels(alpha, static_cast<std::size_t>(state.range(0)), opts);
        benchmark::DoNotOptimize(levels);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SpectrumEnumerate)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void SpectrumProfile(benchmark::State& state) {
    evdiv::QuadElem alpha = sqrt2();
    evdiv::SpectrumOptions opts;
    std::vector<std::size_t> cps{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) {
        auto prof = evdiv::min_gap_profile(alpha, cps, opts);
        benchmark::DoNotOptimize(prof);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SpectrumProfile)->Arg(10000)->Arg(100000);

}  // namespace
