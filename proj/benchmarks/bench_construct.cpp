#include <benchmark/benchmark.h>

#include "evdiv/construct.hpp"
#include "evdiv/pell.hpp"
#include "evdiv/tracefact.hpp"

namespace {

void SymmetricConstruct(benchmark::State& state) {
    evdiv::QuadElem alpha(evdiv::FieldDesc{mpz_class(2)}, 0, 1);
    mpq_class eps(1, state.range(0));
    for (auto _ : state) {
        auto cert = evdiv::symmetric_construct(alpha, eps);
        benchmark::DoNotOptimize(cert);
    }
}
BENCHMARK(SymmetricConstruct)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void StrongSequenceBench(benchmark::State& state) {
    evdiv::QuadElem alpha(evdiv::FieldDesc{mpz_class(2)}, 3, 2);
    for (auto _ : state) {
        auto certs = evdiv::strong_sequence(alpha, 1, state.range(0));
        benchmark::DoNotOptimize(certs);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(StrongSequenceBench)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void PhiPsiLargePower(benchmark::State& state) {
    evdiv::FieldDesc f{mpz_class(2)};
    evdiv::QuadElem omega = evdiv::pow_int(evdiv::unit_zeta(f), state.range(0));
    for (auto _ : state) {
        auto fact = evdiv::phi_psi(omega, 105, false);
        benchmark::DoNotOptimize(fact);
    }
}
BENCHMARK(PhiPsiLargePower)->Arg(16)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
