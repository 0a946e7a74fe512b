// Copyright 2026 The daqsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "daqsim/evolution.hpp"
#include "daqsim/gates.hpp"
#include "daqsim/pauli.hpp"
#include "daqsim/spectrum.hpp"

#include <benchmark/benchmark.h>

using namespace daqsim;

namespace {

SpinProblem chain(int n) { return generate_random_problem(n, ProblemKind::non_stoquastic, 42); }

void BM_ApplyHamiltonian(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const PauliTermList h = interpolated_hamiltonian(chain(n), Schedule{}, 0.5);
    const StateVector psi = StateVector::plus_state(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_hamiltonian(h, psi));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(h.size()) * (1L << n));
}
BENCHMARK(BM_ApplyHamiltonian)->DenseRange(4, 12, 4);

void BM_TrotterStep(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SpinProblem p = chain(n);
    const Schedule s;
    StateVector psi = StateVector::plus_state(n);
    for (auto _ : state) {
        apply_trotter_step(p, s, 3, psi);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_TrotterStep)->DenseRange(4, 12, 4);

void BM_ContinuousEvolution(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SpinProblem p = chain(n);
    const Schedule s{1.0, 2, 2.0, Sampling::midpoint};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_continuous(p, s));
    }
}
BENCHMARK(BM_ContinuousEvolution)->Arg(3)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_CompileAndSimulate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const SpinProblem p = chain(n);
    CompilerConfig cfg;
    cfg.constrained = true;
    for (auto _ : state) {
        const CompiledSchedule c = compile_schedule(p, Schedule{}, cfg);
        benchmark::DoNotOptimize(simulate_gates(c.sequence, StateVector(n)));
    }
}
BENCHMARK(BM_CompileAndSimulate)->Arg(4)->Arg(9);

void BM_Diagonalize(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const PauliTermList h = interpolated_hamiltonian(chain(n), Schedule{}, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(diagonalize(h, true, 4));
    }
}
BENCHMARK(BM_Diagonalize)->Arg(6)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
