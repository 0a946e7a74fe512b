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
#include "daqsim/error.hpp"
#include "daqsim/evolution.hpp"
#include "daqsim/spectrum.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace daqsim;

TEST_CASE("continuous evolution matches the Magnus oracle") {
    for (auto name : {"s4-3q-stoq", "s5-3q-nonstoq"}) {
        const SpinProblem p = builtin_instance(name);
        const Schedule sched = builtin_schedule(name);
        const EvolutionResult r = evolve_continuous(p, sched);
        const oracle::Vec want = oracle::continuous(p, sched);
        CHECK(oracle::fidelity(want, oracle::to_eigen(r.final_state)) ==
              doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.final_state.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.integrator_steps > 0);
    }
}

TEST_CASE("zero time leaves |+> untouched") {
    const SpinProblem p = SpinProblem::uniform_chain(3, 1.0);
    Schedule s;
    s.total_time = 0.0;
    const auto r = evolve_continuous(p, s);
    CHECK(std::norm(inner(r.final_state, StateVector::plus_state(3))) == doctest::Approx(1.0));
    const auto d = evolve_digital(p, s);
    CHECK(std::norm(inner(d.final_state, StateVector::plus_state(3))) == doctest::Approx(1.0));
}

TEST_CASE("slow anneal reaches the ground state") {
    const SpinProblem p = builtin_instance("s4-3q-stoq");
    Schedule s;
    s.total_time = 60.0;
    const auto r = evolve_continuous(p, s);
    CHECK(std::norm(inner(r.final_state, target_state(p))) > 0.99);
}

TEST_CASE("checkpoints are recorded in order") {
    const std::vector<double> marks = {0.0, 0.5, 1.0};
    const auto r = evolve_continuous(SpinProblem::uniform_chain(3, 2.0), Schedule{}, {}, marks);
    REQUIRE(r.trajectory.size() == 3);
    CHECK(r.trajectory[0].s == 0.0);
    CHECK(r.trajectory[1].s == doctest::Approx(0.5));
    CHECK(std::norm(inner(r.trajectory[2].state, r.final_state)) == doctest::Approx(1.0));
}

TEST_CASE("exhausted halving budget raises ConvergenceError") {
    IntegratorConfig cfg;
    cfg.max_step_halvings = 0;
    CHECK_THROWS_AS(evolve_continuous(SpinProblem::uniform_chain(3, 2.0), Schedule{}, cfg),
                    ConvergenceError);
    cfg = IntegratorConfig{};
    cfg.stability_tolerance = 0.0;
    cfg.max_step_halvings = 2;
    CHECK_THROWS_AS(evolve_continuous(SpinProblem::uniform_chain(3, 2.0), Schedule{}, cfg),
                    ConvergenceError);
    cfg = IntegratorConfig{};
    cfg.max_steps = 100;
    CHECK_THROWS_AS(evolve_continuous(SpinProblem::uniform_chain(3, 2.0), Schedule{}, cfg),
                    ConvergenceError);
}

TEST_CASE("Trotter angles use the sampled coefficients") {
    const SpinProblem p = builtin_instance("s5-3q-nonstoq");
    const Schedule s{3.0, 5, 2.0, Sampling::midpoint};
    const TrotterAngles a = trotter_angles(p, s, 2);
    const double sm = 0.3;
    CHECK(a.zz[0] == doctest::Approx(0.6 * (-sm * -0.757)));
    CHECK(a.xx[1] == doctest::Approx(0.6 * (-sm * 1.02)));
    CHECK(a.z[1] == doctest::Approx(0.6 * (-sm * 0.781)));
    CHECK(a.x[2] == doctest::Approx(0.6 * -(sm * 1.02 + (1 - sm) * 2.0)));
    CHECK_THROWS_AS(trotter_angles(p, s, 0), InputError);
    CHECK_THROWS_AS(trotter_angles(p, s, 6), InputError);
}

TEST_CASE("single Trotter steps match dense exponential products") {
    for (Sampling sampling : {Sampling::endpoint, Sampling::midpoint, Sampling::integral}) {
        const SpinProblem p = generate_random_problem(3, ProblemKind::non_stoquastic, 21);
        const Schedule s{2.0, 4, 2.0, sampling};
        for (int m = 1; m <= 4; ++m) {
            CHECK((step_unitary(p, s, m) - oracle::trotter_step(p, s, m)).norm() < 1e-12);
        }
    }
    CHECK_THROWS_AS(step_unitary(SpinProblem::uniform_chain(5, 1.0), Schedule{}, 1), InputError);
}

TEST_CASE("digital evolution matches the oracle product") {
    for (auto name : {"s4-3q-stoq", "s5-3q-nonstoq"}) {
        const SpinProblem p = builtin_instance(name);
        const Schedule s = builtin_schedule(name);
        const auto r = evolve_digital(p, s);
        CHECK((oracle::to_eigen(r.final_state) - oracle::digital(p, s)).norm() < 1e-12);
    }
}

TEST_CASE("term order matters only for non-commuting families") {
    const SpinProblem p = builtin_instance("s6-6q-stoq");
    const Schedule s = builtin_schedule("s6-6q-stoq");
    const TermOrder swapped = {TermGroup::z, TermGroup::zz, TermGroup::xx, TermGroup::x};
    const auto a = evolve_digital(p, s).final_state;
    const auto b = evolve_digital(p, s, false, swapped).final_state;
    // ZZ and Z commute, and XX is absent: the two orders agree.
    CHECK(std::norm(inner(a, b)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("digital converges to continuous as M grows") {
    const SpinProblem p = builtin_instance("s4-3q-stoq");
    Schedule s = builtin_schedule("s4-3q-stoq");
    const StateVector c = evolve_continuous(p, s).final_state;
    double previous = 1.0;
    double first = 0.0;
    for (int m : {8, 16, 32, 64}) {
        s.steps = m;
        const double infid = 1.0 - std::norm(inner(evolve_digital(p, s).final_state, c));
        CHECK(infid < previous);
        first = m == 8 ? infid : first;
        previous = infid;
    }
    CHECK(previous < first / 10);
}

TEST_CASE("digital trajectory length") {
    const auto r = evolve_digital(SpinProblem::uniform_chain(4, 2.0), Schedule{}, true);
    CHECK(r.trajectory.size() == 6);
    CHECK(r.trajectory.back().s == 1.0);
}

TEST_CASE("mode names") {
    CHECK(parse_evolution_mode("gates") == EvolutionMode::gate);
    CHECK(to_string(EvolutionMode::gate) == "gates");
    CHECK_THROWS_AS(parse_evolution_mode("analog"), InputError);
}
