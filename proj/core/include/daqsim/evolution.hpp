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
/**
 * @file
 * Continuous (Schrodinger equation) and digital (first-order Trotter)
 * evolution from |+>^n along H(s) = s H_P + (1 - s) H_I.
 */
#pragma once

#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace daqsim {

struct IntegratorConfig {
    /// Largest step tried first; the integrator may start finer when the
    /// Hamiltonian norm demands it.
    double base_step = 0.01;
    double norm_tolerance = 1e-8;
    /// Euclidean change of the final state under one more halving.
    double stability_tolerance = 1e-7;
    int max_step_halvings = 14;
    /// Upper bound on the step count of a single integration pass.
    long max_steps = 20'000'000;
};

enum class EvolutionMode { continuous, digital, gate };

std::string_view to_string(EvolutionMode mode);
EvolutionMode parse_evolution_mode(std::string_view text);

struct Checkpoint {
    double s = 0.0;
    StateVector state;
};

struct EvolutionResult {
    StateVector final_state;
    std::vector<Checkpoint> trajectory;
    EvolutionMode mode = EvolutionMode::continuous;
    Schedule schedule;
    /// Integrator steps of the accepted run (continuous mode only).
    long integrator_steps = 0;
};

/**
 * Integrates i d|psi>/dt = H(t/T)|psi> from |+>^n with classical RK4.
 *
 * The step is halved until the final norm is within norm_tolerance of 1 and
 * the final state moves by less than stability_tolerance under a further
 * halving. The result is renormalized once. Checkpoints are recorded at the
 * integrator step boundary nearest to each requested s.
 *
 * Throws ConvergenceError when the halving budget or the step budget runs
 * out.
 */
EvolutionResult evolve_continuous(const SpinProblem &p, const Schedule &sched,
                                  const IntegratorConfig &cfg = {},
                                  std::span<const double> checkpoints = {});

/// Term families of one Trotter step.
enum class TermGroup { zz, xx, z, x };
using TermOrder = std::array<TermGroup, 4>;
inline constexpr TermOrder kDefaultTermOrder = {TermGroup::zz, TermGroup::xx, TermGroup::z,
                                                TermGroup::x};

/**
 * Rotation angles of Trotter step m: every term is applied as
 * exp(-i theta P) with theta = dt * a(s_m), a the signed coefficient of P in
 * H(s_m). Index b of zz / xx is the bond (b, b + 1); index i of z / x the site.
 */
struct TrotterAngles {
    std::vector<double> zz;
    std::vector<double> xx;
    std::vector<double> z;
    std::vector<double> x;
};

TrotterAngles trotter_angles(const SpinProblem &p, const Schedule &sched, int m);

/**
 * Ideal digital evolution: the product over steps m = 1..M of exact
 * single-term exponentials in `order` (ascending index inside each family).
 * Checkpoints are taken after each step at s = m / M.
 */
EvolutionResult evolve_digital(const SpinProblem &p, const Schedule &sched,
                               bool record_trajectory = false,
                               const TermOrder &order = kDefaultTermOrder);

/// Applies Trotter step m to psi in place.
void apply_trotter_step(const SpinProblem &p, const Schedule &sched, int m, StateVector &psi,
                        const TermOrder &order = kDefaultTermOrder);

/// Dense 2^n x 2^n unitary of Trotter step m; n <= 4.
Eigen::MatrixXcd step_unitary(const SpinProblem &p, const Schedule &sched, int m);

// Exact in-place rotations used by the digital evolution and the gate
// simulator. `mask` selects the qubits of the Pauli string.
void apply_exp_z(StateVector &psi, std::size_t mask, double theta); // exp(-i theta Z..Z)
void apply_exp_x(StateVector &psi, std::size_t mask, double theta); // exp(-i theta X..X)

} // namespace daqsim
