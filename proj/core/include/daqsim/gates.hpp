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
 * Trotter-step compiler onto RX / RY / RZ and the tunable conditional-phase
 * gate CZPHI, plus an exact gate-level simulator and the text gate format.
 *
 * Conventions (global phases are never tracked):
 *   RX(a) = exp(-i a X / 2), RY(a) = exp(-i a Y / 2), RZ(a) = exp(-i a Z / 2)
 *   CZPHI(phi) = diag(1, 1, 1, e^{i phi})   (phase on |11>)
 *
 * Hence exp(-i theta Z(x)Z) = CZPHI(-4 theta) RZ(2 theta) (x) RZ(2 theta).
 */
#pragma once

#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace daqsim {

enum class GateKind { RX, RY, RZ, CZPHI };

std::string_view to_string(GateKind kind);

struct Gate {
    GateKind kind = GateKind::RZ;
    int qubit = 0;
    /// Second qubit of CZPHI (adjacent to `qubit`); -1 for rotations.
    int partner = -1;
    /// Rotation angle in (-pi, pi], or the conditional phase of CZPHI.
    double angle = 0.0;

    static Gate rx(int q, double angle);
    static Gate ry(int q, double angle);
    static Gate rz(int q, double angle);
    static Gate czphi(int a, int b, double phase);

    [[nodiscard]] bool entangling() const { return kind == GateKind::CZPHI; }

    friend bool operator==(const Gate &, const Gate &) = default;
};

struct GateSequence {
    int num_qubits = 0;
    std::vector<Gate> gates;
    /// step_markers[k] is the index of the first gate of Trotter step k + 1;
    /// non-decreasing (an all-zero step emits no gates).
    std::vector<std::size_t> step_markers;

    /// Throws std::invalid_argument on out-of-range or non-adjacent qubits
    /// or a malformed marker list.
    void validate() const;

    friend bool operator==(const GateSequence &, const GateSequence &) = default;
};

struct CompilerConfig {
    double phase_min = 0.5;
    double phase_max = 4.5;
    /// Restrict every emitted conditional phase to [phase_min, phase_max].
    bool constrained = false;
};

struct StepCount {
    int entangling = 0;
    int single_qubit = 0;
};

struct GateCountReport {
    int entangling_count = 0;
    int single_qubit_count = 0;
    /// Index 0 is state preparation, index m is Trotter step m.
    std::vector<StepCount> per_step;
};

/// exp(-i theta Z(x)Z) on qubits (0, 1).
GateSequence compile_zz(double theta, const CompilerConfig &cfg);

/// exp(-i theta X(x)X) on qubits (0, 1) via a pi/2 Y basis change.
GateSequence compile_xx(double theta, const CompilerConfig &cfg);

/// Trotter step m in the order ZZ bonds, XX bonds, Z fields, X fields.
GateSequence compile_step(const SpinProblem &p, const Schedule &sched, int m,
                          const CompilerConfig &cfg);

struct CompiledSchedule {
    GateSequence sequence;
    GateCountReport report;
};

/// RY(pi/2) on every qubit (|0...0> -> |+>^n) followed by all M steps.
CompiledSchedule compile_schedule(const SpinProblem &p, const Schedule &sched,
                                  const CompilerConfig &cfg);

GateCountReport count_gates(const GateSequence &seq);

/// Applies the gates in order; throws std::invalid_argument on a qubit
/// index out of range or a dimension mismatch.
StateVector simulate_gates(const GateSequence &seq, const StateVector &initial);

/// Dense unitary of a sequence (n <= 6), for oracle checks.
Eigen::MatrixXcd sequence_unitary(const GateSequence &seq);

/// Line format: `QUBITS n`, `STEP m`, `RX|RY|RZ q angle`, `CZPHI q1 q2 phase`,
/// `#` comments. Angles are written as shortest round-trip decimals.
std::string serialize_sequence(const GateSequence &seq);

/// Throws InputError naming the offending line.
GateSequence parse_sequence(std::string_view text);

/// Reduces an angle to (-pi, pi].
double canonical_angle(double angle);

} // namespace daqsim
