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
#pragma once

#include "daqsim/pauli.hpp"
#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include <Eigen/Dense>

#include <vector>

namespace daqsim {

/// Eigenvalue gaps below this are treated as one level.
inline constexpr double kDegeneracyTolerance = 1e-8;

/// Largest qubit count handled by dense diagonalization.
inline constexpr int kDenseLimit = 10;

struct Spectrum {
    /// Ascending. Complete for n <= kDenseLimit, otherwise the lowest few.
    std::vector<double> eigenvalues;
    /// Column k pairs with eigenvalues[k]; empty unless requested.
    Eigen::MatrixXd eigenvectors;
    double degeneracy_tolerance = kDegeneracyTolerance;
    bool complete = true;

    /// Number of eigenvalues within tolerance of the lowest.
    [[nodiscard]] int ground_degeneracy() const;

    /// Index of the first eigenvalue above the ground level, or -1.
    [[nodiscard]] int first_excited_index() const;

    /// E_first_excited - E_0 (distinct levels), or +inf if there is none.
    [[nodiscard]] double gap() const;
};

/**
 * Eigen-decomposition of a Pauli Hamiltonian. Dense for n <= 10; for
 * n in (10, 12] a Lanczos iteration with full re-orthogonalization returns
 * the lowest `lowest_count` pairs.
 */
Spectrum diagonalize(const PauliTermList &h, bool want_vectors, int lowest_count = 6);

/**
 * Infinite-time adiabatic limit of the schedule.
 *
 * Non-degenerate ground level: the ground vector with its largest-magnitude
 * amplitude made real and positive. Degenerate ground level: the normalized
 * projection of |+>^n onto the ground space (this reproduces the GHZ state
 * for the field-free ferromagnet). Throws InputError if that projection has
 * norm below 1e-6.
 */
StateVector target_state(const SpinProblem &p);

/// Ground energy of H_P.
double ground_energy(const SpinProblem &p);

struct GapResult {
    double gap = 0.0;
    double s_at_min = 0.0;
};

/// Minimum of E_1 - E_0 over a uniform grid of `grid_points` values of s
/// in [0, 1], degenerate ground levels collapsed.
GapResult min_gap(const SpinProblem &p, const Schedule &sched, int grid_points);

} // namespace daqsim
