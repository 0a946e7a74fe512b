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
 * Figures of merit: overlaps, kink statistics, residual energy, local
 * observables, power-law fits and adiabatic resource estimates.
 */
#pragma once

#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace daqsim {

/// Probability distribution over the 2^n computational basis states.
class Distribution {
  public:
    Distribution() = default;

    /// Entries >= -1e-12 are clamped to 0; the sum must be 1 within 1e-9
    /// and is then renormalized. Throws InputError otherwise.
    Distribution(int n, std::vector<double> probabilities);

    static Distribution from_state(const StateVector &psi);

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] const std::vector<double> &probabilities() const { return p_; }
    [[nodiscard]] double operator[](std::size_t k) const { return p_[k]; }
    [[nodiscard]] std::size_t size() const { return p_.size(); }

  private:
    int n_ = 0;
    std::vector<double> p_;
};

/// |<a|b>|^2.
double fidelity_pure(const StateVector &a, const StateVector &b);

/// (sum_k sqrt(P_ideal[k] P[k]))^2.
double success_measure(const Distribution &ideal, const Distribution &p);

struct KinkProfile {
    /// likelihood[k] = probability of exactly k violated bonds, k = 0..n-1.
    std::vector<double> likelihood;
    double expected_kinks = 0.0;
};

/**
 * A bond b is violated when its bits differ for j_zz[b] > 0 or agree for
 * j_zz[b] < 0. Throws InputError if any j_zz is zero.
 */
KinkProfile kink_profile(const Distribution &p, const SpinProblem &problem);

/// Number of violated bonds of basis state `index`.
int kink_count(std::size_t index, const SpinProblem &problem);

/// <H_P> - E_0, clamped to 0 when within -1e-9 of it.
double residual_energy(const StateVector &psi, const SpinProblem &problem);

/// Same with a known ground energy (avoids repeated diagonalization).
double residual_energy(const StateVector &psi, const SpinProblem &problem, double ground_energy);

/// <Z_i>; throws InputError for i outside [0, n).
double magnetization(const StateVector &psi, int i);

/// <Z_i Z_{i+d}>; throws InputError unless 0 <= i, d >= 0 and i + d < n.
double parity_correlation(const StateVector &psi, int i, int d);

Distribution uniform_baseline(int n);

struct PowerLawFit {
    /// E ~ amplitude * T^{-eta}.
    double eta = 0.0;
    double amplitude = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    int points_used = 0;
};

/**
 * Least squares of log E against log T over points with lo <= T <= hi.
 * Throws InputError with fewer than 4 points in the window or a
 * nonpositive T or E inside it.
 */
PowerLawFit fit_power_law(const std::vector<std::pair<double, double>> &points, double lo,
                          double hi);

/**
 * Order-of-magnitude adiabatic cost, all constants set to 1:
 *   T = D / gamma^2,  M = T^2 a_max^2 L^2 / epsilon,  gates = M L k.
 */
struct ResourceEstimate {
    double time_bound_T = 0.0;
    double steps_M = 0.0;
    double gate_count = 0.0;
    double gamma = 0.0;
    double s_at_min_gap = 0.0;
    /// Largest singular value of the ground-to-first-excited block of
    /// dH/ds = H_P - H_I over the grid.
    double D = 0.0;
    double a_max = 0.0;
    int L = 0;
    int k = 2;
    double epsilon = 0.0;
};

/**
 * gamma defaults to min_gap over `grid_points` values of s. A gap below
 * 1e-10 yields infinite T, M and gate count. Throws InputError for
 * epsilon <= 0.
 */
ResourceEstimate estimate_resources(const SpinProblem &p, const Schedule &sched, double epsilon,
                                    std::optional<double> gamma = std::nullopt,
                                    int grid_points = 101);

} // namespace daqsim
