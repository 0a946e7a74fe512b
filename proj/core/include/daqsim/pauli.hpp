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
 * Hamiltonians as sums of 1-local and nearest-neighbour 2-local Pauli terms.
 *
 * Coefficients are the literal matrix prefactors: the minus signs of the
 * initial and problem Hamiltonians are folded in, so H_I for B = 2 stores
 * -2 on every X_i. Z|0> = +|0>, Z|1> = -|1>.
 */
#pragma once

#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include <Eigen/Dense>

#include <vector>

namespace daqsim {

enum class Axis : char { X = 'X', Z = 'Z' };

struct PauliTerm {
    double coefficient = 0.0;
    Axis axis = Axis::Z;
    int site = 0;
    /// Second site for ZZ / XX terms (always site + 1); -1 for 1-local terms.
    int partner = -1;

    [[nodiscard]] bool two_local() const { return partner >= 0; }

    friend bool operator==(const PauliTerm &, const PauliTerm &) = default;
};

class PauliTermList {
  public:
    PauliTermList() = default;
    explicit PauliTermList(int n) : n_(n) {}

    /// Appends a term; zero coefficients are dropped. Throws
    /// std::invalid_argument on a malformed support or non-finite value.
    void add(const PauliTerm &term);
    void add_single(Axis axis, int site, double coefficient);
    void add_bond(Axis axis, int site, double coefficient);

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    /// Sum of |coefficient|; an upper bound on the spectral radius.
    [[nodiscard]] double one_norm() const;

    friend bool operator==(const PauliTermList &, const PauliTermList &) = default;

  private:
    int n_ = 0;
    std::vector<PauliTerm> terms_;
};

/// -B sum_i X_i
PauliTermList build_h_initial(int n, double b_x_init);

/// Terms in the order ZZ bonds, XX bonds, Z fields, X fields.
PauliTermList build_h_problem(const SpinProblem &p);

/// s H_P + (1 - s) H_I, merged term by term; s must lie in [0, 1].
PauliTermList interpolated_hamiltonian(const SpinProblem &p, const Schedule &sched, double s);

/// H psi, matrix-free.
StateVector apply_hamiltonian(const PauliTermList &h, const StateVector &psi);

/// <psi|H|psi> (real for these Hamiltonians).
double expectation(const PauliTermList &h, const StateVector &psi);

/// Diagonal of H in the computational basis (Z-type terms only).
std::vector<double> diagonal(const PauliTermList &h);

/// Dense real-symmetric materialization, 2^n x 2^n.
Eigen::MatrixXd dense_matrix(const PauliTermList &h);

} // namespace daqsim
