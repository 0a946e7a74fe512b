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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace daqsim {

using complex_t = std::complex<double>;

/**
 * Amplitudes over the computational basis of n qubits.
 *
 * Bit i of a basis index is qubit i (qubit 0 is the least significant bit),
 * and a set bit means the qubit is in |1>, the -1 eigenstate of Z.
 */
class StateVector {
  public:
    StateVector() = default;

    /// |0...0>
    explicit StateVector(int n);

    StateVector(int n, std::vector<complex_t> amplitudes);

    static StateVector basis_state(int n, std::size_t index);

    /// |+>^n, the ground state of the transverse initial Hamiltonian.
    static StateVector plus_state(int n);

    /// Bitstring "q_{n-1} ... q_0" parsed to a basis state.
    static StateVector from_bitstring(const std::string &bits);

    [[nodiscard]] int num_qubits() const { return n_; }
    [[nodiscard]] std::size_t size() const { return amps_.size(); }

    complex_t &operator[](std::size_t i) { return amps_[i]; }
    const complex_t &operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] std::span<complex_t> amplitudes() { return amps_; }
    [[nodiscard]] std::span<const complex_t> amplitudes() const { return amps_; }

    [[nodiscard]] double norm() const;
    void normalize();

    StateVector &operator+=(const StateVector &other);
    StateVector &operator*=(complex_t factor);

  private:
    int n_ = 0;
    std::vector<complex_t> amps_;
};

/// <a|b>
complex_t inner(const StateVector &a, const StateVector &b);

/// Squared moduli of the amplitudes.
std::vector<double> probabilities(const StateVector &psi);

/// Bitstring "q_{n-1} ... q_0" for a basis index.
std::string bitstring(std::size_t index, int n);

/// Throws std::invalid_argument if the two states act on different sizes.
void require_same_dimension(const StateVector &a, const StateVector &b);

} // namespace daqsim
