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
#include "daqsim/state_vector.hpp"

#include <cmath>
#include <stdexcept>

namespace daqsim {

namespace {
std::size_t dimension(int n) {
    if (n < 0 || n > 30) {
        throw std::invalid_argument("StateVector: qubit count " + std::to_string(n) +
                                    " out of range");
    }
    return std::size_t{1} << n;
}
} // namespace

StateVector::StateVector(int n) : n_(n), amps_(dimension(n), complex_t{0.0, 0.0}) {
    amps_[0] = 1.0;
}

StateVector::StateVector(int n, std::vector<complex_t> amplitudes)
    : n_(n), amps_(std::move(amplitudes)) {
    if (amps_.size() != dimension(n)) {
        throw std::invalid_argument("StateVector: amplitude count does not match 2^n");
    }
}

StateVector StateVector::basis_state(int n, std::size_t index) {
    StateVector psi(n);
    if (index >= psi.size()) {
        throw std::invalid_argument("StateVector::basis_state: index out of range");
    }
    psi.amps_[0] = 0.0;
    psi.amps_[index] = 1.0;
    return psi;
}

StateVector StateVector::plus_state(int n) {
    const std::size_t dim = dimension(n);
    return StateVector(n, std::vector<complex_t>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

StateVector StateVector::from_bitstring(const std::string &bits) {
    const int n = static_cast<int>(bits.size());
    std::size_t index = 0;
    for (int i = 0; i < n; ++i) {
        const char c = bits[static_cast<std::size_t>(n - 1 - i)];
        if (c == '1') {
            index |= std::size_t{1} << i;
        } else if (c != '0') {
            throw std::invalid_argument("StateVector::from_bitstring: expected 0/1");
        }
    }
    return basis_state(n, index);
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void StateVector::normalize() {
    const double nrm = norm();
    if (nrm == 0.0) {
        throw std::domain_error("StateVector::normalize: zero vector");
    }
    for (auto &a : amps_) {
        a /= nrm;
    }
}

StateVector &StateVector::operator+=(const StateVector &other) {
    require_same_dimension(*this, other);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        amps_[i] += other.amps_[i];
    }
    return *this;
}

StateVector &StateVector::operator*=(complex_t factor) {
    for (auto &a : amps_) {
        a *= factor;
    }
    return *this;
}

complex_t inner(const StateVector &a, const StateVector &b) {
    require_same_dimension(a, b);
    complex_t acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

std::vector<double> probabilities(const StateVector &psi) {
    std::vector<double> out(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        out[i] = std::norm(psi[i]);
    }
    return out;
}

std::string bitstring(std::size_t index, int n) {
    std::string out(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((index >> i) & 1U) {
            out[static_cast<std::size_t>(n - 1 - i)] = '1';
        }
    }
    return out;
}

void require_same_dimension(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("state dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    }
}

} // namespace daqsim
