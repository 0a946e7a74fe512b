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
#include "daqsim/pauli.hpp"

#include "daqsim/error.hpp"

#include <cmath>
#include <stdexcept>

namespace daqsim {

namespace {

// Z-parity of the term's support in basis state `index`: +1 or -1.
inline double z_sign(const PauliTerm &t, std::size_t index) {
    std::size_t bits = (index >> t.site) & 1U;
    if (t.two_local()) {
        bits ^= (index >> t.partner) & 1U;
    }
    return bits ? -1.0 : 1.0;
}

inline std::size_t x_mask(const PauliTerm &t) {
    std::size_t mask = std::size_t{1} << t.site;
    if (t.two_local()) {
        mask |= std::size_t{1} << t.partner;
    }
    return mask;
}

} // namespace

void PauliTermList::add(const PauliTerm &term) {
    if (!std::isfinite(term.coefficient)) {
        throw std::invalid_argument("PauliTermList: non-finite coefficient");
    }
    if (term.site < 0 || term.site >= n_) {
        throw std::invalid_argument("PauliTermList: site out of range");
    }
    if (term.two_local() && term.partner != term.site + 1) {
        throw std::invalid_argument("PauliTermList: 2-local terms must act on adjacent sites");
    }
    if (term.two_local() && term.partner >= n_) {
        throw std::invalid_argument("PauliTermList: bond out of range");
    }
    if (term.coefficient == 0.0) {
        return;
    }
    terms_.push_back(term);
}

void PauliTermList::add_single(Axis axis, int site, double coefficient) {
    add(PauliTerm{coefficient, axis, site, -1});
}

void PauliTermList::add_bond(Axis axis, int site, double coefficient) {
    add(PauliTerm{coefficient, axis, site, site + 1});
}

double PauliTermList::one_norm() const {
    double acc = 0.0;
    for (const auto &t : terms_) {
        acc += std::abs(t.coefficient);
    }
    return acc;
}

PauliTermList build_h_initial(int n, double b_x_init) {
    if (n < 1) {
        throw InputError("build_h_initial: n must be positive");
    }
    PauliTermList h(n);
    for (int i = 0; i < n; ++i) {
        h.add_single(Axis::X, i, -b_x_init);
    }
    return h;
}

PauliTermList build_h_problem(const SpinProblem &p) {
    require_valid(p);
    PauliTermList h(p.n);
    for (int b = 0; b + 1 < p.n; ++b) {
        h.add_bond(Axis::Z, b, -p.j_zz[static_cast<std::size_t>(b)]);
    }
    for (int b = 0; b + 1 < p.n; ++b) {
        h.add_bond(Axis::X, b, -p.j_xx[static_cast<std::size_t>(b)]);
    }
    for (int i = 0; i < p.n; ++i) {
        h.add_single(Axis::Z, i, -p.b_z[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < p.n; ++i) {
        h.add_single(Axis::X, i, -p.b_x[static_cast<std::size_t>(i)]);
    }
    return h;
}

PauliTermList interpolated_hamiltonian(const SpinProblem &p, const Schedule &sched, double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw InputError("interpolated_hamiltonian: s=" + std::to_string(s) + " outside [0, 1]");
    }
    require_valid(p);
    const double r = 1.0 - s;
    PauliTermList h(p.n);
    for (int b = 0; b + 1 < p.n; ++b) {
        h.add_bond(Axis::Z, b, s * -p.j_zz[static_cast<std::size_t>(b)]);
    }
    for (int b = 0; b + 1 < p.n; ++b) {
        h.add_bond(Axis::X, b, s * -p.j_xx[static_cast<std::size_t>(b)]);
    }
    for (int i = 0; i < p.n; ++i) {
        h.add_single(Axis::Z, i, s * -p.b_z[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < p.n; ++i) {
        // Exact endpoints: at s = 0 this is -B_I, at s = 1 it is -b_x[i].
        const double problem_part = s * -p.b_x[static_cast<std::size_t>(i)];
        const double initial_part = r * -sched.b_x_init;
        h.add_single(Axis::X, i, s == 0.0 ? initial_part
                                 : s == 1.0 ? problem_part
                                            : problem_part + initial_part);
    }
    return h;
}

StateVector apply_hamiltonian(const PauliTermList &h, const StateVector &psi) {
    if (psi.num_qubits() != h.num_qubits()) {
        throw std::invalid_argument("apply_hamiltonian: dimension mismatch (" +
                                    std::to_string(h.num_qubits()) + " vs " +
                                    std::to_string(psi.num_qubits()) + " qubits)");
    }
    const std::size_t dim = psi.size();
    StateVector out(psi.num_qubits(), std::vector<complex_t>(dim, complex_t{0.0, 0.0}));
    for (const auto &t : h.terms()) {
        if (t.axis == Axis::Z) {
            for (std::size_t k = 0; k < dim; ++k) {
                out[k] += t.coefficient * z_sign(t, k) * psi[k];
            }
        } else {
            const std::size_t mask = x_mask(t);
            for (std::size_t k = 0; k < dim; ++k) {
                out[k ^ mask] += t.coefficient * psi[k];
            }
        }
    }
    return out;
}

double expectation(const PauliTermList &h, const StateVector &psi) {
    return inner(psi, apply_hamiltonian(h, psi)).real();
}

std::vector<double> diagonal(const PauliTermList &h) {
    const std::size_t dim = std::size_t{1} << h.num_qubits();
    std::vector<double> d(dim, 0.0);
    for (const auto &t : h.terms()) {
        if (t.axis != Axis::Z) {
            continue;
        }
        for (std::size_t k = 0; k < dim; ++k) {
            d[k] += t.coefficient * z_sign(t, k);
        }
    }
    return d;
}

Eigen::MatrixXd dense_matrix(const PauliTermList &h) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto &t : h.terms()) {
        if (t.axis == Axis::Z) {
            for (Eigen::Index k = 0; k < dim; ++k) {
                m(k, k) += t.coefficient * z_sign(t, static_cast<std::size_t>(k));
            }
        } else {
            const auto mask = static_cast<Eigen::Index>(x_mask(t));
            for (Eigen::Index k = 0; k < dim; ++k) {
                m(k ^ mask, k) += t.coefficient;
            }
        }
    }
    return m;
}

} // namespace daqsim
