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
#include "daqsim/pauli.hpp"
#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace daqsim;

namespace {

StateVector random_state(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<complex_t> a(std::size_t{1} << n);
    for (auto &v : a) {
        v = {g(rng), g(rng)};
    }
    StateVector psi(n, std::move(a));
    psi.normalize();
    return psi;
}

} // namespace

TEST_CASE("basis states and bitstrings") {
    const StateVector zero(3);
    CHECK(zero[0] == complex_t(1.0));
    CHECK(zero.norm() == doctest::Approx(1.0));
    CHECK(bitstring(1, 4) == "0001");
    CHECK(bitstring(10, 4) == "1010");
    const StateVector s = StateVector::from_bitstring("0011");
    CHECK(s.num_qubits() == 4);
    CHECK(std::abs(s[3]) == doctest::Approx(1.0));
    const StateVector plus = StateVector::plus_state(3);
    for (std::size_t k = 0; k < plus.size(); ++k) {
        CHECK(std::abs(plus[k] - complex_t(1.0 / std::sqrt(8.0))) < 1e-15);
    }
}

TEST_CASE("inner products and dimension checks") {
    std::mt19937_64 rng(1);
    const StateVector a = random_state(3, rng);
    CHECK(std::abs(inner(a, a) - complex_t(1.0)) < 1e-12);
    CHECK_THROWS_AS(inner(a, StateVector(2)), std::invalid_argument);
    const auto p = probabilities(a);
    double sum = 0;
    for (double v : p) {
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("initial and problem Hamiltonians match the Kronecker oracle") {
    const SpinProblem p = builtin_instance("s5-3q-nonstoq");
    const Eigen::MatrixXd hp = dense_matrix(build_h_problem(p));
    CHECK((hp.cast<std::complex<double>>() - oracle::h_problem(p)).norm() < 1e-12);
    const Eigen::MatrixXd hi = dense_matrix(build_h_initial(3, 2.0));
    CHECK((hi.cast<std::complex<double>>() - oracle::h_initial(3, 2.0)).norm() < 1e-12);
    for (double s : {0.0, 0.3, 1.0}) {
        const Eigen::MatrixXd h = dense_matrix(interpolated_hamiltonian(p, Schedule{}, s));
        CHECK((h.cast<std::complex<double>>() - oracle::h_at(p, 2.0, s)).norm() < 1e-12);
    }
    CHECK_THROWS_AS(interpolated_hamiltonian(p, Schedule{}, 1.5), InputError);
}

TEST_CASE("term order and zero suppression") {
    SpinProblem p = SpinProblem::uniform_chain(3, 2.0);
    p.b_z[1] = 0.5;
    const PauliTermList h = build_h_problem(p);
    REQUIRE(h.size() == 3);
    CHECK(h.terms()[0].axis == Axis::Z);
    CHECK(h.terms()[0].two_local());
    CHECK(h.terms()[0].coefficient == -2.0);
    CHECK(h.terms()[2].site == 1);
    CHECK_FALSE(h.terms()[2].two_local());
    CHECK(h.one_norm() == doctest::Approx(4.5));
    CHECK(build_h_initial(4, 2.0).terms()[0].coefficient == -2.0);
}

TEST_CASE("malformed terms are rejected") {
    PauliTermList h(3);
    CHECK_THROWS_AS(h.add({1.0, Axis::Z, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(h.add({1.0, Axis::Z, 3, -1}), std::invalid_argument);
    CHECK_THROWS_AS(h.add({NAN, Axis::X, 0, -1}), std::invalid_argument);
}

TEST_CASE("apply and expectation agree with dense products") {
    std::mt19937_64 rng(5);
    const SpinProblem p = generate_random_problem(4, ProblemKind::non_stoquastic, 11);
    const PauliTermList h = interpolated_hamiltonian(p, Schedule{}, 0.4);
    const oracle::Mat dense = oracle::h_at(p, 2.0, 0.4);
    for (int trial = 0; trial < 5; ++trial) {
        const StateVector psi = random_state(4, rng);
        const oracle::Vec want = dense * oracle::to_eigen(psi);
        const oracle::Vec got = oracle::to_eigen(apply_hamiltonian(h, psi));
        CHECK((want - got).norm() < 1e-12);
        const double e = oracle::to_eigen(psi).dot(want).real();
        CHECK(expectation(h, psi) == doctest::Approx(e).epsilon(1e-12));
    }
    CHECK_THROWS_AS(apply_hamiltonian(h, StateVector(3)), std::invalid_argument);
}

TEST_CASE("ferromagnet energies") {
    const SpinProblem p = SpinProblem::uniform_chain(4, 2.0);
    const PauliTermList h = build_h_problem(p);
    CHECK(expectation(h, StateVector(4)) == doctest::Approx(-6.0));
    CHECK(expectation(h, StateVector::plus_state(4)) == doctest::Approx(0.0));
    CHECK(expectation(h, StateVector::from_bitstring("0001")) == doctest::Approx(-2.0));
}
