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
#include "daqsim/metrics.hpp"
#include "daqsim/spectrum.hpp"

#include "oracle.hpp"

#include <Eigen/Eigenvalues>
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

StateVector ghz(int n) {
    StateVector s(n);
    s[0] = 1.0 / std::sqrt(2.0);
    s[(std::size_t{1} << n) - 1] = 1.0 / std::sqrt(2.0);
    return s;
}

} // namespace

TEST_CASE("fidelity basics") {
    std::mt19937_64 rng(3);
    const StateVector a = random_state(3, rng);
    CHECK(fidelity_pure(a, a) == doctest::Approx(1.0));
    StateVector phased = a;
    phased *= std::polar(1.0, 0.9);
    CHECK(fidelity_pure(a, phased) == doctest::Approx(1.0));
    CHECK(fidelity_pure(StateVector::basis_state(1, 0), StateVector::basis_state(1, 1)) == 0.0);
    CHECK(fidelity_pure(ghz(4), StateVector(4)) == doctest::Approx(0.5));
    CHECK_THROWS_AS(fidelity_pure(a, StateVector(2)), InputError);
}

TEST_CASE("success measure") {
    const Distribution u = uniform_baseline(2);
    CHECK(u[0] == 0.25);
    CHECK(success_measure(u, u) == doctest::Approx(1.0));
    const Distribution a(1, {1.0, 0.0});
    const Distribution b(1, {0.0, 1.0});
    CHECK(success_measure(a, b) == 0.0);
    // (2 sqrt(0.5 / 16))^2 = 0.125
    CHECK(success_measure(Distribution::from_state(target_state(SpinProblem::uniform_chain(4, 2.0))),
                          uniform_baseline(4)) == doctest::Approx(0.125));
    CHECK_THROWS_AS(success_measure(u, a), InputError);
}

TEST_CASE("distribution invariants") {
    CHECK_THROWS_AS(Distribution(1, {0.6, 0.6}), InputError);
    CHECK_THROWS_AS(Distribution(1, {1.1, -0.1}), InputError);
    CHECK_THROWS_AS(Distribution(2, {1.0, 0.0}), InputError);
    const Distribution d(1, {1.0 + 1e-13, -1e-13});
    CHECK(d[1] == 0.0);
}

TEST_CASE("success measure bounds fidelity from above") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 1000; ++i) {
        const StateVector a = random_state(3, rng);
        const StateVector b = random_state(3, rng);
        CHECK(success_measure(Distribution::from_state(a), Distribution::from_state(b)) >=
              fidelity_pure(a, b) - 1e-12);
    }
}

TEST_CASE("kink profiles") {
    const SpinProblem ferro2 = SpinProblem::uniform_chain(2, 1.0);
    const KinkProfile plus = kink_profile(Distribution::from_state(StateVector::plus_state(2)), ferro2);
    CHECK(plus.likelihood == std::vector<double>{0.5, 0.5});
    const SpinProblem ferro4 = SpinProblem::uniform_chain(4, 2.0);
    CHECK(kink_profile(Distribution::from_state(StateVector(4)), ferro4).likelihood[0] == 1.0);
    const KinkProfile neel =
        kink_profile(Distribution::from_state(StateVector::from_bitstring("0101")), ferro4);
    CHECK(neel.likelihood[3] == 1.0);
    CHECK(neel.expected_kinks == 3.0);
    const SpinProblem anti = SpinProblem::uniform_chain(4, -1.0);
    CHECK(kink_profile(Distribution::from_state(StateVector::from_bitstring("0101")), anti)
              .likelihood[0] == 1.0);
    SpinProblem broken = ferro4;
    broken.j_zz[1] = 0.0;
    CHECK_THROWS_AS(kink_profile(Distribution::from_state(StateVector(4)), broken), InputError);
}

TEST_CASE("residual energy") {
    const SpinProblem p = SpinProblem::uniform_chain(4, 2.0);
    const double at_target = residual_energy(target_state(p), p);
    CHECK(at_target >= 0.0);
    CHECK(at_target < 1e-12);
    CHECK(residual_energy(StateVector::plus_state(4), p) == doctest::Approx(6.0));
    CHECK(residual_energy(StateVector::from_bitstring("0011"), p) == doctest::Approx(4.0));
}

TEST_CASE("residual energy equals 2|J| times expected kinks on uniform chains") {
    for (double j : {2.0, -1.5}) {
        const SpinProblem p = SpinProblem::uniform_chain(5, j);
        Schedule s;
        for (double t : {0.3, 1.0, 2.0}) {
            s.total_time = t;
            const StateVector psi = evolve_digital(p, s).final_state;
            const KinkProfile k = kink_profile(Distribution::from_state(psi), p);
            CHECK(std::abs(residual_energy(psi, p) - 2 * std::abs(j) * k.expected_kinks) < 1e-9);
            double sum = 0;
            for (double v : k.likelihood) {
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("magnetization and parity") {
    const StateVector neel = StateVector::from_bitstring("01010");
    // Bitstrings list q4 first, so q0 = 0 (Z = +1), q1 = 1 (Z = -1), ...
    for (int i = 0; i < 5; ++i) {
        CHECK(magnetization(neel, i) == (i % 2 == 0 ? 1.0 : -1.0));
    }
    CHECK(parity_correlation(neel, 0, 1) == -1.0);
    CHECK(parity_correlation(neel, 1, 2) == 1.0);
    CHECK(parity_correlation(ghz(5), 0, 4) == doctest::Approx(1.0));
    CHECK(std::abs(parity_correlation(StateVector::plus_state(5), 1, 2)) < 1e-12);
    CHECK(std::abs(magnetization(StateVector::plus_state(3), 2)) < 1e-12);
    CHECK(magnetization(StateVector(3), 1) == 1.0);
    CHECK_THROWS_AS(magnetization(neel, 5), InputError);
    CHECK_THROWS_AS(parity_correlation(neel, 3, 2), InputError);
}

TEST_CASE("local observables match dense operators") {
    std::mt19937_64 rng(4);
    const StateVector psi = random_state(3, rng);
    const oracle::Vec v = oracle::to_eigen(psi);
    CHECK(magnetization(psi, 1) ==
          doctest::Approx(v.dot(oracle::single(3, 1, 'Z') * v).real()).epsilon(1e-12));
    std::vector<char> ops = {'Z', 'I', 'Z'};
    CHECK(parity_correlation(psi, 0, 2) ==
          doctest::Approx(v.dot(oracle::kron_string(ops) * v).real()).epsilon(1e-12));
}

TEST_CASE("power-law fits") {
    std::vector<std::pair<double, double>> pts;
    for (int k = 1; k <= 10; ++k) {
        const double t = 0.5 * k;
        pts.emplace_back(t, 3.0 * std::pow(t, -0.5));
    }
    const PowerLawFit f = fit_power_law(pts, 0.0, 10.0);
    CHECK(f.eta == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(f.amplitude == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(f.points_used == 10);
    std::vector<std::pair<double, double>> flat;
    for (int k = 1; k <= 6; ++k) {
        flat.emplace_back(k, 2.0);
    }
    CHECK(std::abs(fit_power_law(flat, 0, 10).eta) < 1e-6);
    CHECK_THROWS_AS(fit_power_law(flat, 0, 3.5), InputError);
    flat[2].second = 0.0;
    CHECK_THROWS_AS(fit_power_law(flat, 0, 10), InputError);
}

TEST_CASE("resource estimate structure") {
    const SpinProblem p = SpinProblem::uniform_chain(4, 2.0);
    const Schedule s;
    const ResourceEstimate r = estimate_resources(p, s, 0.1);
    CHECK(r.time_bound_T > 0.0);
    CHECK(std::isfinite(r.gate_count));
    CHECK(r.L == 7);
    CHECK(r.a_max == doctest::Approx(2.0));
    CHECK(r.k == 2);

    const ResourceEstimate half = estimate_resources(p, s, 0.05);
    CHECK(half.steps_M == doctest::Approx(2 * r.steps_M));
    const ResourceEstimate g1 = estimate_resources(p, s, 0.1, 0.4);
    const ResourceEstimate g2 = estimate_resources(p, s, 0.1, 0.2);
    CHECK(g2.time_bound_T == doctest::Approx(4 * g1.time_bound_T));
    CHECK(g2.gate_count == doctest::Approx(16 * g1.gate_count));
    CHECK(std::isinf(estimate_resources(p, s, 0.1, 1e-12).time_bound_T));
    CHECK_THROWS_AS(estimate_resources(p, s, 0.0), InputError);

    SpinProblem doubled = p;
    for (double &j : doubled.j_zz) {
        j *= 2;
    }
    const ResourceEstimate d = estimate_resources(doubled, s, 0.1, 0.4);
    CHECK(d.a_max == doctest::Approx(4.0));
    // Holding T fixed, M scales with a_max^2.
    CHECK(d.steps_M / (d.time_bound_T * d.time_bound_T) ==
          doctest::Approx(4 * g1.steps_M / (g1.time_bound_T * g1.time_bound_T)));
}

TEST_CASE("resource matrix element matches a dense sweep") {
    const SpinProblem p = SpinProblem::uniform_chain(4, 2.0);
    const Schedule s;
    const int grid = 41;
    const ResourceEstimate r = estimate_resources(p, s, 0.1, std::nullopt, grid);
    const oracle::Mat dh = oracle::h_problem(p) - oracle::h_initial(4, 2.0);
    double d = 0.0;
    double gap = 1e9;
    for (int j = 0; j < grid; ++j) {
        Eigen::SelfAdjointEigenSolver<oracle::Mat> es(oracle::h_at(p, 2.0, j / 40.0));
        const auto &w = es.eigenvalues();
        int g = 1;
        while (g < 16 && w[g] - w[0] <= 1e-8) {
            ++g;
        }
        int e = 1;
        while (g + e < 16 && w[g + e] - w[g] <= 1e-8) {
            ++e;
        }
        gap = std::min(gap, w[g] - w[0]);
        const oracle::Mat block = es.eigenvectors().middleCols(g, e).adjoint() * dh *
                                  es.eigenvectors().leftCols(g);
        Eigen::JacobiSVD<oracle::Mat> svd(block);
        d = std::max(d, svd.singularValues()[0]);
    }
    CHECK(r.D == doctest::Approx(d).epsilon(1e-8));
    CHECK(r.gamma == doctest::Approx(gap).epsilon(1e-10));
}
