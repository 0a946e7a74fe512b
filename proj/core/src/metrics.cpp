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
#include "daqsim/metrics.hpp"

#include "daqsim/error.hpp"
#include "daqsim/pauli.hpp"
#include "daqsim/spectrum.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <tuple>

namespace daqsim {

namespace {

void check_dimensions(std::size_t a, std::size_t b, const char *what) {
    if (a != b) {
        throw InputError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
    }
}

double z_sign(std::size_t index, int site) { return ((index >> site) & 1U) ? -1.0 : 1.0; }

} // namespace

Distribution::Distribution(int n, std::vector<double> probabilities)
    : n_(n), p_(std::move(probabilities)) {
    if (n < 0 || n > 30 || p_.size() != (std::size_t{1} << n)) {
        throw InputError("distribution: expected 2^n entries");
    }
    double sum = 0.0;
    for (double &v : p_) {
        if (!std::isfinite(v) || v < -1e-12) {
            throw InputError("distribution: negative or non-finite probability");
        }
        v = std::max(v, 0.0);
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InputError("distribution: probabilities sum to " + std::to_string(sum));
    }
    for (double &v : p_) {
        v /= sum;
    }
}

Distribution Distribution::from_state(const StateVector &psi) {
    std::vector<double> p = daqsim::probabilities(psi);
    double sum = 0.0;
    for (double v : p) {
        sum += v;
    }
    if (!(sum > 0.0)) {
        throw InputError("distribution: zero state");
    }
    for (double &v : p) {
        v /= sum;
    }
    return Distribution(psi.num_qubits(), std::move(p));
}

double fidelity_pure(const StateVector &a, const StateVector &b) {
    check_dimensions(a.size(), b.size(), "fidelity_pure");
    return std::min(1.0, std::norm(inner(a, b)));
}

double success_measure(const Distribution &ideal, const Distribution &p) {
    check_dimensions(ideal.size(), p.size(), "success_measure");
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        acc += std::sqrt(ideal[k] * p[k]);
    }
    return std::min(1.0, acc * acc);
}

int kink_count(std::size_t index, const SpinProblem &problem) {
    int kinks = 0;
    for (int b = 0; b + 1 < problem.n; ++b) {
        const double j = problem.j_zz[static_cast<std::size_t>(b)];
        const bool differ = (((index >> b) ^ (index >> (b + 1))) & 1U) != 0;
        if ((j > 0.0 && differ) || (j < 0.0 && !differ)) {
            ++kinks;
        }
    }
    return kinks;
}

KinkProfile kink_profile(const Distribution &p, const SpinProblem &problem) {
    require_valid(problem);
    check_dimensions(p.size(), std::size_t{1} << problem.n, "kink_profile");
    for (std::size_t b = 0; b < problem.j_zz.size(); ++b) {
        if (problem.j_zz[b] == 0.0) {
            throw InputError("kink_profile: bond " + std::to_string(b) +
                             " has zero coupling; kinks undefined");
        }
    }
    KinkProfile out;
    out.likelihood.assign(static_cast<std::size_t>(problem.n), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        const int kinks = kink_count(k, problem);
        out.likelihood[static_cast<std::size_t>(kinks)] += p[k];
        out.expected_kinks += kinks * p[k];
    }
    return out;
}

double residual_energy(const StateVector &psi, const SpinProblem &problem, double ground) {
    require_valid(problem);
    check_dimensions(psi.size(), std::size_t{1} << problem.n, "residual_energy");
    const double r = expectation(build_h_problem(problem), psi) - ground;
    return (r < 0.0 && r >= -1e-9) ? 0.0 : r;
}

double residual_energy(const StateVector &psi, const SpinProblem &problem) {
    return residual_energy(psi, problem, ground_energy(problem));
}

double magnetization(const StateVector &psi, int i) {
    if (i < 0 || i >= psi.num_qubits()) {
        throw InputError("magnetization: site " + std::to_string(i) + " out of range");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        acc += z_sign(k, i) * std::norm(psi[k]);
    }
    return acc;
}

double parity_correlation(const StateVector &psi, int i, int d) {
    if (i < 0 || d < 0 || i + d >= psi.num_qubits()) {
        throw InputError("parity_correlation: sites (" + std::to_string(i) + ", " +
                         std::to_string(i + d) + ") out of range");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        acc += z_sign(k, i) * z_sign(k, i + d) * std::norm(psi[k]);
    }
    return acc;
}

Distribution uniform_baseline(int n) {
    const std::size_t dim = std::size_t{1} << n;
    return Distribution(n, std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

PowerLawFit fit_power_law(const std::vector<std::pair<double, double>> &points, double lo,
                          double hi) {
    std::vector<std::pair<double, double>> logs;
    for (const auto &[t, e] : points) {
        if (t < lo || t > hi) {
            continue;
        }
        if (!(t > 0.0) || !(e > 0.0)) {
            throw InputError("fit_power_law: nonpositive value in fit window");
        }
        logs.emplace_back(std::log(t), std::log(e));
    }
    if (logs.size() < 4) {
        throw InputError("fit_power_law: need at least 4 points in window, have " +
                         std::to_string(logs.size()));
    }
    const auto count = static_cast<double>(logs.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto &[x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= count;
    my /= count;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto &[x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0.0) {
        throw InputError("fit_power_law: all abscissae coincide");
    }
    const double slope = sxy / sxx;
    PowerLawFit fit;
    fit.eta = -slope;
    fit.amplitude = std::exp(my - slope * mx);
    fit.lo = lo;
    fit.hi = hi;
    fit.points_used = static_cast<int>(logs.size());
    return fit;
}

ResourceEstimate estimate_resources(const SpinProblem &p, const Schedule &sched, double epsilon,
                                    std::optional<double> gamma, int grid_points) {
    require_valid(p);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InputError("estimate_resources: epsilon must be positive");
    }
    if (grid_points < 3) {
        throw InputError("estimate_resources: grid_points must be at least 3");
    }
    ResourceEstimate r;
    r.epsilon = epsilon;

    // dH/ds = H_P - H_I exactly, since the path is linear.
    PauliTermList derivative = build_h_problem(p);
    const PauliTermList initial = build_h_initial(p.n, sched.b_x_init);
    for (const PauliTerm &t : initial.terms()) {
        derivative.add({-t.coefficient, t.axis, t.site, t.partner});
    }

    std::set<std::tuple<char, int, int>> supports;
    for (double s : {0.0, 1.0}) {
        const PauliTermList h = interpolated_hamiltonian(p, sched, s);
        for (const PauliTerm &t : h.terms()) {
            supports.emplace(static_cast<char>(t.axis), t.site, t.partner);
            r.a_max = std::max(r.a_max, std::abs(t.coefficient));
        }
    }
    r.L = static_cast<int>(supports.size());

    GapResult min{std::numeric_limits<double>::infinity(), 0.0};
    for (int j = 0; j < grid_points; ++j) {
        const double s = static_cast<double>(j) / (grid_points - 1);
        const Spectrum spec = diagonalize(interpolated_hamiltonian(p, sched, s), true);
        if (spec.gap() < min.gap) {
            min = {spec.gap(), s};
        }
        const int g = spec.ground_degeneracy();
        const int first = spec.first_excited_index();
        if (first < 0) {
            continue;
        }
        int excited = 0;
        const double level = spec.eigenvalues[static_cast<std::size_t>(first)];
        while (static_cast<std::size_t>(first + excited) < spec.eigenvalues.size() &&
               spec.eigenvalues[static_cast<std::size_t>(first + excited)] - level <=
                   spec.degeneracy_tolerance) {
            ++excited;
        }
        const Eigen::Index dim = spec.eigenvectors.rows();
        Eigen::MatrixXd applied(dim, g);
        for (int c = 0; c < g; ++c) {
            std::vector<complex_t> amps(static_cast<std::size_t>(dim));
            for (Eigen::Index k = 0; k < dim; ++k) {
                amps[static_cast<std::size_t>(k)] = spec.eigenvectors(k, c);
            }
            const StateVector out = apply_hamiltonian(derivative, StateVector(p.n, std::move(amps)));
            for (Eigen::Index k = 0; k < dim; ++k) {
                applied(k, c) = out[static_cast<std::size_t>(k)].real();
            }
        }
        const Eigen::MatrixXd block =
            spec.eigenvectors.middleCols(first, excited).transpose() * applied;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
        r.D = std::max(r.D, svd.singularValues()[0]);
    }
    r.gamma = gamma.value_or(min.gap);
    r.s_at_min_gap = min.s_at_min;

    if (!(r.gamma >= 1e-10)) {
        const double inf = std::numeric_limits<double>::infinity();
        r.time_bound_T = inf;
        r.steps_M = inf;
        r.gate_count = inf;
        return r;
    }
    r.time_bound_T = r.D / (r.gamma * r.gamma);
    const double L = r.L;
    r.steps_M = r.time_bound_T * r.time_bound_T * r.a_max * r.a_max * L * L / epsilon;
    r.gate_count = r.steps_M * L * r.k;
    return r;
}

} // namespace daqsim
