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
#include "daqsim/spectrum.hpp"

#include "daqsim/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace daqsim {

namespace {

// y = H x for real vectors; all supported terms have real matrices.
void apply_real(const PauliTermList &h, const Eigen::VectorXd &x, Eigen::VectorXd &y) {
    const auto dim = x.size();
    y.setZero(dim);
    for (const auto &t : h.terms()) {
        if (t.axis == Axis::Z) {
            for (Eigen::Index k = 0; k < dim; ++k) {
                auto bits = (k >> t.site) & 1;
                if (t.two_local()) {
                    bits ^= (k >> t.partner) & 1;
                }
                y[k] += (bits ? -t.coefficient : t.coefficient) * x[k];
            }
        } else {
            Eigen::Index mask = Eigen::Index{1} << t.site;
            if (t.two_local()) {
                mask |= Eigen::Index{1} << t.partner;
            }
            for (Eigen::Index k = 0; k < dim; ++k) {
                y[k ^ mask] += t.coefficient * x[k];
            }
        }
    }
}

void project_out(Eigen::VectorXd &v, const std::vector<Eigen::VectorXd> &basis) {
    for (const auto &b : basis) {
        v -= b.dot(v) * b;
    }
}

struct Eigenpair {
    double value;
    Eigen::VectorXd vector;
};

// Lowest eigenpair of H restricted to the orthogonal complement of `locked`.
Eigenpair lanczos_lowest(const PauliTermList &h, const std::vector<Eigen::VectorXd> &locked,
                         std::uint64_t seed) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << h.num_qubits());
    const double scale = std::max(h.one_norm(), 1.0);
    const int max_krylov = static_cast<int>(std::min<Eigen::Index>(dim, 400));

    std::mt19937_64 rng(seed);
    Eigen::VectorXd start(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        start[k] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    }

    for (int restart = 0; restart < 20; ++restart) {
        project_out(start, locked);
        start.normalize();
        std::vector<Eigen::VectorXd> q{start};
        std::vector<double> alpha;
        std::vector<double> beta;
        Eigen::VectorXd w(dim);
        Eigenpair best{0.0, start};
        for (int j = 0; j < max_krylov; ++j) {
            apply_real(h, q.back(), w);
            project_out(w, locked);
            alpha.push_back(q.back().dot(w));
            // Full re-orthogonalization, twice for stability.
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &v : q) {
                    w -= v.dot(w) * v;
                }
                project_out(w, locked);
            }
            const double b = w.norm();

            const auto m = static_cast<Eigen::Index>(alpha.size());
            Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
            for (Eigen::Index i = 0; i < m; ++i) {
                tri(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < m) {
                    tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
            const double residual = std::abs(b * es.eigenvectors()(m - 1, 0));
            const bool exhausted = b < 1e-12 * scale || j + 1 == max_krylov;
            if (residual < 1e-11 * scale || exhausted) {
                Eigen::VectorXd ritz = Eigen::VectorXd::Zero(dim);
                for (Eigen::Index i = 0; i < m; ++i) {
                    ritz += es.eigenvectors()(i, 0) * q[static_cast<std::size_t>(i)];
                }
                ritz.normalize();
                best = {es.eigenvalues()[0], ritz};
                if (residual < 1e-11 * scale || b < 1e-12 * scale) {
                    return best;
                }
                break;
            }
            beta.push_back(b);
            q.push_back(w / b);
        }
        start = best.vector;
    }
    throw ConvergenceError("Lanczos did not converge for the lowest eigenpair");
}

Spectrum diagonalize_dense(const PauliTermList &h, bool want_vectors) {
    const Eigen::MatrixXd m = dense_matrix(h);
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw std::logic_error("diagonalize: Hamiltonian matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw ConvergenceError("diagonalize: dense eigensolver failed");
    }
    Spectrum out;
    out.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    if (want_vectors) {
        out.eigenvectors = es.eigenvectors();
    }
    out.complete = true;
    return out;
}

Spectrum diagonalize_lanczos(const PauliTermList &h, bool want_vectors, int lowest_count) {
    std::vector<Eigen::VectorXd> locked;
    std::vector<double> values;
    for (int k = 0; k < lowest_count; ++k) {
        auto pair = lanczos_lowest(h, locked, 0x5eed0000ULL + static_cast<std::uint64_t>(k));
        values.push_back(pair.value);
        locked.push_back(std::move(pair.vector));
    }
    // Deflation can return pairs slightly out of order.
    std::vector<std::size_t> order(values.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    Spectrum out;
    out.complete = false;
    const auto dim = locked.empty() ? 0 : locked.front().size();
    if (want_vectors) {
        out.eigenvectors.resize(dim, static_cast<Eigen::Index>(order.size()));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.eigenvalues.push_back(values[order[i]]);
        if (want_vectors) {
            out.eigenvectors.col(static_cast<Eigen::Index>(i)) = locked[order[i]];
        }
    }
    return out;
}

} // namespace

int Spectrum::ground_degeneracy() const {
    if (eigenvalues.empty()) {
        return 0;
    }
    int count = 1;
    while (static_cast<std::size_t>(count) < eigenvalues.size() &&
           eigenvalues[static_cast<std::size_t>(count)] - eigenvalues.front() <= degeneracy_tolerance) {
        ++count;
    }
    return count;
}

int Spectrum::first_excited_index() const {
    const int g = ground_degeneracy();
    return static_cast<std::size_t>(g) < eigenvalues.size() ? g : -1;
}

double Spectrum::gap() const {
    const int idx = first_excited_index();
    if (idx < 0) {
        return std::numeric_limits<double>::infinity();
    }
    return eigenvalues[static_cast<std::size_t>(idx)] - eigenvalues.front();
}

Spectrum diagonalize(const PauliTermList &h, bool want_vectors, int lowest_count) {
    if (h.num_qubits() > kMaxSites) {
        throw InputError("diagonalize: at most " + std::to_string(kMaxSites) + " qubits");
    }
    if (h.num_qubits() <= kDenseLimit) {
        return diagonalize_dense(h, want_vectors);
    }
    return diagonalize_lanczos(h, want_vectors, std::max(lowest_count, 2));
}

StateVector target_state(const SpinProblem &p) {
    const Spectrum spec = diagonalize(build_h_problem(p), true);
    const int g = spec.ground_degeneracy();
    const auto dim = spec.eigenvectors.rows();
    Eigen::VectorXd v;
    if (g == 1) {
        v = spec.eigenvectors.col(0);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v[arg] < 0.0) {
            v = -v;
        }
    } else {
        const Eigen::MatrixXd ground = spec.eigenvectors.leftCols(g);
        const Eigen::VectorXd plus = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
        v = ground * (ground.transpose() * plus);
        const double nrm = v.norm();
        if (nrm < 1e-6) {
            throw InputError("target_state: |+>^n is orthogonal to the degenerate ground space (" +
                             std::to_string(g) + "-fold); target undefined");
        }
        v /= nrm;
    }
    std::vector<complex_t> amps(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        amps[static_cast<std::size_t>(k)] = v[k];
    }
    return StateVector(p.n, std::move(amps));
}

double ground_energy(const SpinProblem &p) {
    return diagonalize(build_h_problem(p), false, 2).eigenvalues.front();
}

GapResult min_gap(const SpinProblem &p, const Schedule &sched, int grid_points) {
    if (grid_points < 3) {
        throw InputError("min_gap: grid_points must be at least 3");
    }
    GapResult best{std::numeric_limits<double>::infinity(), 0.0};
    for (int j = 0; j < grid_points; ++j) {
        const double s = static_cast<double>(j) / (grid_points - 1);
        const double g = diagonalize(interpolated_hamiltonian(p, sched, s), false).gap();
        if (g < best.gap) {
            best = {g, s};
        }
    }
    return best;
}

} // namespace daqsim
