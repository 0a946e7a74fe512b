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
#include "daqsim/evolution.hpp"

#include "daqsim/error.hpp"
#include "daqsim/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace daqsim {

namespace {

constexpr complex_t kI{0.0, 1.0};

// H(s) with the s-independent diagonal of H_P precomputed.
class InterpolatedOperator {
  public:
    InterpolatedOperator(const SpinProblem &p, const Schedule &sched)
        : p_(p), b_init_(sched.b_x_init), problem_diag_(diagonal(build_h_problem(p))) {
        const double a = build_h_initial(p.n, sched.b_x_init).one_norm();
        const double b = build_h_problem(p).one_norm();
        norm_bound_ = std::max(a, b);
    }

    [[nodiscard]] double norm_bound() const { return norm_bound_; }

    // out = -i H(s) in
    void derivative(double s, const std::vector<complex_t> &in, std::vector<complex_t> &out) const {
        const std::size_t dim = in.size();
        for (std::size_t k = 0; k < dim; ++k) {
            out[k] = s * problem_diag_[k] * in[k];
        }
        for (int i = 0; i < p_.n; ++i) {
            const double c = -(s * p_.b_x[static_cast<std::size_t>(i)] + (1.0 - s) * b_init_);
            if (c == 0.0) {
                continue;
            }
            const std::size_t mask = std::size_t{1} << i;
            for (std::size_t k = 0; k < dim; ++k) {
                out[k] += c * in[k ^ mask];
            }
        }
        for (int b = 0; b + 1 < p_.n; ++b) {
            const double c = -s * p_.j_xx[static_cast<std::size_t>(b)];
            if (c == 0.0) {
                continue;
            }
            const std::size_t mask = std::size_t{3} << b;
            for (std::size_t k = 0; k < dim; ++k) {
                out[k] += c * in[k ^ mask];
            }
        }
        for (auto &v : out) {
            v *= -kI;
        }
    }

  private:
    const SpinProblem &p_;
    double b_init_;
    std::vector<double> problem_diag_;
    double norm_bound_ = 0.0;
};

struct Rk4Run {
    std::vector<complex_t> state;
    std::vector<Checkpoint> trajectory;
};

Rk4Run integrate_rk4(const InterpolatedOperator &op, int n, double total_time, long steps,
                     std::span<const double> checkpoints) {
    const double h = total_time / static_cast<double>(steps);
    StateVector init = StateVector::plus_state(n);
    std::vector<complex_t> psi(init.amplitudes().begin(), init.amplitudes().end());
    const std::size_t dim = psi.size();
    std::vector<complex_t> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    std::vector<long> marks;
    for (double s : checkpoints) {
        marks.push_back(std::lround(std::clamp(s, 0.0, 1.0) * static_cast<double>(steps)));
    }
    Rk4Run run;
    auto record = [&](long step) {
        for (long mark : marks) {
            if (mark == step) {
                StateVector snap(n, psi);
                snap.normalize();
                run.trajectory.push_back({static_cast<double>(step) / static_cast<double>(steps),
                                          std::move(snap)});
            }
        }
    };
    record(0);

    for (long j = 0; j < steps; ++j) {
        const double s0 = static_cast<double>(j) / static_cast<double>(steps);
        const double s_half = (static_cast<double>(j) + 0.5) / static_cast<double>(steps);
        const double s1 = static_cast<double>(j + 1) / static_cast<double>(steps);
        op.derivative(s0, psi, k1);
        for (std::size_t k = 0; k < dim; ++k) {
            tmp[k] = psi[k] + 0.5 * h * k1[k];
        }
        op.derivative(s_half, tmp, k2);
        for (std::size_t k = 0; k < dim; ++k) {
            tmp[k] = psi[k] + 0.5 * h * k2[k];
        }
        op.derivative(s_half, tmp, k3);
        for (std::size_t k = 0; k < dim; ++k) {
            tmp[k] = psi[k] + h * k3[k];
        }
        op.derivative(s1, tmp, k4);
        for (std::size_t k = 0; k < dim; ++k) {
            psi[k] += (h / 6.0) * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        }
        record(j + 1);
    }
    run.state = std::move(psi);
    return run;
}

double distance(const std::vector<complex_t> &a, const std::vector<complex_t> &b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        acc += std::norm(a[k] - b[k]);
    }
    return std::sqrt(acc);
}

double norm_of(const std::vector<complex_t> &a) {
    double acc = 0.0;
    for (const auto &v : a) {
        acc += std::norm(v);
    }
    return std::sqrt(acc);
}

std::size_t bond_mask(int b) { return std::size_t{3} << b; }
std::size_t site_mask(int i) { return std::size_t{1} << i; }

} // namespace

std::string_view to_string(EvolutionMode mode) {
    switch (mode) {
    case EvolutionMode::continuous:
        return "continuous";
    case EvolutionMode::digital:
        return "digital";
    case EvolutionMode::gate:
        return "gates";
    }
    return "?";
}

EvolutionMode parse_evolution_mode(std::string_view text) {
    if (text == "continuous") {
        return EvolutionMode::continuous;
    }
    if (text == "digital") {
        return EvolutionMode::digital;
    }
    if (text == "gates" || text == "gate") {
        return EvolutionMode::gate;
    }
    throw InputError("unknown mode '" + std::string(text) + "' (expected continuous|digital|gates)");
}

EvolutionResult evolve_continuous(const SpinProblem &p, const Schedule &sched,
                                  const IntegratorConfig &cfg, std::span<const double> checkpoints) {
    require_valid(p);
    if (!(sched.total_time >= 0.0) || !std::isfinite(sched.total_time)) {
        throw InputError("evolve_continuous: total time must be finite and >= 0");
    }
    if (!(cfg.base_step > 0.0) || !(cfg.norm_tolerance > 0.0)) {
        throw InputError("evolve_continuous: base_step and norm_tolerance must be positive");
    }
    EvolutionResult result;
    result.mode = EvolutionMode::continuous;
    result.schedule = sched;
    if (sched.total_time == 0.0) {
        result.final_state = StateVector::plus_state(p.n);
        for (double s : checkpoints) {
            (void)s;
            result.trajectory.push_back({0.0, result.final_state});
        }
        return result;
    }

    const InterpolatedOperator op(p, sched);
    const double first_step = std::min(cfg.base_step, 0.25 / std::max(op.norm_bound(), 1e-12));
    const double wanted = std::ceil(sched.total_time / first_step);
    auto over_budget = [&](double count) {
        return count > static_cast<double>(cfg.max_steps);
    };
    if (over_budget(2.0 * wanted)) {
        throw ConvergenceError("evolve_continuous: " + std::to_string(wanted) +
                               " steps needed, exceeding the step budget");
    }
    long steps = std::max(1L, static_cast<long>(wanted));

    Rk4Run previous = integrate_rk4(op, p.n, sched.total_time, steps, checkpoints);
    for (int halving = 0; halving < cfg.max_step_halvings; ++halving) {
        if (over_budget(2.0 * static_cast<double>(steps))) {
            break;
        }
        steps *= 2;
        Rk4Run current = integrate_rk4(op, p.n, sched.total_time, steps, checkpoints);
        const bool norm_ok = std::abs(norm_of(current.state) - 1.0) < cfg.norm_tolerance;
        const bool stable = distance(current.state, previous.state) < cfg.stability_tolerance;
        if (norm_ok && stable) {
            result.final_state = StateVector(p.n, std::move(current.state));
            result.final_state.normalize();
            result.trajectory = std::move(current.trajectory);
            result.integrator_steps = steps;
            return result;
        }
        previous = std::move(current);
    }
    throw ConvergenceError("evolve_continuous: no convergence within " +
                           std::to_string(cfg.max_step_halvings) + " step halvings and " +
                           std::to_string(cfg.max_steps) + " steps");
}

TrotterAngles trotter_angles(const SpinProblem &p, const Schedule &sched, int m) {
    if (m < 1 || m > sched.steps) {
        throw InputError("trotter step index " + std::to_string(m) + " outside [1, " +
                         std::to_string(sched.steps) + "]");
    }
    const double s = sched.step_weight(m);
    const double dt = sched.dt();
    TrotterAngles a;
    const auto sites = static_cast<std::size_t>(p.n);
    a.zz.resize(sites - 1);
    a.xx.resize(sites - 1);
    a.z.resize(sites);
    a.x.resize(sites);
    for (std::size_t b = 0; b + 1 < sites; ++b) {
        a.zz[b] = dt * (-s * p.j_zz[b]);
        a.xx[b] = dt * (-s * p.j_xx[b]);
    }
    for (std::size_t i = 0; i < sites; ++i) {
        a.z[i] = dt * (-s * p.b_z[i]);
        a.x[i] = dt * -(s * p.b_x[i] + (1.0 - s) * sched.b_x_init);
    }
    return a;
}

void apply_exp_z(StateVector &psi, std::size_t mask, double theta) {
    if (theta == 0.0) {
        return;
    }
    const complex_t even = std::polar(1.0, -theta);
    const complex_t odd = std::polar(1.0, theta);
    for (std::size_t k = 0; k < psi.size(); ++k) {
        const bool parity = (__builtin_popcountll(k & mask) & 1) != 0;
        psi[k] *= parity ? odd : even;
    }
}

void apply_exp_x(StateVector &psi, std::size_t mask, double theta) {
    if (theta == 0.0 || mask == 0) {
        return;
    }
    const double c = std::cos(theta);
    const complex_t ms = -kI * std::sin(theta);
    const std::size_t low = mask & (~mask + 1);
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if (k & low) {
            continue;
        }
        const std::size_t j = k ^ mask;
        const complex_t a = psi[k];
        const complex_t b = psi[j];
        psi[k] = c * a + ms * b;
        psi[j] = c * b + ms * a;
    }
}

void apply_trotter_step(const SpinProblem &p, const Schedule &sched, int m, StateVector &psi,
                        const TermOrder &order) {
    const TrotterAngles a = trotter_angles(p, sched, m);
    for (TermGroup g : order) {
        switch (g) {
        case TermGroup::zz:
            for (int b = 0; b + 1 < p.n; ++b) {
                apply_exp_z(psi, bond_mask(b), a.zz[static_cast<std::size_t>(b)]);
            }
            break;
        case TermGroup::xx:
            for (int b = 0; b + 1 < p.n; ++b) {
                apply_exp_x(psi, bond_mask(b), a.xx[static_cast<std::size_t>(b)]);
            }
            break;
        case TermGroup::z:
            for (int i = 0; i < p.n; ++i) {
                apply_exp_z(psi, site_mask(i), a.z[static_cast<std::size_t>(i)]);
            }
            break;
        case TermGroup::x:
            for (int i = 0; i < p.n; ++i) {
                apply_exp_x(psi, site_mask(i), a.x[static_cast<std::size_t>(i)]);
            }
            break;
        }
    }
}

EvolutionResult evolve_digital(const SpinProblem &p, const Schedule &sched, bool record_trajectory,
                               const TermOrder &order) {
    require_valid(p);
    if (sched.steps < 1) {
        throw InputError("evolve_digital: at least one Trotter step required");
    }
    EvolutionResult result;
    result.mode = EvolutionMode::digital;
    result.schedule = sched;
    StateVector psi = StateVector::plus_state(p.n);
    if (record_trajectory) {
        result.trajectory.push_back({0.0, psi});
    }
    for (int m = 1; m <= sched.steps; ++m) {
        apply_trotter_step(p, sched, m, psi, order);
        if (record_trajectory) {
            result.trajectory.push_back({static_cast<double>(m) / sched.steps, psi});
        }
    }
    result.final_state = std::move(psi);
    return result;
}

Eigen::MatrixXcd step_unitary(const SpinProblem &p, const Schedule &sched, int m) {
    if (p.n > 4) {
        throw InputError("step_unitary: dense step unitaries are limited to n <= 4");
    }
    require_valid(p);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << p.n);
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        StateVector psi = StateVector::basis_state(p.n, static_cast<std::size_t>(col));
        apply_trotter_step(p, sched, m, psi);
        for (Eigen::Index row = 0; row < dim; ++row) {
            u(row, col) = psi[static_cast<std::size_t>(row)];
        }
    }
    return u;
}

} // namespace daqsim
