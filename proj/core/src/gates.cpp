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
#include "daqsim/gates.hpp"

#include "daqsim/error.hpp"
#include "daqsim/evolution.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace daqsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kRangeSlack = 1e-12;

bool in_range(double phase, const CompilerConfig &cfg) {
    return phase >= cfg.phase_min - kRangeSlack && phase <= cfg.phase_max + kRangeSlack;
}

void push_rotation(std::vector<Gate> &out, GateKind kind, int q, double angle) {
    const double a = canonical_angle(angle);
    if (a == 0.0) {
        return;
    }
    out.push_back(Gate{kind, q, -1, a});
}

/*
 * exp(-i theta Z_a Z_b) with a conditional phase phi = -4 theta.
 *
 * Constrained synthesis picks the first form whose emitted phases all lie in
 * [phase_min, phase_max]:
 *   1. CZPHI(phi mod 2pi)
 *   2. X_a CZPHI(-phi mod 2pi) X_a, which realizes CZPHI(phi) up to a local
 *      phase on b
 *   3. echo pair CZPHI(c + phi/2) . X_a CZPHI(c - phi/2) X_a around the
 *      centre c of the allowed window, for |phi| (mod 2pi) below phase_min
 * Local RZ corrections make each form exact up to global phase.
 */
void emit_zz(std::vector<Gate> &out, int a, int b, double theta, const CompilerConfig &cfg) {
    if (theta == 0.0) {
        return;
    }
    const double phi = -4.0 * theta;
    if (!cfg.constrained) {
        out.push_back(Gate::czphi(a, b, phi));
        push_rotation(out, GateKind::RZ, a, 2.0 * theta);
        push_rotation(out, GateKind::RZ, b, 2.0 * theta);
        return;
    }
    if (!(cfg.phase_min > 0.0 && cfg.phase_min < cfg.phase_max)) {
        throw InputError("compiler: require 0 < phase_min < phase_max");
    }
    double reduced = std::fmod(phi, kTwoPi);
    if (reduced < 0.0) {
        reduced += kTwoPi;
    }
    if (in_range(reduced, cfg)) {
        out.push_back(Gate::czphi(a, b, reduced));
        push_rotation(out, GateKind::RZ, a, 2.0 * theta);
        push_rotation(out, GateKind::RZ, b, 2.0 * theta);
        return;
    }
    const double flipped = kTwoPi - reduced;
    if (in_range(flipped, cfg)) {
        out.push_back(Gate::rx(a, kPi));
        out.push_back(Gate::czphi(a, b, flipped));
        out.push_back(Gate::rx(a, kPi));
        push_rotation(out, GateKind::RZ, a, 2.0 * theta);
        push_rotation(out, GateKind::RZ, b, 2.0 * theta - flipped);
        return;
    }
    const double wrapped = canonical_angle(phi);
    const double centre = 0.5 * (cfg.phase_min + cfg.phase_max);
    const double first = centre + 0.5 * wrapped;
    const double second = centre - 0.5 * wrapped;
    if (!in_range(first, cfg) || !in_range(second, cfg)) {
        throw InputError("compiler: conditional phase " + std::to_string(phi) +
                         " cannot be synthesized inside [" + std::to_string(cfg.phase_min) + ", " +
                         std::to_string(cfg.phase_max) + "]");
    }
    out.push_back(Gate::czphi(a, b, first));
    out.push_back(Gate::rx(a, kPi));
    out.push_back(Gate::czphi(a, b, second));
    out.push_back(Gate::rx(a, kPi));
    push_rotation(out, GateKind::RZ, a, 2.0 * theta);
    push_rotation(out, GateKind::RZ, b, 2.0 * theta - second);
}

void emit_xx(std::vector<Gate> &out, int a, int b, double theta, const CompilerConfig &cfg) {
    if (theta == 0.0) {
        return;
    }
    out.push_back(Gate::ry(a, -kPi / 2));
    out.push_back(Gate::ry(b, -kPi / 2));
    emit_zz(out, a, b, theta, cfg);
    out.push_back(Gate::ry(a, kPi / 2));
    out.push_back(Gate::ry(b, kPi / 2));
}

void emit_step(std::vector<Gate> &out, const SpinProblem &p, const Schedule &sched, int m,
               const CompilerConfig &cfg) {
    const TrotterAngles a = trotter_angles(p, sched, m);
    for (int b = 0; b + 1 < p.n; ++b) {
        emit_zz(out, b, b + 1, a.zz[static_cast<std::size_t>(b)], cfg);
    }
    for (int b = 0; b + 1 < p.n; ++b) {
        emit_xx(out, b, b + 1, a.xx[static_cast<std::size_t>(b)], cfg);
    }
    for (int i = 0; i < p.n; ++i) {
        push_rotation(out, GateKind::RZ, i, 2.0 * a.z[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < p.n; ++i) {
        push_rotation(out, GateKind::RX, i, 2.0 * a.x[static_cast<std::size_t>(i)]);
    }
}

void apply_ry(StateVector &psi, int q, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if (k & bit) {
            continue;
        }
        const complex_t zero = psi[k];
        const complex_t one = psi[k | bit];
        psi[k] = c * zero - s * one;
        psi[k | bit] = s * zero + c * one;
    }
}

void apply_czphi(StateVector &psi, int a, int b, double phase) {
    const std::size_t both = (std::size_t{1} << a) | (std::size_t{1} << b);
    const complex_t factor = std::polar(1.0, phase);
    for (std::size_t k = 0; k < psi.size(); ++k) {
        if ((k & both) == both) {
            psi[k] *= factor;
        }
    }
}

std::string format_angle(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string &what) {
    throw InputError("gate file line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string &tok, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        parse_fail(line, "invalid number '" + tok + "'");
    }
    return v;
}

int parse_index(const std::string &tok, std::size_t line) {
    int v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || v < 0) {
        parse_fail(line, "invalid qubit index '" + tok + "'");
    }
    return v;
}

} // namespace

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return "RX";
    case GateKind::RY:
        return "RY";
    case GateKind::RZ:
        return "RZ";
    case GateKind::CZPHI:
        return "CZPHI";
    }
    return "?";
}

double canonical_angle(double angle) {
    double a = std::remainder(angle, kTwoPi); // [-pi, pi]
    if (a <= -kPi) {
        a += kTwoPi;
    }
    return a;
}

Gate Gate::rx(int q, double angle) { return Gate{GateKind::RX, q, -1, canonical_angle(angle)}; }
Gate Gate::ry(int q, double angle) { return Gate{GateKind::RY, q, -1, canonical_angle(angle)}; }
Gate Gate::rz(int q, double angle) { return Gate{GateKind::RZ, q, -1, canonical_angle(angle)}; }
Gate Gate::czphi(int a, int b, double phase) { return Gate{GateKind::CZPHI, a, b, phase}; }

void GateSequence::validate() const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate &g = gates[i];
        if (g.qubit < 0 || g.qubit >= num_qubits) {
            throw std::invalid_argument("gate " + std::to_string(i) + ": qubit out of range");
        }
        if (g.kind == GateKind::CZPHI) {
            if (g.partner < 0 || g.partner >= num_qubits) {
                throw std::invalid_argument("gate " + std::to_string(i) + ": partner out of range");
            }
            if (std::abs(g.partner - g.qubit) != 1) {
                throw std::invalid_argument("gate " + std::to_string(i) +
                                            ": CZPHI requires adjacent qubits");
            }
        } else if (g.partner != -1) {
            throw std::invalid_argument("gate " + std::to_string(i) +
                                        ": rotation with a second qubit");
        }
        if (!std::isfinite(g.angle)) {
            throw std::invalid_argument("gate " + std::to_string(i) + ": non-finite angle");
        }
    }
    for (std::size_t k = 0; k < step_markers.size(); ++k) {
        if (step_markers[k] > gates.size() || (k > 0 && step_markers[k] < step_markers[k - 1])) {
            throw std::invalid_argument("step markers must be non-decreasing gate indices");
        }
    }
}

GateSequence compile_zz(double theta, const CompilerConfig &cfg) {
    if (!std::isfinite(theta)) {
        throw InputError("compile_zz: non-finite angle");
    }
    GateSequence seq{2, {}, {}};
    emit_zz(seq.gates, 0, 1, theta, cfg);
    return seq;
}

GateSequence compile_xx(double theta, const CompilerConfig &cfg) {
    if (!std::isfinite(theta)) {
        throw InputError("compile_xx: non-finite angle");
    }
    GateSequence seq{2, {}, {}};
    emit_xx(seq.gates, 0, 1, theta, cfg);
    return seq;
}

GateSequence compile_step(const SpinProblem &p, const Schedule &sched, int m,
                          const CompilerConfig &cfg) {
    require_valid(p);
    GateSequence seq{p.n, {}, {0}};
    emit_step(seq.gates, p, sched, m, cfg);
    return seq;
}

CompiledSchedule compile_schedule(const SpinProblem &p, const Schedule &sched,
                                  const CompilerConfig &cfg) {
    require_valid(p);
    if (sched.steps < 1) {
        throw InputError("compile_schedule: at least one Trotter step required");
    }
    CompiledSchedule out;
    GateSequence &seq = out.sequence;
    seq.num_qubits = p.n;
    for (int q = 0; q < p.n; ++q) {
        seq.gates.push_back(Gate::ry(q, kPi / 2));
    }
    for (int m = 1; m <= sched.steps; ++m) {
        seq.step_markers.push_back(seq.gates.size());
        emit_step(seq.gates, p, sched, m, cfg);
    }
    out.report = count_gates(seq);
    return out;
}

GateCountReport count_gates(const GateSequence &seq) {
    GateCountReport r;
    r.per_step.assign(seq.step_markers.size() + 1, StepCount{});
    std::size_t segment = 0;
    for (std::size_t i = 0; i < seq.gates.size(); ++i) {
        while (segment < seq.step_markers.size() && i >= seq.step_markers[segment]) {
            ++segment;
        }
        StepCount &c = r.per_step[segment];
        if (seq.gates[i].entangling()) {
            ++c.entangling;
            ++r.entangling_count;
        } else {
            ++c.single_qubit;
            ++r.single_qubit_count;
        }
    }
    return r;
}

StateVector simulate_gates(const GateSequence &seq, const StateVector &initial) {
    seq.validate();
    if (initial.num_qubits() != seq.num_qubits) {
        throw std::invalid_argument("simulate_gates: sequence has " +
                                    std::to_string(seq.num_qubits) + " qubits, state has " +
                                    std::to_string(initial.num_qubits()));
    }
    StateVector psi = initial;
    for (const Gate &g : seq.gates) {
        switch (g.kind) {
        case GateKind::RX:
            apply_exp_x(psi, std::size_t{1} << g.qubit, 0.5 * g.angle);
            break;
        case GateKind::RY:
            apply_ry(psi, g.qubit, g.angle);
            break;
        case GateKind::RZ:
            apply_exp_z(psi, std::size_t{1} << g.qubit, 0.5 * g.angle);
            break;
        case GateKind::CZPHI:
            apply_czphi(psi, g.qubit, g.partner, g.angle);
            break;
        }
    }
    return psi;
}

Eigen::MatrixXcd sequence_unitary(const GateSequence &seq) {
    if (seq.num_qubits > 6) {
        throw InputError("sequence_unitary: limited to 6 qubits");
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << seq.num_qubits);
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const StateVector out = simulate_gates(
            seq, StateVector::basis_state(seq.num_qubits, static_cast<std::size_t>(col)));
        for (Eigen::Index row = 0; row < dim; ++row) {
            u(row, col) = out[static_cast<std::size_t>(row)];
        }
    }
    return u;
}

std::string serialize_sequence(const GateSequence &seq) {
    std::ostringstream os;
    os << "# daqsim gate sequence\n";
    os << "QUBITS " << seq.num_qubits << "\n";
    std::size_t next_marker = 0;
    auto flush_markers = [&](std::size_t index) {
        while (next_marker < seq.step_markers.size() && seq.step_markers[next_marker] == index) {
            os << "STEP " << (next_marker + 1) << "\n";
            ++next_marker;
        }
    };
    for (std::size_t i = 0; i < seq.gates.size(); ++i) {
        flush_markers(i);
        const Gate &g = seq.gates[i];
        os << to_string(g.kind) << ' ' << g.qubit << ' ';
        if (g.kind == GateKind::CZPHI) {
            os << g.partner << ' ';
        }
        os << format_angle(g.angle) << "\n";
    }
    flush_markers(seq.gates.size());
    return os.str();
}

GateSequence parse_sequence(std::string_view text) {
    GateSequence seq;
    bool have_qubits = false;
    int max_index = -1;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) {
            tok.push_back(t);
        }
        if (tok.empty()) {
            continue;
        }
        const std::string &op = tok[0];
        if (op == "QUBITS") {
            if (tok.size() != 2) {
                parse_fail(line_no, "expected 'QUBITS n'");
            }
            seq.num_qubits = parse_index(tok[1], line_no);
            have_qubits = true;
        } else if (op == "STEP") {
            if (tok.size() != 2) {
                parse_fail(line_no, "expected 'STEP m'");
            }
            const int m = parse_index(tok[1], line_no);
            if (static_cast<std::size_t>(m) != seq.step_markers.size() + 1) {
                parse_fail(line_no, "STEP " + tok[1] + " out of sequence");
            }
            seq.step_markers.push_back(seq.gates.size());
        } else if (op == "RX" || op == "RY" || op == "RZ") {
            if (tok.size() != 3) {
                parse_fail(line_no, "expected '" + op + " qubit angle'");
            }
            const GateKind kind = op == "RX" ? GateKind::RX : op == "RY" ? GateKind::RY : GateKind::RZ;
            const int q = parse_index(tok[1], line_no);
            seq.gates.push_back(Gate{kind, q, -1, parse_number(tok[2], line_no)});
            max_index = std::max(max_index, q);
        } else if (op == "CZPHI") {
            if (tok.size() != 4) {
                parse_fail(line_no, "expected 'CZPHI q1 q2 phase'");
            }
            const int a = parse_index(tok[1], line_no);
            const int b = parse_index(tok[2], line_no);
            if (std::abs(a - b) != 1) {
                parse_fail(line_no, "CZPHI qubits must be adjacent");
            }
            seq.gates.push_back(Gate::czphi(a, b, parse_number(tok[3], line_no)));
            max_index = std::max({max_index, a, b});
        } else {
            parse_fail(line_no, "unknown directive '" + op + "'");
        }
    }
    if (!have_qubits) {
        seq.num_qubits = max_index + 1;
    } else if (max_index >= seq.num_qubits) {
        throw InputError("gate file: qubit index " + std::to_string(max_index) +
                         " exceeds QUBITS " + std::to_string(seq.num_qubits));
    }
    return seq;
}

} // namespace daqsim
