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

// daqsim command-line entry point. Exit codes: 0 success, 2 input error,
// 3 numerical convergence failure.

#include "daqsim/error.hpp"
#include "daqsim/evolution.hpp"
#include "daqsim/gates.hpp"
#include "daqsim/harness.hpp"
#include "daqsim/metrics.hpp"
#include "daqsim/problem.hpp"
#include "daqsim/spectrum.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace daqsim;

struct ProblemSource {
    std::string problem_file;
    std::string fixture;
    std::optional<double> total_time;
    std::optional<int> steps;
    std::optional<std::string> sampling;

    void attach(CLI::App *cmd) {
        auto *file = cmd->add_option("--problem", problem_file, "Problem JSON file");
        auto *fix = cmd->add_option("--fixture", fixture, "Built-in instance name");
        file->excludes(fix);
        cmd->add_option("--T", total_time, "Total anneal time");
        cmd->add_option("--steps", steps, "Trotter steps M");
        cmd->add_option("--sampling", sampling, "endpoint|midpoint|integral");
    }

    [[nodiscard]] std::pair<SpinProblem, Schedule> resolve() const {
        SpinProblem p;
        Schedule sched;
        if (!fixture.empty()) {
            p = builtin_instance(fixture);
            sched = builtin_schedule(fixture);
        } else if (!problem_file.empty()) {
            std::ifstream in(problem_file);
            if (!in) {
                throw InputError("cannot read problem file '" + problem_file + "'");
            }
            std::stringstream buf;
            buf << in.rdbuf();
            ProblemDocument doc = load_problem(buf.str());
            p = std::move(doc.problem);
            sched = doc.schedule.value_or(Schedule{});
        } else {
            throw InputError("one of --problem or --fixture is required");
        }
        if (total_time) {
            sched.total_time = *total_time;
        }
        if (steps) {
            sched.steps = *steps;
        }
        if (sampling) {
            sched.sampling = parse_sampling(*sampling);
        }
        if (!(sched.total_time >= 0.0) || sched.steps < 1) {
            throw InputError("schedule requires T >= 0 and at least one step");
        }
        return {std::move(p), sched};
    }
};

void emit(const std::string &out_dir, const std::string &file, const std::string &content) {
    if (out_dir.empty()) {
        std::cout << content;
    } else {
        write_file(std::filesystem::path(out_dir) / file, content);
    }
}

MetricsRecord base_record(const SpinProblem &p, const Schedule &s, std::string id) {
    return {std::move(id), 0, std::string(to_string(p.kind())), p.n, s.total_time, s.steps,
            "", "", 0.0};
}

int cmd_evolve(const ProblemSource &src, const std::string &mode_text, const std::string &out,
               const CompilerConfig &cc) {
    const auto [p, sched] = src.resolve();
    const EvolutionMode mode = parse_evolution_mode(mode_text);
    const std::string out_dir = out.empty() ? "." : out;
    const std::string id = src.fixture.empty() ? "problem" : src.fixture;

    StateVector psi;
    std::vector<MetricsRecord> rows;
    auto push = [&](const std::string &metric, double v) {
        MetricsRecord r = base_record(p, sched, id);
        r.mode = std::string(to_string(mode));
        r.metric = metric;
        r.value = v;
        rows.push_back(std::move(r));
    };
    if (mode == EvolutionMode::continuous) {
        psi = evolve_continuous(p, sched).final_state;
    } else if (mode == EvolutionMode::digital) {
        psi = evolve_digital(p, sched).final_state;
    } else {
        const CompiledSchedule compiled = compile_schedule(p, sched, cc);
        psi = simulate_gates(compiled.sequence, StateVector(p.n));
        write_file(std::filesystem::path(out_dir) / "gates.txt",
                   serialize_sequence(compiled.sequence));
        push("entangling_count", compiled.report.entangling_count);
        push("single_qubit_count", compiled.report.single_qubit_count);
    }
    const StateVector target = target_state(p);
    const Distribution dist = Distribution::from_state(psi);
    push("fidelity_target", fidelity_pure(psi, target));
    push("success_target", success_measure(Distribution::from_state(target), dist));
    push("residual_energy", residual_energy(psi, p));
    if (mode != EvolutionMode::continuous) {
        const StateVector cont = evolve_continuous(p, sched).final_state;
        push("fidelity_continuous", fidelity_pure(psi, cont));
        push("success_continuous", success_measure(Distribution::from_state(cont), dist));
    }

    std::string csv = "basis,bitstring,probability\n";
    for (std::size_t k = 0; k < dist.size(); ++k) {
        csv += std::to_string(k) + ',' + bitstring(k, p.n) + ',' + format_real(dist[k]) + '\n';
    }
    write_file(std::filesystem::path(out_dir) / "distribution.csv", csv);
    write_file(std::filesystem::path(out_dir) / "metrics.csv", metrics_csv(rows));
    return 0;
}

int cmd_compile(const ProblemSource &src, const std::string &out, const CompilerConfig &cc) {
    const auto [p, sched] = src.resolve();
    const CompiledSchedule compiled = compile_schedule(p, sched, cc);
    emit(out, "gates.txt", serialize_sequence(compiled.sequence));
    std::string counts = "segment,entangling,single_qubit\n";
    for (std::size_t k = 0; k < compiled.report.per_step.size(); ++k) {
        counts += (k == 0 ? std::string("prep") : "step" + std::to_string(k)) + ',' +
                  std::to_string(compiled.report.per_step[k].entangling) + ',' +
                  std::to_string(compiled.report.per_step[k].single_qubit) + '\n';
    }
    counts += "total," + std::to_string(compiled.report.entangling_count) + ',' +
              std::to_string(compiled.report.single_qubit_count) + '\n';
    if (out.empty()) {
        std::cerr << counts;
    } else {
        write_file(std::filesystem::path(out) / "gate_counts.csv", counts);
    }
    return 0;
}

int cmd_gap(const ProblemSource &src, int grid, const std::string &out) {
    const auto [p, sched] = src.resolve();
    const GapResult g = min_gap(p, sched, grid);
    emit(out, "gap.csv",
         "n,grid,gamma,s_at_min\n" + std::to_string(p.n) + ',' + std::to_string(grid) + ',' +
             format_real(g.gap) + ',' + format_real(g.s_at_min) + '\n');
    return 0;
}

int cmd_resources(const ProblemSource &src, int grid, double epsilon, const std::string &out) {
    const auto [p, sched] = src.resolve();
    const ResourceEstimate r = estimate_resources(p, sched, epsilon, std::nullopt, grid);
    emit(out, "resources.csv",
         "n,grid,epsilon,gamma,s_at_min,D,a_max,L,k,T_bound,M_bound,gate_count\n" +
             std::to_string(p.n) + ',' + std::to_string(grid) + ',' + format_real(epsilon) + ',' +
             format_real(r.gamma) + ',' + format_real(r.s_at_min_gap) + ',' + format_real(r.D) +
             ',' + format_real(r.a_max) + ',' + std::to_string(r.L) + ',' + std::to_string(r.k) +
             ',' + format_real(r.time_bound_T) + ',' + format_real(r.steps_M) + ',' +
             format_real(r.gate_count) + '\n');
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Digitized adiabatic evolution simulator and gate compiler"};
    app.set_version_flag("--version", std::string(daqsim::kToolVersion));
    app.require_subcommand(1);

    ProblemSource src;
    std::string mode = "digital";
    std::string out;
    bool constrained = false;
    int grid = 101;
    double epsilon = 0.1;
    std::string preset_name;
    std::uint64_t seed = 1000;
    std::optional<int> count;
    std::optional<double> coupling;

    auto *evolve = app.add_subcommand("evolve", "Run one evolution");
    src.attach(evolve);
    evolve->add_option("--mode", mode, "continuous|digital|gates");
    evolve->add_option("--out", out, "Output directory (default .)");
    evolve->add_flag("--constrained", constrained, "Restrict CZ phases to [0.5, 4.5]");

    auto *preset = app.add_subcommand("preset", "Run an experiment preset");
    preset->add_option("name", preset_name, "Preset name")->required();
    preset->add_option("--seed", seed, "Seed base for random instances");
    preset->add_option("--count", count, "Instances per cell");
    preset->add_option("--out", out, "Output directory")->required();
    preset->add_option("--T", src.total_time, "Override total time");
    preset->add_option("--steps", src.steps, "Override Trotter steps");
    preset->add_option("--sampling", src.sampling, "endpoint|midpoint|integral");
    preset->add_option("--coupling", coupling, "Override the chain coupling");

    auto *compile = app.add_subcommand("compile", "Compile a schedule to gates");
    src.attach(compile);
    compile->add_option("--out", out, "Output directory (default stdout)");
    compile->add_flag("--constrained", constrained, "Restrict CZ phases to [0.5, 4.5]");

    auto *gap = app.add_subcommand("gap", "Minimum spectral gap along the path");
    src.attach(gap);
    gap->add_option("--grid", grid, "Number of s samples");
    gap->add_option("--out", out, "Output directory (default stdout)");

    auto *resources = app.add_subcommand("resources", "Adiabatic resource estimate");
    src.attach(resources);
    resources->add_option("--grid", grid, "Number of s samples");
    resources->add_option("--epsilon", epsilon, "Target Trotter error");
    resources->add_option("--out", out, "Output directory (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        CompilerConfig cc;
        cc.constrained = constrained;
        if (evolve->parsed()) {
            return cmd_evolve(src, mode, out, cc);
        }
        if (compile->parsed()) {
            return cmd_compile(src, out, cc);
        }
        if (gap->parsed()) {
            return cmd_gap(src, grid, out);
        }
        if (resources->parsed()) {
            return cmd_resources(src, grid, epsilon, out);
        }
        PresetOptions po;
        po.seed_base = seed;
        po.count = count;
        po.steps = src.steps;
        po.total_time = src.total_time;
        po.coupling = coupling;
        if (src.sampling) {
            po.sampling = parse_sampling(*src.sampling);
        }
        po.out_dir = out;
        const RunManifest m = run_preset(preset_name, po);
        for (const auto &f : m.outputs) {
            std::cout << (std::filesystem::path(out) / f).string() << '\n';
        }
        return 0;
    } catch (const InputError &e) {
        std::cerr << "daqsim: error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError &e) {
        std::cerr << "daqsim: convergence failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument &e) {
        std::cerr << "daqsim: error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "daqsim: internal error: " << e.what() << '\n';
        return 1;
    }
}
