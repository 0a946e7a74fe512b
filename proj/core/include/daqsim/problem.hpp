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
/**
 * @file
 * Spin-chain problem definitions, annealing schedules, the random instance
 * generator and the built-in reference instances.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace daqsim {

inline constexpr int kMinSites = 2;
inline constexpr int kMaxSites = 12;

enum class ProblemKind { stoquastic, non_stoquastic };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

/**
 * Nearest-neighbour chain
 *
 *   H_P = -sum_i (b_z[i] Z_i + b_x[i] X_i)
 *         -sum_b (j_zz[b] Z_b Z_{b+1} + j_xx[b] X_b X_{b+1})
 *
 * Site arrays have length n, bond arrays length n-1.
 */
struct SpinProblem {
    int n = 0;
    std::vector<double> b_z;
    std::vector<double> b_x;
    std::vector<double> j_zz;
    std::vector<double> j_xx;

    /// True iff every j_xx entry is exactly zero.
    [[nodiscard]] bool is_stoquastic() const;
    [[nodiscard]] ProblemKind kind() const {
        return is_stoquastic() ? ProblemKind::stoquastic : ProblemKind::non_stoquastic;
    }

    /// Uniform field-free chain with coupling j on every bond.
    static SpinProblem uniform_chain(int n, double j);

    friend bool operator==(const SpinProblem &, const SpinProblem &) = default;
};

/// How the time-dependent coefficients are evaluated inside Trotter step m.
enum class Sampling {
    endpoint, ///< s_m = m / M
    midpoint, ///< s_m = (m - 1/2) / M
    integral, ///< exact average of each coefficient over the step
};

std::string_view to_string(Sampling sampling);
Sampling parse_sampling(std::string_view text);

/**
 * Linear schedule s(t) = t / T with M equal Trotter steps.
 *
 * Midpoint sampling is the default: it is the convention that reproduces the
 * reference GHZ fidelities and ensemble means (see README).
 */
struct Schedule {
    double total_time = 3.0;
    int steps = 5;
    double b_x_init = 2.0;
    Sampling sampling = Sampling::midpoint;

    [[nodiscard]] double dt() const { return total_time / steps; }

    /// Weight of H_P during step m (1-based); H_I carries 1 - weight.
    [[nodiscard]] double step_weight(int m) const;

    friend bool operator==(const Schedule &, const Schedule &) = default;
};

/// Returns the list of violated invariants; empty means the problem is valid.
std::vector<std::string> validate_problem(const SpinProblem &p);

/// Throws InputError listing every violation.
void require_valid(const SpinProblem &p);

/// Identifies the generator algorithm; part of every instance-set record.
inline constexpr std::string_view kGeneratorVersion = "mt19937_64-u53-signbit-v1";

/**
 * Random chain instance.
 *
 * Fields are uniform on [-2, 2]; coupling magnitudes are uniform on
 * [0.5, 2] with an independent fair sign. Draw order from a std::mt19937_64
 * seeded with `seed`: all b_z, all b_x, then (magnitude, sign) per j_zz bond,
 * then (magnitude, sign) per j_xx bond for non-stoquastic problems. Doubles
 * are formed from the top 53 bits of each 64-bit output so results are
 * identical on every platform.
 */
SpinProblem generate_random_problem(int n, ProblemKind kind, std::uint64_t seed);

struct ProblemInstance {
    SpinProblem problem;
    std::uint64_t seed = 0;
    ProblemKind kind = ProblemKind::stoquastic;
};

struct ProblemInstanceSet {
    std::vector<ProblemInstance> instances;
    std::string generator_version{kGeneratorVersion};

    /// Seeds seed_base, seed_base + 1, ..., seed_base + count - 1.
    static ProblemInstanceSet generate(int n, ProblemKind kind, std::uint64_t seed_base,
                                       int count);

    /// Distinct seeds and every instance reproduces bit-identically.
    [[nodiscard]] bool verify() const;
};

/// Names accepted by builtin_instance().
std::span<const std::string_view> builtin_names();

/// Reference instances, values exactly as tabulated.
SpinProblem builtin_instance(std::string_view name);

/// Schedule the reference instance was run with (T = 3, M = 5 for three
/// and six sites, T = 1, M = 2 for seven and nine).
Schedule builtin_schedule(std::string_view name);

struct ProblemDocument {
    SpinProblem problem;
    std::optional<Schedule> schedule;
};

/// JSON problem document with round-trip exact doubles.
std::string save_problem(const SpinProblem &p, const std::optional<Schedule> &schedule = {});

/// Parses and validates a problem document; throws InputError with a
/// line/field diagnostic.
ProblemDocument load_problem(std::string_view text);

} // namespace daqsim
