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
 * Batch plumbing shared by the CLI and the acceptance suite: CSV records,
 * a deterministic parallel loop, evolution comparisons and experiment
 * presets.
 */
#pragma once

#include "daqsim/evolution.hpp"
#include "daqsim/metrics.hpp"
#include "daqsim/problem.hpp"
#include "daqsim/state_vector.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace daqsim {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kCsvSchemaVersion = "1";

/// One row of the metrics CSV.
struct MetricsRecord {
    std::string instance_id;
    std::uint64_t seed = 0;
    std::string kind;
    int n = 0;
    double T = 0.0;
    int M = 0;
    std::string mode;
    std::string metric;
    double value = 0.0;
};

/// 12 significant digits, shortest form (printf %.12g).
std::string format_real(double v);

/// Header `instance_id,seed,kind,n,T,M,mode,metric,value` then one line per
/// record, in the given order.
std::string metrics_csv(std::span<const MetricsRecord> records);

/// Stable sort by instance_id (the order used for every CSV we emit).
void sort_records(std::vector<MetricsRecord> &records);

/// Writes `content` to `path`, creating parent directories. Throws
/// InputError when the file cannot be written.
void write_file(const std::filesystem::path &path, std::string_view content);

/// Worker count: hardware concurrency, capped by the DAQSIM_THREADS
/// environment variable when it holds a positive integer.
int worker_count();

/**
 * Calls body(i) for i in [0, count) on up to `workers` threads
 * (worker_count() when 0). Each index runs exactly once; results must be
 * written to per-index slots, so the outcome does not depend on
 * scheduling. The first exception thrown by any body is rethrown.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body,
                  int workers = 0);

/// Pairwise agreement of ideal digital, continuous and target states.
struct Comparison {
    struct Pair {
        double fidelity = 0.0;
        double success = 0.0;
    };
    Pair digital_continuous;
    Pair digital_target;
    Pair continuous_target;
    /// success_measure(target, uniform) and the same against the digital state.
    double uniform_target = 0.0;
    double uniform_digital = 0.0;
};

struct ComparedStates {
    StateVector digital;
    StateVector continuous;
    StateVector target;
    Comparison metrics;
};

ComparedStates compare_evolutions(const SpinProblem &p, const Schedule &sched,
                                  const IntegratorConfig &cfg = {});

/// Common preset knobs; unset optionals take the preset's defaults.
struct PresetOptions {
    std::uint64_t seed_base = 1000;
    std::optional<int> count;
    std::optional<int> steps;
    std::optional<double> total_time;
    std::optional<double> coupling;
    Sampling sampling = Sampling::midpoint;
    std::filesystem::path out_dir = "out";
    int workers = 0;
};

struct RunManifest {
    std::string preset;
    std::uint64_t seed_base = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> outputs;
    std::string sampling;
    std::string generator_version;
    std::string tool_version{kToolVersion};
    std::string started_utc;
    std::string finished_utc;
    /// Free-form resolved parameters (steps, times, couplings).
    std::vector<std::pair<std::string, std::string>> parameters;

    [[nodiscard]] std::string to_json() const;
};

/// Names accepted by run_preset.
std::span<const std::string_view> preset_names();

/// Runs a preset, writes its CSVs plus manifest.json under out_dir and
/// returns the manifest. Throws InputError for an unknown name.
RunManifest run_preset(std::string_view name, const PresetOptions &options);

// Preset data, exposed so callers can assert on it without parsing CSV.

/// One (n, |J|T) point of the scaling sweep.
struct ScalingPoint {
    int n = 0;
    double scaled_time = 0.0;
    double T = 0.0;
    int M = 0;
    std::string mode;
    double residual_energy = 0.0;
    KinkProfile kinks;
};

/// Field-free ferromagnetic chains of coupling j, T = x / |j| for x in
/// `scaled_times`. Mode is "continuous" or "digital".
std::vector<ScalingPoint> scaling_sweep(std::span<const int> sizes,
                                        std::span<const double> scaled_times, double j,
                                        const PresetOptions &options, bool continuous,
                                        bool digital);

/// The default 13-point |J|T grid 0, 0.25, ..., 3.
std::vector<double> default_scaled_time_grid();

struct DegeneracyPoint {
    double b_z = 0.0;
    std::string mode;
    std::vector<double> magnetization;
    /// parity[d - 1][i] = <Z_i Z_{i+d}>.
    std::vector<std::vector<double>> parity;
};

/// n-site chain with uniform coupling j and field b_z on the middle site.
std::vector<DegeneracyPoint> degeneracy_sweep(int n, double j, const Schedule &sched,
                                              std::span<const double> fields, bool continuous);

} // namespace daqsim
