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
#include "daqsim/harness.hpp"

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace daqsim;

namespace {

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("daqsim-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("CSV formatting") {
    CHECK(format_real(0.1) == "0.1");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_real(-0.0) == "0");
    const MetricsRecord r{"a", 7, "stoquastic", 3, 3.0, 5, "digital", "fidelity_target", 0.5};
    const std::vector<MetricsRecord> rows = {r};
    CHECK(metrics_csv(rows) ==
          "instance_id,seed,kind,n,T,M,mode,metric,value\na,7,stoquastic,3,3,5,digital,fidelity_target,0.5\n");
}

TEST_CASE("parallel_for visits each index once and propagates errors") {
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
    for (auto &h : hits) {
        CHECK(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(
                        10, [](std::size_t i) {
                            if (i == 7) {
                                throw std::runtime_error("boom");
                            }
                        },
                        3),
                    std::runtime_error);
    CHECK(worker_count() >= 1);
}

TEST_CASE("comparisons are self-consistent") {
    const ComparedStates c = compare_evolutions(builtin_instance("s4-3q-stoq"),
                                                builtin_schedule("s4-3q-stoq"));
    CHECK(c.metrics.digital_continuous.success >= c.metrics.digital_continuous.fidelity - 1e-12);
    CHECK(c.metrics.uniform_target > 0.0);
    CHECK(c.metrics.uniform_target <= 1.0);
}

TEST_CASE("random preset is deterministic and independent of worker count") {
    PresetOptions o;
    o.count = 3;
    o.out_dir = scratch("rand-a");
    o.workers = 1;
    run_preset("random-fig5", o);
    PresetOptions o2 = o;
    o2.out_dir = scratch("rand-b");
    o2.workers = 3;
    const RunManifest m = run_preset("random-fig5", o2);
    for (const auto &f : m.outputs) {
        CHECK(slurp(o.out_dir / f) == slurp(o2.out_dir / f));
    }
    CHECK(m.seeds == std::vector<std::uint64_t>{1000, 1001, 1002});
    const std::string manifest = slurp(o2.out_dir / "manifest.json");
    CHECK(manifest.find("\"generator_version\": \"mt19937_64-u53-signbit-v1\"") != std::string::npos);
    const std::string metrics = slurp(o.out_dir / "metrics.csv");
    CHECK(metrics.rfind("instance_id,seed,kind,n,T,M,mode,metric,value\n", 0) == 0);
}

TEST_CASE("table preset has the three comparison rows per instance") {
    PresetOptions o;
    o.out_dir = scratch("table");
    run_preset("instances-tableS10", o);
    const std::string csv = slurp(o.out_dir / "metrics.csv");
    for (const char *metric : {"s4-3q-stoq,0,stoquastic,3,3,5,digital,success_digital_continuous",
                               "s4-3q-stoq,0,stoquastic,3,3,5,digital,success_digital_target",
                               "s4-3q-stoq,0,stoquastic,3,3,5,continuous,success_continuous_target"}) {
        CHECK(csv.find(metric) != std::string::npos);
    }
}

TEST_CASE("ghz and degeneracy presets write their files") {
    PresetOptions o;
    o.out_dir = scratch("ghz");
    const RunManifest m = run_preset("ghz-fig2", o);
    CHECK(m.outputs.size() == 3);
    const std::string traj = slurp(o.out_dir / "ghz_trajectory.csv");
    CHECK(traj.find("continuous,0.2,") != std::string::npos);
    o.out_dir = scratch("deg");
    run_preset("degeneracy-fig4", o);
    CHECK(std::filesystem::exists(o.out_dir / "parity_summary.csv"));
}

TEST_CASE("unknown preset") {
    PresetOptions o;
    o.out_dir = scratch("none");
    CHECK_THROWS_AS(run_preset("fig9", o), InputError);
}

TEST_CASE("scaling sweep residual energies start at the plateau") {
    PresetOptions o;
    const std::vector<int> sizes = {3};
    const std::vector<double> grid = {0.0, 1.0};
    const auto pts = scaling_sweep(sizes, grid, 2.0, o, true, false);
    REQUIRE(pts.size() == 2);
    // |+>^3 has <H_P> = 0 and E_0 = -4.
    CHECK(pts[0].residual_energy == doctest::Approx(4.0));
    CHECK(pts[1].residual_energy < pts[0].residual_energy);
}
