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
#include "daqsim/problem.hpp"

#include "daqsim/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace daqsim {

namespace {

struct Builtin {
    std::string_view name;
    SpinProblem problem;
    Schedule schedule;
};

Schedule fixture_schedule(double t, int m) {
    Schedule s;
    s.total_time = t;
    s.steps = m;
    return s;
}

const std::vector<Builtin> &builtins() {
    static const std::vector<Builtin> table = {
        {"s3-9q-stoq",
         {9,
          {-0.559, -1.078, -1.822, -0.407, 0.652, 1.675, 1.362, 0.302, -0.187},
          {1.437, 0.749, 0.912, 1.153, 1.523, 1.670, 1.621, 1.930, -0.899},
          {-0.781, -1.672, 0.520, 0.635, 0.812, -0.816, 1.162, 0.639},
          std::vector<double>(8, 0.0)},
         fixture_schedule(1.0, 2)},
        {"s4-3q-stoq",
         {3, {-1.29, -1.45, -0.772}, {-0.159, 1.22, -1.93}, {-1.09, 1.16}, {0.0, 0.0}},
         fixture_schedule(3.0, 5)},
        {"s5-3q-nonstoq",
         {3, {-0.875, 0.781, -0.428}, {-1.18, -1.71, 1.02}, {-0.757, 1.32}, {-0.841, 1.02}},
         fixture_schedule(3.0, 5)},
        {"s6-6q-stoq",
         {6,
          {0.468, -1.577, -1.183, -0.665, -0.928, -1.265},
          {0.155, -1.238, 1.789, 0.899, -1.501, -1.309},
          {1.476, -0.740, -0.765, -0.535, -0.966},
          std::vector<double>(5, 0.0)},
         fixture_schedule(3.0, 5)},
        {"s7-6q-nonstoq",
         {6,
          {-1.672, -1.282, -1.532, -1.433, 1.282, -1.765},
          {-0.255, 0.606, -1.735, 0.732, 1.586, -0.305},
          {-1.491, 1.349, 0.628, 1.287, 1.919},
          {0.577, -1.954, -1.616, -1.517, -1.896}},
         fixture_schedule(3.0, 5)},
        {"s8-7q-nonstoq",
         {7,
          {-1.026, -1.896, 0.116, -0.619, -0.493, -1.316, -1.872},
          {-1.335, 0.760, -1.261, -0.221, -0.892, -1.321, 0.133},
          {-1.455, -0.588, -0.582, 1.223, -0.635, 0.614},
          {1.891, 1.517, 1.568, 0.748, 1.419, -0.839}},
         fixture_schedule(1.0, 2)},
    };
    return table;
}

const Builtin &find_builtin(std::string_view name) {
    for (const auto &b : builtins()) {
        if (b.name == name) {
            return b;
        }
    }
    std::string msg = "unknown fixture '" + std::string(name) + "'; valid names:";
    for (const auto &b : builtins()) {
        msg += " ";
        msg += b.name;
    }
    throw InputError(msg);
}

// Portable uniform double in [0, 1) from the top 53 bits.
double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64 &rng, double lo, double hi) {
    return lo + (hi - lo) * unit_double(rng());
}

double signed_coupling(std::mt19937_64 &rng) {
    const double magnitude = uniform(rng, 0.5, 2.0);
    const bool negative = (rng() >> 63) != 0;
    return negative ? -magnitude : magnitude;
}

// 1-based line number of a byte offset.
std::size_t line_of(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<std::size_t>(
                   std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

std::vector<double> read_array(const nlohmann::json &doc, const char *field) {
    if (!doc.contains(field)) {
        throw InputError(std::string("problem document: missing field '") + field + "'");
    }
    const auto &arr = doc.at(field);
    if (!arr.is_array()) {
        throw InputError(std::string("problem document: field '") + field + "' must be an array");
    }
    std::vector<double> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) {
            throw InputError(std::string("problem document: field '") + field + "[" +
                             std::to_string(i) + "]' is not a number");
        }
        out.push_back(arr[i].get<double>());
    }
    return out;
}

} // namespace

std::string_view to_string(ProblemKind kind) {
    return kind == ProblemKind::stoquastic ? "stoquastic" : "non-stoquastic";
}

ProblemKind parse_problem_kind(std::string_view text) {
    if (text == "stoquastic" || text == "stoq") {
        return ProblemKind::stoquastic;
    }
    if (text == "non-stoquastic" || text == "nonstoq") {
        return ProblemKind::non_stoquastic;
    }
    throw InputError("unknown problem kind '" + std::string(text) + "'");
}

bool SpinProblem::is_stoquastic() const {
    return std::all_of(j_xx.begin(), j_xx.end(), [](double v) { return v == 0.0; });
}

SpinProblem SpinProblem::uniform_chain(int n, double j) {
    const auto sites = static_cast<std::size_t>(std::max(n, 0));
    const auto bonds = sites > 0 ? sites - 1 : 0;
    return SpinProblem{n, std::vector<double>(sites, 0.0), std::vector<double>(sites, 0.0),
                       std::vector<double>(bonds, j), std::vector<double>(bonds, 0.0)};
}

std::string_view to_string(Sampling sampling) {
    switch (sampling) {
    case Sampling::endpoint:
        return "endpoint";
    case Sampling::midpoint:
        return "midpoint";
    case Sampling::integral:
        return "integral";
    }
    return "?";
}

Sampling parse_sampling(std::string_view text) {
    if (text == "endpoint") {
        return Sampling::endpoint;
    }
    if (text == "midpoint") {
        return Sampling::midpoint;
    }
    if (text == "integral" || text == "integral-average") {
        return Sampling::integral;
    }
    throw InputError("unknown sampling mode '" + std::string(text) +
                     "' (expected endpoint|midpoint|integral)");
}

double Schedule::step_weight(int m) const {
    const double steps_d = static_cast<double>(steps);
    switch (sampling) {
    case Sampling::endpoint:
        return m / steps_d;
    case Sampling::midpoint:
        return (m - 0.5) / steps_d;
    case Sampling::integral: {
        // (1/dt) * integral of t/T over [(m-1) dt, m dt]; equals the
        // midpoint value because the schedule is linear.
        const double lo = (m - 1) / steps_d;
        const double hi = m / steps_d;
        return 0.5 * (hi * hi - lo * lo) / (hi - lo);
    }
    }
    return 0.0;
}

std::vector<std::string> validate_problem(const SpinProblem &p) {
    std::vector<std::string> out;
    if (p.n < kMinSites) {
        out.emplace_back("site count below " + std::to_string(kMinSites));
    }
    if (p.n > kMaxSites) {
        out.emplace_back("site count above " + std::to_string(kMaxSites));
    }
    const auto sites = static_cast<std::size_t>(std::max(p.n, 0));
    const auto bonds = sites > 0 ? sites - 1 : 0;
    if (p.b_z.size() != sites) {
        out.emplace_back("site array length: b_z has " + std::to_string(p.b_z.size()) +
                         " entries, expected " + std::to_string(sites));
    }
    if (p.b_x.size() != sites) {
        out.emplace_back("site array length: b_x has " + std::to_string(p.b_x.size()) +
                         " entries, expected " + std::to_string(sites));
    }
    if (p.j_zz.size() != bonds) {
        out.emplace_back("bond array length: j_zz has " + std::to_string(p.j_zz.size()) +
                         " entries, expected " + std::to_string(bonds));
    }
    if (p.j_xx.size() != bonds) {
        out.emplace_back("bond array length: j_xx has " + std::to_string(p.j_xx.size()) +
                         " entries, expected " + std::to_string(bonds));
    }
    auto check_finite = [&out](const std::vector<double> &v, const char *name) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!std::isfinite(v[i])) {
                out.emplace_back(std::string("non-finite entry: ") + name + "[" +
                                 std::to_string(i) + "]");
            }
        }
    };
    check_finite(p.b_z, "b_z");
    check_finite(p.b_x, "b_x");
    check_finite(p.j_zz, "j_zz");
    check_finite(p.j_xx, "j_xx");
    return out;
}

void require_valid(const SpinProblem &p) {
    const auto violations = validate_problem(p);
    if (violations.empty()) {
        return;
    }
    std::string msg = "invalid problem:";
    for (const auto &v : violations) {
        msg += " [" + v + "]";
    }
    throw InputError(msg);
}

SpinProblem generate_random_problem(int n, ProblemKind kind, std::uint64_t seed) {
    if (n < kMinSites || n > kMaxSites) {
        throw InputError("generate_random_problem: n=" + std::to_string(n) + " outside [" +
                         std::to_string(kMinSites) + ", " + std::to_string(kMaxSites) + "]");
    }
    std::mt19937_64 rng(seed);
    const auto sites = static_cast<std::size_t>(n);
    SpinProblem p;
    p.n = n;
    p.b_z.resize(sites);
    p.b_x.resize(sites);
    p.j_zz.resize(sites - 1);
    p.j_xx.assign(sites - 1, 0.0);
    for (auto &v : p.b_z) {
        v = uniform(rng, -2.0, 2.0);
    }
    for (auto &v : p.b_x) {
        v = uniform(rng, -2.0, 2.0);
    }
    for (auto &v : p.j_zz) {
        v = signed_coupling(rng);
    }
    if (kind == ProblemKind::non_stoquastic) {
        for (auto &v : p.j_xx) {
            v = signed_coupling(rng);
        }
    }
    return p;
}

ProblemInstanceSet ProblemInstanceSet::generate(int n, ProblemKind kind, std::uint64_t seed_base,
                                                int count) {
    ProblemInstanceSet set;
    set.instances.reserve(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) {
        const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(i);
        set.instances.push_back({generate_random_problem(n, kind, seed), seed, kind});
    }
    return set;
}

bool ProblemInstanceSet::verify() const {
    if (generator_version != kGeneratorVersion) {
        return false;
    }
    std::set<std::uint64_t> seen;
    for (const auto &inst : instances) {
        if (!seen.insert(inst.seed).second) {
            return false;
        }
        if (generate_random_problem(inst.problem.n, inst.kind, inst.seed) != inst.problem) {
            return false;
        }
    }
    return true;
}

std::span<const std::string_view> builtin_names() {
    static const std::array<std::string_view, 6> names = {
        "s3-9q-stoq", "s4-3q-stoq", "s5-3q-nonstoq", "s6-6q-stoq", "s7-6q-nonstoq", "s8-7q-nonstoq"};
    return names;
}

SpinProblem builtin_instance(std::string_view name) { return find_builtin(name).problem; }

Schedule builtin_schedule(std::string_view name) { return find_builtin(name).schedule; }

std::string save_problem(const SpinProblem &p, const std::optional<Schedule> &schedule) {
    nlohmann::ordered_json doc;
    doc["n"] = p.n;
    doc["b_z"] = p.b_z;
    doc["b_x"] = p.b_x;
    doc["j_zz"] = p.j_zz;
    doc["j_xx"] = p.j_xx;
    if (schedule) {
        doc["schedule"] = {{"T", schedule->total_time},
                           {"M", schedule->steps},
                           {"b_x_init", schedule->b_x_init},
                           {"sampling", std::string(to_string(schedule->sampling))}};
    }
    return doc.dump(2) + "\n";
}

ProblemDocument load_problem(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error &e) {
        std::ostringstream msg;
        msg << "problem document: parse error at line " << line_of(text, e.byte) << ": "
            << e.what();
        throw InputError(msg.str());
    }
    if (!doc.is_object()) {
        throw InputError("problem document: top level must be an object");
    }
    if (!doc.contains("n") || !doc.at("n").is_number_integer()) {
        throw InputError("problem document: missing or non-integer field 'n'");
    }
    ProblemDocument out;
    out.problem.n = doc.at("n").get<int>();
    out.problem.b_z = read_array(doc, "b_z");
    out.problem.b_x = read_array(doc, "b_x");
    out.problem.j_zz = read_array(doc, "j_zz");
    if (doc.contains("j_xx")) {
        out.problem.j_xx = read_array(doc, "j_xx");
    } else {
        out.problem.j_xx.assign(out.problem.j_zz.size(), 0.0);
    }
    require_valid(out.problem);

    if (doc.contains("schedule")) {
        const auto &s = doc.at("schedule");
        if (!s.is_object()) {
            throw InputError("problem document: field 'schedule' must be an object");
        }
        Schedule sched;
        try {
            if (s.contains("T")) {
                sched.total_time = s.at("T").get<double>();
            }
            if (s.contains("M")) {
                sched.steps = s.at("M").get<int>();
            }
            if (s.contains("b_x_init")) {
                sched.b_x_init = s.at("b_x_init").get<double>();
            }
            if (s.contains("sampling")) {
                sched.sampling = parse_sampling(s.at("sampling").get<std::string>());
            }
        } catch (const nlohmann::json::type_error &e) {
            throw InputError(std::string("problem document: field 'schedule': ") + e.what());
        }
        if (!(sched.total_time >= 0.0) || sched.steps < 1 || !std::isfinite(sched.b_x_init)) {
            throw InputError("problem document: field 'schedule' requires T >= 0 and M >= 1");
        }
        out.schedule = sched;
    }
    return out;
}

} // namespace daqsim
