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
#include "daqsim/problem.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <string>

using namespace daqsim;

TEST_CASE("uniform chain shape") {
    const SpinProblem p = SpinProblem::uniform_chain(4, 2.0);
    CHECK(p.n == 4);
    CHECK(p.b_z == std::vector<double>(4, 0.0));
    CHECK(p.j_zz == std::vector<double>(3, 2.0));
    CHECK(p.is_stoquastic());
    CHECK(validate_problem(p).empty());
}

TEST_CASE("validation reports every violation") {
    SpinProblem p = SpinProblem::uniform_chain(4, 1.0);
    p.j_zz.pop_back();
    auto v = validate_problem(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("bond array length") != std::string::npos);
    CHECK_THROWS_AS(require_valid(p), InputError);

    SpinProblem single;
    single.n = 1;
    single.b_z = {0.0};
    single.b_x = {0.0};
    v = validate_problem(single);
    REQUIRE_FALSE(v.empty());
    CHECK(v[0] == "site count below 2");

    SpinProblem big = SpinProblem::uniform_chain(13, 1.0);
    CHECK_FALSE(validate_problem(big).empty());

    SpinProblem nan = SpinProblem::uniform_chain(3, 1.0);
    nan.b_x[1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(validate_problem(nan).empty());
}

TEST_CASE("stoquasticity follows j_xx") {
    SpinProblem p = SpinProblem::uniform_chain(3, 1.0);
    CHECK(p.kind() == ProblemKind::stoquastic);
    p.j_xx[1] = 0.3;
    CHECK(p.kind() == ProblemKind::non_stoquastic);
    CHECK(parse_problem_kind(to_string(p.kind())) == ProblemKind::non_stoquastic);
}

TEST_CASE("schedule sampling points") {
    Schedule s{3.0, 5, 2.0, Sampling::endpoint};
    CHECK(s.dt() == doctest::Approx(0.6));
    CHECK(s.step_weight(1) == doctest::Approx(0.2));
    CHECK(s.step_weight(5) == doctest::Approx(1.0));
    s.sampling = Sampling::midpoint;
    CHECK(s.step_weight(1) == doctest::Approx(0.1));
    s.sampling = Sampling::integral;
    for (int m = 1; m <= 5; ++m) {
        CHECK(s.step_weight(m) == doctest::Approx((m - 0.5) / 5.0).epsilon(1e-14));
    }
    CHECK(parse_sampling("integral-average") == Sampling::integral);
    CHECK_THROWS_AS(parse_sampling("trapezoid"), InputError);
}

TEST_CASE("random generator ranges and determinism") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const SpinProblem p = generate_random_problem(6, ProblemKind::non_stoquastic, seed);
        CHECK(validate_problem(p).empty());
        for (double v : p.b_z) {
            CHECK(std::abs(v) <= 2.0);
        }
        for (double v : p.b_x) {
            CHECK(std::abs(v) <= 2.0);
        }
        for (const auto *bonds : {&p.j_zz, &p.j_xx}) {
            for (double v : *bonds) {
                CHECK(std::abs(v) >= 0.5);
                CHECK(std::abs(v) <= 2.0);
            }
        }
        CHECK(generate_random_problem(6, ProblemKind::non_stoquastic, seed) == p);
    }
    const SpinProblem s = generate_random_problem(5, ProblemKind::stoquastic, 7);
    CHECK(s.is_stoquastic());
    CHECK_THROWS_AS(generate_random_problem(1, ProblemKind::stoquastic, 0), InputError);
}

TEST_CASE("stoquastic and non-stoquastic share the field and zz draws") {
    const SpinProblem a = generate_random_problem(6, ProblemKind::stoquastic, 99);
    const SpinProblem b = generate_random_problem(6, ProblemKind::non_stoquastic, 99);
    CHECK(a.b_z == b.b_z);
    CHECK(a.b_x == b.b_x);
    CHECK(a.j_zz == b.j_zz);
}

TEST_CASE("both coupling signs occur") {
    int negative = 0;
    int total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        for (double j : generate_random_problem(4, ProblemKind::stoquastic, seed).j_zz) {
            negative += j < 0 ? 1 : 0;
            ++total;
        }
    }
    const double frac = static_cast<double>(negative) / total;
    CHECK(frac > 0.4);
    CHECK(frac < 0.6);
}

TEST_CASE("instance sets") {
    auto set = ProblemInstanceSet::generate(5, ProblemKind::stoquastic, 1000, 20);
    REQUIRE(set.instances.size() == 20);
    CHECK(set.instances.front().seed == 1000);
    CHECK(set.instances.back().seed == 1019);
    CHECK(set.verify());
    CHECK(set.generator_version == kGeneratorVersion);
    set.instances[3].problem.b_z[0] += 1e-15;
    CHECK_FALSE(set.verify());
    auto dup = ProblemInstanceSet::generate(5, ProblemKind::stoquastic, 1000, 2);
    dup.instances[1] = dup.instances[0];
    CHECK_FALSE(dup.verify());
}

TEST_CASE("built-in instances carry the tabulated values") {
    CHECK(builtin_names().size() == 6);
    const SpinProblem s3 = builtin_instance("s3-9q-stoq");
    CHECK(s3.n == 9);
    CHECK(s3.b_x[0] == 1.437);
    CHECK(s3.b_z[2] == -1.822);
    CHECK(s3.j_zz[7] == 0.639);
    const SpinProblem s5 = builtin_instance("s5-3q-nonstoq");
    CHECK(s5.j_xx == std::vector<double>{-0.841, 1.02});
    CHECK(s5.j_zz == std::vector<double>{-0.757, 1.32});
    const SpinProblem s8 = builtin_instance("s8-7q-nonstoq");
    CHECK(s8.j_xx[5] == -0.839);
    CHECK(builtin_schedule("s8-7q-nonstoq").total_time == 1.0);
    CHECK(builtin_schedule("s8-7q-nonstoq").steps == 2);
    CHECK(builtin_schedule("s4-3q-stoq").steps == 5);
    for (auto name : builtin_names()) {
        CHECK(validate_problem(builtin_instance(name)).empty());
    }
}

TEST_CASE("unknown fixture lists valid names") {
    try {
        builtin_instance("s9-bogus");
        FAIL("expected InputError");
    } catch (const InputError &e) {
        const std::string msg = e.what();
        CHECK(msg.find("s4-3q-stoq") != std::string::npos);
        CHECK(msg.find("s3-9q-stoq") != std::string::npos);
    }
}

TEST_CASE("problem documents round-trip exactly") {
    const SpinProblem p = generate_random_problem(7, ProblemKind::non_stoquastic, 3);
    const Schedule s{1.25, 7, 1.5, Sampling::endpoint};
    const ProblemDocument doc = load_problem(save_problem(p, s));
    CHECK(doc.problem == p);
    REQUIRE(doc.schedule.has_value());
    CHECK(*doc.schedule == s);
    CHECK_FALSE(load_problem(save_problem(p)).schedule.has_value());
}

TEST_CASE("problem document diagnostics") {
    SUBCASE("missing field") {
        try {
            load_problem(R"({"n": 2, "b_z": [0, 0], "b_x": [0, 0]})");
            FAIL("expected InputError");
        } catch (const InputError &e) {
            CHECK(std::string(e.what()).find("missing field 'j_zz'") != std::string::npos);
        }
    }
    SUBCASE("syntax error names the line") {
        try {
            load_problem("{\n\"n\": 2,\n\"b_z\": [0, 0,,]\n}");
            FAIL("expected InputError");
        } catch (const InputError &e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("j_xx defaults to zero") {
        const auto doc = load_problem(R"({"n": 2, "b_z": [0, 0], "b_x": [0, 0], "j_zz": [1]})");
        CHECK(doc.problem.j_xx == std::vector<double>{0.0});
    }
    SUBCASE("length mismatch is rejected") {
        CHECK_THROWS_AS(load_problem(R"({"n": 3, "b_z": [0, 0], "b_x": [0, 0, 0], "j_zz": [1, 1]})"),
                        InputError);
    }
    SUBCASE("bad schedule") {
        CHECK_THROWS_AS(
            load_problem(R"({"n": 2, "b_z": [0, 0], "b_x": [0, 0], "j_zz": [1], "schedule": {"M": 0}})"),
            InputError);
    }
}
