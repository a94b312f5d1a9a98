#include "nussbaum_pid/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <stdexcept>

using namespace nussbaum_pid;

TEST_CASE("empty document keeps the base configuration") {
    const SimConfig base = make_preset(Preset::flip);
    const RunSpec spec = parse_config_text("{}", base);
    CHECK(spec.sim.robot.kappa == base.robot.kappa);
    CHECK(spec.sim.dt == base.dt);
    CHECK(spec.sim.controller.k_delta == base.controller.k_delta);
    CHECK_FALSE(spec.csv_path.has_value());
}

TEST_CASE("overrides") {
    const RunSpec spec = parse_config_text(R"({
        "robot": {"m1": 4.0, "kappa": [[0.5, 0.0], [0.0, -2.0]]},
        "controller": {"kind": "fixed-pid", "k_delta": 0.3, "network": {"nodes": 10, "width": 2.0}},
        "sim": {"dt": 0.0005, "duration": 3, "q0": [0.1, 0.2], "decimation": 4, "hold": true},
        "output": {"csv_path": "out.csv"}
    })");
    CHECK(spec.sim.robot.m1 == 4.0);
    CHECK(spec.sim.robot.kappa == Mat2::diagonal(0.5, -2.0));
    CHECK(spec.sim.controller_kind == ControllerKind::fixed_pid);
    CHECK(spec.sim.controller.k_delta == 0.3);
    CHECK(spec.sim.controller.layout.nodes == 10);
    CHECK(spec.sim.controller.layout.width == 2.0);
    CHECK(spec.sim.dt == 0.0005);
    CHECK(spec.sim.duration == 3.0);
    CHECK(spec.sim.q0 == Vec2{0.1, 0.2});
    CHECK(spec.sim.decimation == 4);
    CHECK(spec.sim.hold);
    CHECK(spec.csv_path == "out.csv");
}

TEST_CASE("adaptation gain as a matrix") {
    std::string rows;
    for (int i = 0; i < 3; ++i) {
        rows += i ? "," : "";
        rows += "[";
        for (int j = 0; j < 3; ++j) rows += std::string(j ? "," : "") + (i == j ? "2.0" : "0.0");
        rows += "]";
    }
    const RunSpec spec =
        parse_config_text(R"({"controller": {"adapt_gain": [)" + rows + R"(], "network": {"nodes": 3}}})");
    CHECK(spec.sim.controller.adapt_matrix == std::vector<double>{2, 0, 0, 0, 2, 0, 0, 0, 2});
    CHECK_THROWS_AS(parse_config_text(R"({"controller": {"adapt_gain": [[1, 0], [0, 1]]}})"), ConfigValidationError);
    CHECK_THROWS_AS(
        parse_config_text(R"({"controller": {"adapt_gain": [[1, 2], [2, 1]], "network": {"nodes": 2}}})"),
        ConfigValidationError);
}

TEST_CASE("rejections") {
    CHECK_THROWS_AS(parse_config_text(R"({"sim": {"dt": -0.001}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"robot": {"m1": 0}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"robot": {"kappa": [[1, 1], [1, 1]]}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"robot": {"mass": 1}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"extra": {}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"sim": {"dt": "fast"}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"sim": {"q0": [1]}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"controller": {"kind": "pd"}})"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"([1, 2])"), ConfigValidationError);
    CHECK_THROWS_AS(parse_config_text(R"({"sim": {"dt": )"), ConfigParseError);
    CHECK_THROWS_AS(parse_config_text("not json"), ConfigParseError);
}

TEST_CASE("serialization round trip") {
    RunSpec spec;
    spec.sim = make_preset(Preset::skew);
    spec.sim.controller.gamma = 0.7;
    spec.sim.controller.zeta0 = 0.1;
    spec.sim.dq0 = {0.3, -0.4};
    spec.csv_path = "a.csv";
    const RunSpec back = parse_config_text(to_config_text(spec));
    CHECK(back.sim.robot.kappa == spec.sim.robot.kappa);
    CHECK(back.sim.controller.gamma == 0.7);
    CHECK(back.sim.controller.zeta0 == 0.1);
    CHECK(back.sim.dq0 == spec.sim.dq0);
    CHECK(back.sim.dt == spec.sim.dt);
    CHECK(back.csv_path == spec.csv_path);
    CHECK(to_config_text(back) == to_config_text(spec));
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(parse_config_file("/nonexistent/config.json"), IoError);
}
