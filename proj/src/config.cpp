#include "nussbaum_pid/config.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace nussbaum_pid {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string &what) { throw ConfigValidationError("config: " + what); }

void reject_unknown(const json &section, const std::string &name, std::initializer_list<std::string_view> allowed) {
    if (!section.is_object()) {
        invalid("'" + name + "' must be an object");
    }
    for (const auto &item : section.items()) {
        bool known = false;
        for (std::string_view key : allowed) {
            known = known || item.key() == key;
        }
        if (!known) {
            invalid("unknown key '" + name + "." + item.key() + "'");
        }
    }
}

void read_number(const json &section, const char *key, double &target, const std::string &where) {
    if (!section.contains(key)) return;
    const json &v = section.at(key);
    if (!v.is_number()) invalid("'" + where + "." + key + "' must be a number");
    target = v.get<double>();
}

void read_count(const json &section, const char *key, std::size_t &target, const std::string &where) {
    if (!section.contains(key)) return;
    const json &v = section.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        invalid("'" + where + "." + key + "' must be a non-negative integer");
    }
    target = v.get<std::size_t>();
}

void read_vec2(const json &section, const char *key, Vec2 &target, const std::string &where) {
    if (!section.contains(key)) return;
    const json &v = section.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        invalid("'" + where + "." + key + "' must be an array of two numbers");
    }
    target = {v[0].get<double>(), v[1].get<double>()};
}

std::vector<double> read_matrix(const json &v, std::size_t rows, const std::string &where) {
    if (!v.is_array() || v.size() != rows) invalid("'" + where + "' must have " + std::to_string(rows) + " rows");
    std::vector<double> out;
    out.reserve(rows * rows);
    for (const json &row : v) {
        if (!row.is_array() || row.size() != rows) {
            invalid("'" + where + "' must be square with " + std::to_string(rows) + " columns");
        }
        for (const json &x : row) {
            if (!x.is_number()) invalid("'" + where + "' entries must be numbers");
            out.push_back(x.get<double>());
        }
    }
    return out;
}

void apply_robot(const json &j, RobotParams &r) {
    reject_unknown(j, "robot", {"m1", "m2", "l1", "l2", "lc1", "lc2", "I1", "I2", "gravity", "kappa"});
    read_number(j, "m1", r.m1, "robot");
    read_number(j, "m2", r.m2, "robot");
    read_number(j, "l1", r.l1, "robot");
    read_number(j, "l2", r.l2, "robot");
    read_number(j, "lc1", r.lc1, "robot");
    read_number(j, "lc2", r.lc2, "robot");
    read_number(j, "I1", r.I1, "robot");
    read_number(j, "I2", r.I2, "robot");
    read_number(j, "gravity", r.gravity, "robot");
    if (j.contains("kappa")) {
        const auto k = read_matrix(j.at("kappa"), 2, "robot.kappa");
        r.kappa = {k[0], k[1], k[2], k[3]};
    }
}

void apply_controller(const json &j, SimConfig &cfg) {
    reject_unknown(j, "controller",
                   {"kind", "gamma", "k_delta", "alpha", "sigma", "adapt_gain", "zeta0", "network"});
    ControllerParams &c = cfg.controller;
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) invalid("'controller.kind' must be a string");
        try {
            cfg.controller_kind = parse_controller_kind(j.at("kind").get<std::string>());
        } catch (const std::invalid_argument &e) {
            invalid(e.what());
        }
    }
    read_number(j, "gamma", c.gamma, "controller");
    read_number(j, "k_delta", c.k_delta, "controller");
    read_number(j, "alpha", c.alpha, "controller");
    read_number(j, "sigma", c.sigma, "controller");
    read_number(j, "zeta0", c.zeta0, "controller");
    if (j.contains("network")) {
        const json &n = j.at("network");
        reject_unknown(n, "controller.network", {"nodes", "center_min", "center_max", "width"});
        read_count(n, "nodes", c.layout.nodes, "controller.network");
        read_number(n, "center_min", c.layout.center_min, "controller.network");
        read_number(n, "center_max", c.layout.center_max, "controller.network");
        read_number(n, "width", c.layout.width, "controller.network");
    }
    if (j.contains("adapt_gain")) {
        const json &g = j.at("adapt_gain");
        if (g.is_number()) {
            c.adapt_gain = g.get<double>();
            c.adapt_matrix.clear();
        } else {
            c.adapt_matrix = read_matrix(g, c.layout.nodes, "controller.adapt_gain");
        }
    }
}

void apply_sim(const json &j, SimConfig &cfg) {
    reject_unknown(j, "sim", {"dt", "duration", "q0", "dq0", "decimation", "hold"});
    read_number(j, "dt", cfg.dt, "sim");
    read_number(j, "duration", cfg.duration, "sim");
    read_vec2(j, "q0", cfg.q0, "sim");
    read_vec2(j, "dq0", cfg.dq0, "sim");
    read_count(j, "decimation", cfg.decimation, "sim");
    if (j.contains("hold")) {
        if (!j.at("hold").is_boolean()) invalid("'sim.hold' must be a boolean");
        cfg.hold = j.at("hold").get<bool>();
    }
}

}  // namespace

RunSpec parse_config_text(std::string_view text, const SimConfig &base) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        throw ConfigParseError(std::string("config: malformed JSON: ") + e.what());
    }
    RunSpec spec{base, std::nullopt};
    reject_unknown(doc, "<root>", {"robot", "controller", "sim", "output"});
    if (doc.contains("robot")) apply_robot(doc.at("robot"), spec.sim.robot);
    if (doc.contains("controller")) apply_controller(doc.at("controller"), spec.sim);
    if (doc.contains("sim")) apply_sim(doc.at("sim"), spec.sim);
    if (doc.contains("output")) {
        const json &o = doc.at("output");
        reject_unknown(o, "output", {"csv_path"});
        if (o.contains("csv_path")) {
            if (!o.at("csv_path").is_string()) invalid("'output.csv_path' must be a string");
            spec.csv_path = o.at("csv_path").get<std::string>();
        }
    }
    try {
        validate(spec.sim);
    } catch (const std::invalid_argument &e) {
        invalid(e.what());
    }
    return spec;
}

RunSpec parse_config_file(const std::filesystem::path &path, const SimConfig &base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), base);
}

std::string to_config_text(const RunSpec &spec) {
    const SimConfig &s = spec.sim;
    const RobotParams &r = s.robot;
    const ControllerParams &c = s.controller;
    json doc;
    doc["robot"] = {{"m1", r.m1}, {"m2", r.m2}, {"l1", r.l1}, {"l2", r.l2}, {"lc1", r.lc1}, {"lc2", r.lc2},
                    {"I1", r.I1}, {"I2", r.I2}, {"gravity", r.gravity},
                    {"kappa", {{r.kappa(0, 0), r.kappa(0, 1)}, {r.kappa(1, 0), r.kappa(1, 1)}}}};
    json controller = {{"kind", std::string(to_string(s.controller_kind))},
                       {"gamma", c.gamma},
                       {"k_delta", c.k_delta},
                       {"alpha", c.alpha},
                       {"sigma", c.sigma},
                       {"zeta0", c.zeta0},
                       {"network",
                        {{"nodes", c.layout.nodes},
                         {"center_min", c.layout.center_min},
                         {"center_max", c.layout.center_max},
                         {"width", c.layout.width}}}};
    if (c.adapt_matrix.empty()) {
        controller["adapt_gain"] = c.adapt_gain;
    } else {
        json rows = json::array();
        for (std::size_t i = 0; i < c.layout.nodes; ++i) {
            rows.push_back(std::vector<double>(c.adapt_matrix.begin() + static_cast<std::ptrdiff_t>(i * c.layout.nodes),
                                               c.adapt_matrix.begin() + static_cast<std::ptrdiff_t>((i + 1) * c.layout.nodes)));
        }
        controller["adapt_gain"] = rows;
    }
    doc["controller"] = controller;
    doc["sim"] = {{"dt", s.dt},
                  {"duration", s.duration},
                  {"q0", {s.q0[0], s.q0[1]}},
                  {"dq0", {s.dq0[0], s.dq0[1]}},
                  {"decimation", s.decimation},
                  {"hold", s.hold}};
    if (spec.csv_path) {
        doc["output"] = {{"csv_path", *spec.csv_path}};
    }
    return doc.dump(2);
}

}  // namespace nussbaum_pid
